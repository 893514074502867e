#pragma once

// p-monomials, lambda-coordinates and K^p-linear algebra.
//
// Everything is reduced to K-linear algebra on "root coordinates": for the
// ambient p-basis x1..xn every b in K is uniquely  b = sum_e c_e(b)^p x^e
// (e in {0..p-1}^n), and c(s^p b) = s c(b).  So K^p-subspaces of K become
// K-subspaces of K^(p^n).

#include "exotic/field.hpp"

#include <optional>
#include <vector>

namespace exotic {

using Vec = std::vector<RatFunc>;

// prod a_j^{e_j}, e = base-p digits of idx (least significant = a_1).
RatFunc p_monomial(std::size_t idx, const std::vector<RatFunc> &a, int p);
// Checked variant: idx must be < p^n and |a| == n.
RatFunc p_monomial(std::size_t idx, std::size_t n, const std::vector<RatFunc> &a, int p);

// Root coordinates w.r.t. the ambient variables; length p^n.
Vec var_coords(const RatFunc &b);
RatFunc from_var_coords(const FunctionField &f, const Vec &c);

// Incremental row echelon form over K with bookkeeping of how each row is
// built from the independent vectors inserted so far.
class Echelon {
  public:
    explicit Echelon(std::size_t dim) : dim_(dim) {}

    // Residual of v modulo the span (canonical coset representative).  If
    // coeffs is given it receives c with  v = residual + sum c_k * orig_k.
    Vec reduce(Vec v, Vec *coeffs = nullptr) const;
    // Adds v; false (and no change) when v is already in the span.
    bool insert(const Vec &v);

    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<std::size_t> &pivots() const { return pivots_; }

  private:
    std::size_t dim_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<Vec> combos_;
};

bool is_zero_vec(const Vec &v);

// Null space of the K-linear map whose j-th column is cols[j].
std::vector<Vec> kernel(const std::vector<Vec> &cols, std::size_t rows);

// A K^p-subspace of K, kept with an explicit K^p-basis.
class KpSpace {
  public:
    explicit KpSpace(FunctionField f);

    static KpSpace span(const FunctionField &f, const std::vector<RatFunc> &elems);
    // The field K^p[gens].
    static KpSpace field(const FunctionField &f, const std::vector<RatFunc> &gens);

    bool add(const RatFunc &x);
    // Treating the space as a field F, replace it by F[g]; false if g in F.
    bool adjoin(const RatFunc &g);
    bool contains(const RatFunc &x) const;
    // lambda with x = sum lambda_j^p basis_j, when x lies in the space.
    std::optional<Vec> coords(const RatFunc &x) const;

    const std::vector<RatFunc> &basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    const FunctionField &field_ctx() const { return f_; }
    // Canonical residual of x in root coordinates.
    Vec residual(const RatFunc &x) const { return ech_.reduce(var_coords(x)); }

  private:
    FunctionField f_;
    Echelon ech_;
    std::vector<RatFunc> basis_;
};

struct LambdaCoords {
    Vec coords;
    bool defined = false;
};

// b = sum coords[i]^p m_i(a) when a is p-independent and b in K^p[a];
// otherwise undefined with all coordinates 0.
LambdaCoords lambda(const FunctionField &f, const std::vector<RatFunc> &a, const RatFunc &b);

// [K^p[E u C] : K^p[E]] == p^|C|.
bool is_p_independent(const FunctionField &f, const std::vector<RatFunc> &c,
                      const std::vector<RatFunc> &over = {});

std::size_t ipow(std::size_t b, std::size_t e);

} // namespace exotic

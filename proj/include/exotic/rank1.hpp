#pragma once

// SL_2(L) for an additive group K^2 <= L <= K: generators, the Bruhat normal
// form, torus membership with witnesses and the codimension-one factorization.

#include "exotic/tower.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace exotic {

struct Mat2 {
    RatFunc a, b, c, d;

    // Checks ad - bc = 1.
    static Mat2 make(RatFunc a, RatFunc b, RatFunc c, RatFunc d);
    static Mat2 identity(const FunctionField &K);

    Mat2 operator*(const Mat2 &o) const;
    Mat2 inverse() const;
    bool operator==(const Mat2 &o) const = default;
};

enum class Gen2 { a, b, h, w };

// a(t) = [[1,t],[0,1]], b(t) = [[1,0],[t,1]], h(t) = diag(t, 1/t),
// w = [[0,1],[-1,0]] (t ignored).
Mat2 gen2(const FunctionField &K, Gen2 kind, const RatFunc &t);
// f(a(t)) = b(-1/t).
Mat2 f_of_a(const FunctionField &K, const RatFunc &t);
Mat2 commutator(const Mat2 &x, const Mat2 &y); // x^-1 y^-1 x y

// h(tau) a(s1)            when !cell (s2 unused, zero)
// h(tau) a(s1) w a(s2)    when cell
struct Bruhat2 {
    bool cell = false;
    RatFunc tau, s1, s2;
    bool operator==(const Bruhat2 &o) const = default;
};

Bruhat2 bruhat2(const Mat2 &g);
Mat2 assemble(const FunctionField &K, const Bruhat2 &e);
std::string render(const FunctionField &K, const Bruhat2 &e);

// The structure (L, T, ., sigma) through which Bruhat coordinates are
// multiplied.  Torus elements are handled by their diagonal entry tau; the
// action of tau on L is multiplication by tau^2.
class Rank1Structure {
  public:
    virtual ~Rank1Structure() = default;
    virtual RatFunc l_add(const RatFunc &x, const RatFunc &y) const = 0;
    virtual RatFunc l_neg(const RatFunc &x) const = 0;
    virtual bool l_is_zero(const RatFunc &x) const = 0;
    virtual RatFunc l_zero() const = 0;
    virtual RatFunc t_mul(const RatFunc &x, const RatFunc &y) const = 0;
    virtual RatFunc t_inv(const RatFunc &x) const = 0;
    virtual RatFunc t_neg_one() const = 0;
    // tau -> tau^2, into the image group acting on L
    virtual RatFunc t_square(const RatFunc &x) const = 0;
    // tbar . s for tbar a square
    virtual RatFunc act(const RatFunc &tbar, const RatFunc &s) const = 0;
    // s in L* viewed as the torus element h(s)
    virtual RatFunc l_to_t(const RatFunc &s) const = 0;
    RatFunc sigma(const RatFunc &s) const { return t_square(l_to_t(s)); }
};

// Concrete realization inside K; optionally checks that L-coordinates stay in L.
class FieldRank1Structure : public Rank1Structure {
  public:
    FieldRank1Structure(FunctionField K, const RSpace *L = nullptr) : K_(std::move(K)), L_(L) {}
    RatFunc l_add(const RatFunc &x, const RatFunc &y) const override { return checked(x + y); }
    RatFunc l_neg(const RatFunc &x) const override { return -x; }
    bool l_is_zero(const RatFunc &x) const override { return x.is_zero(); }
    RatFunc l_zero() const override { return K_.zero(); }
    RatFunc t_mul(const RatFunc &x, const RatFunc &y) const override { return x * y; }
    RatFunc t_inv(const RatFunc &x) const override { return x.inverse(); }
    RatFunc t_neg_one() const override { return K_.constant(-1); }
    RatFunc t_square(const RatFunc &x) const override { return x * x; }
    RatFunc act(const RatFunc &tbar, const RatFunc &s) const override { return checked(tbar * s); }
    RatFunc l_to_t(const RatFunc &s) const override { return s; }

    const FunctionField &field() const { return K_; }
    const RSpace *L() const { return L_; }
    mutable std::size_t escapes = 0; // L-coordinates that left L

  private:
    RatFunc checked(RatFunc x) const {
        if (L_ && !L_->contains(x)) ++escapes;
        return x;
    }
    FunctionField K_;
    const RSpace *L_;
};

// Product of two normal forms using only the structure operations.
Bruhat2 mult_bruhat(const Bruhat2 &x, const Bruhat2 &y, const Rank1Structure &S);

struct Codim1 {
    std::vector<RatFunc> field_gens; // K1 = K^2[field_gens]
    RatFunc u;                       // L = K1 + K^2 u
};

// L (a K^2-space containing 1) with optional codimension-one data.
class TimmesfeldData {
  public:
    TimmesfeldData(RSpace L, std::optional<Codim1> codim1 = std::nullopt);

    const RSpace &L() const { return L_; }
    const std::optional<Codim1> &codim1() const { return codim1_; }
    // K_L: the field generated by L.
    const KpSpace &field() const { return KL_; }
    bool L_is_field() const { return L_.space().dim() == KL_.dim(); }
    const FunctionField &ambient() const { return L_.ambient(); }

  private:
    RSpace L_;
    std::optional<Codim1> codim1_;
    KpSpace KL_;
};

struct TorusWitness {
    std::vector<std::pair<RatFunc, int>> factors; // each factor in L*, exponent +-1
    RatFunc product(const FunctionField &K) const;
};

enum class Verdict { yes, no, unknown };
const char *to_string(Verdict v);

struct TorusResult {
    Verdict verdict = Verdict::unknown;
    std::optional<TorusWitness> witness;
};

TorusResult torus_membership(const RatFunc &tau, const TimmesfeldData &data, unsigned bound);
TorusResult membership_sl2L(const Mat2 &g, const TimmesfeldData &data, unsigned bound);

// x = l1 * l2 with l1, l2 in L*.
std::pair<RatFunc, RatFunc> factor_codim1(const RatFunc &x, const TimmesfeldData &data);

// s' with [h(t), a(s')] = a(s); throws when t^2 = 1.
RatFunc perfectness_witness(const FunctionField &K, const RatFunc &s, const RatFunc &t);

// Structure read off from T * SL_2(L) with T given by diagonal generators.
struct ExtractedRank1 {
    std::vector<RatFunc> tbar_gens; // squares t^2 of the torus generators
    FieldRank1Structure structure;
};
ExtractedRank1 extract_structure(const TimmesfeldData &data, const std::vector<RatFunc> &torus_gens);

} // namespace exotic

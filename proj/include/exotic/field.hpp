#pragma once

// Exact arithmetic in K = F_p(x1,...,xn), p in {2,3,5}, n <= 3.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace exotic {

class FieldError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
  public:
    ParseError(std::string msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

  private:
    std::size_t pos_;
};

inline constexpr int kMaxVars = 3;

// Exponent vector packed into 16-bit lanes; lane 0 is x1, lane 3 holds the
// total degree so that graded-lex comparison is integer comparison.
using Monomial = std::uint64_t;

inline constexpr int kLaneBits = 16;
inline constexpr Monomial kLaneMask = (Monomial{1} << kLaneBits) - 1;
inline constexpr std::uint32_t kMaxExponent = 0x7fff;

inline std::uint32_t exponent(Monomial m, int var) {
    return static_cast<std::uint32_t>((m >> (kLaneBits * var)) & kLaneMask);
}
inline std::uint32_t total_degree(Monomial m) { return exponent(m, 3); }
inline Monomial with_exponent(Monomial m, int var, std::uint32_t e) {
    const std::uint32_t old = exponent(m, var);
    const std::uint32_t deg = total_degree(m) - old + e;
    m &= ~(kLaneMask << (kLaneBits * var));
    m |= Monomial{e} << (kLaneBits * var);
    m &= ~(kLaneMask << (kLaneBits * 3));
    return m | (Monomial{deg} << (kLaneBits * 3));
}
inline bool divides(Monomial a, Monomial b) {
    for (int v = 0; v < kMaxVars; ++v)
        if (exponent(a, v) > exponent(b, v)) return false;
    return true;
}

// Graded-lex, x1 < x2 < x3.
inline bool mono_greater(Monomial a, Monomial b) { return a > b; }

struct Term {
    Monomial mono;
    std::uint32_t coeff;
    bool operator==(const Term &) const = default;
};

// Sparse polynomial over F_p. Terms are kept in descending graded-lex order
// without zero coefficients.
class Poly {
  public:
    Poly() = default;
    Poly(int p, int nvars) : p_(static_cast<std::uint8_t>(p)), n_(static_cast<std::uint8_t>(nvars)) {}

    static Poly constant(int p, int nvars, std::int64_t c);
    static Poly variable(int p, int nvars, int var);
    static Poly monomial(int p, int nvars, Monomial m, std::uint32_t c = 1);

    int p() const { return p_; }
    int nvars() const { return n_; }
    const std::vector<Term> &terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].mono == 0 && terms_[0].coeff == 1; }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == 0); }
    std::uint32_t leading_coeff() const { return terms_.empty() ? 0 : terms_.front().coeff; }
    Monomial leading_mono() const { return terms_.empty() ? 0 : terms_.front().mono; }
    std::uint32_t degree_in(int var) const;

    Poly operator-() const;
    Poly &operator+=(const Poly &o);
    Poly &operator-=(const Poly &o);
    Poly operator+(const Poly &o) const { Poly r = *this; r += o; return r; }
    Poly operator-(const Poly &o) const { Poly r = *this; r -= o; return r; }
    Poly operator*(const Poly &o) const;
    Poly scaled(std::uint32_t c) const;
    Poly times_monomial(Monomial m, std::uint32_t c) const;
    Poly pow(unsigned e) const;
    Poly frobenius() const;
    // Leading coefficient 1; zero stays zero.
    Poly monic() const;

    bool operator==(const Poly &o) const { return p_ == o.p_ && n_ == o.n_ && terms_ == o.terms_; }

    // Builds from unsorted terms, merging duplicates.
    static Poly from_terms(int p, int nvars, std::vector<Term> terms);

  private:
    void check_compat(const Poly &o) const;

    std::uint8_t p_ = 2;
    std::uint8_t n_ = 1;
    std::vector<Term> terms_;
};

std::uint32_t inv_mod(std::uint32_t a, int p);

// Exact quotient; throws FieldError when b does not divide a.
Poly divide_exact(const Poly &a, const Poly &b);
std::optional<Poly> try_divide(const Poly &a, const Poly &b);
// Monic gcd (gcd(0,0) = 0).
Poly gcd(const Poly &a, const Poly &b);

// Element of F_p(x1..xn) in reduced form: gcd(num, den) = 1, den monic.
class RatFunc {
  public:
    RatFunc() = default;
    explicit RatFunc(Poly num);
    RatFunc(Poly num, Poly den);

    const Poly &num() const { return num_; }
    const Poly &den() const { return den_; }
    int p() const { return num_.p(); }
    int nvars() const { return num_.nvars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc &o) const;
    RatFunc operator-(const RatFunc &o) const;
    RatFunc operator*(const RatFunc &o) const;
    RatFunc operator/(const RatFunc &o) const;
    RatFunc &operator+=(const RatFunc &o) { return *this = *this + o; }
    RatFunc &operator-=(const RatFunc &o) { return *this = *this - o; }
    RatFunc &operator*=(const RatFunc &o) { return *this = *this * o; }
    RatFunc &operator/=(const RatFunc &o) { return *this = *this / o; }

    RatFunc inverse() const;
    RatFunc pow(long e) const;
    RatFunc frobenius() const;
    // r with r^p == *this, or nothing when *this is not in K^p.
    std::optional<RatFunc> pth_root() const;

    bool operator==(const RatFunc &o) const { return num_ == o.num_ && den_ == o.den_; }

    // Total order used only for containers and deterministic output.
    bool less(const RatFunc &o) const;

  private:
    Poly num_;
    Poly den_;
};

// The ambient field F_p(x1..xn) together with variable names. Cheap to copy.
class FunctionField {
  public:
    FunctionField(int p, std::vector<std::string> var_names);
    FunctionField(int p, int nvars);

    int p() const { return p_; }
    int nvars() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string> &var_names() const { return names_; }

    RatFunc zero() const;
    RatFunc one() const;
    RatFunc constant(std::int64_t c) const;
    RatFunc var(int i) const;
    RatFunc var(std::string_view name) const;
    std::vector<RatFunc> vars() const;

    RatFunc parse(std::string_view text) const;
    std::vector<RatFunc> parse_list(std::string_view text, char sep = ',') const;
    std::string render(const RatFunc &x) const;
    std::string render(const Poly &x) const;

    // [K : K^p] = p^n.
    std::size_t degree_over_frobenius() const;

    bool operator==(const FunctionField &o) const { return p_ == o.p_ && names_ == o.names_; }

  private:
    int p_;
    std::vector<std::string> names_;
};

enum class ArithOp { add, sub, mul, div };
RatFunc field_arith(const RatFunc &a, const RatFunc &b, ArithOp op);

} // namespace exotic

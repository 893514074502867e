#include "exotic/field.hpp"

#include "extfield.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace exotic {

namespace {

bool is_supported_prime(int p) { return p == 2 || p == 3 || p == 5; }

std::uint32_t reduce_mod(std::int64_t c, int p) {
    std::int64_t r = c % p;
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

void check_degree(std::uint64_t deg) {
    if (deg > kMaxExponent) throw FieldError("polynomial degree overflow");
}

// Coefficients of a polynomial viewed in F_p[others][x_var]; index = degree.
std::vector<Poly> coeffs_in(const Poly &a, int var) {
    std::vector<std::vector<Term>> buckets(a.degree_in(var) + 1);
    for (const auto &t : a.terms())
        buckets[exponent(t.mono, var)].push_back({with_exponent(t.mono, var, 0), t.coeff});
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto &b : buckets) out.push_back(Poly::from_terms(a.p(), a.nvars(), std::move(b)));
    return out;
}

Poly leading_coeff_in(const Poly &a, int var) {
    auto d = a.degree_in(var);
    std::vector<Term> ts;
    for (const auto &t : a.terms())
        if (exponent(t.mono, var) == d) ts.push_back({with_exponent(t.mono, var, 0), t.coeff});
    return Poly::from_terms(a.p(), a.nvars(), std::move(ts));
}

Poly content_in(const Poly &a, int var) {
    Poly g(a.p(), a.nvars());
    for (const auto &c : coeffs_in(a, var)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

Poly primitive_part_in(const Poly &a, int var) {
    if (a.is_zero()) return a;
    return divide_exact(a, content_in(a, var));
}

Poly pseudo_remainder(Poly r, const Poly &b, int var) {
    const auto d = b.degree_in(var);
    const Poly lb = leading_coeff_in(b, var);
    while (!r.is_zero() && r.degree_in(var) >= d) {
        const auto k = r.degree_in(var) - d;
        Poly lr = leading_coeff_in(r, var);
        Poly shifted = (lr * b).times_monomial(with_exponent(0, var, k), 1);
        r = lb * r - shifted;
    }
    return r;
}

int main_variable(const Poly &a, const Poly &b) {
    for (int v = a.nvars() - 1; v >= 0; --v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
    return -1;
}

Poly monomial_gcd(Monomial m, const Poly &b) {
    Monomial g = m;
    for (const auto &t : b.terms())
        for (int v = 0; v < kMaxVars; ++v)
            if (exponent(t.mono, v) < exponent(g, v)) g = with_exponent(g, v, exponent(t.mono, v));
    return Poly::monomial(b.p(), b.nvars(), g, 1);
}


// ---- evaluation filter for gcd
//
// Images in F_q[x_v] (q = p^k) at random points for the other variables.  If
// the leading coefficient survives, deg gcd(images) bounds deg_v gcd(a, b).

using detail::ExtField;
using detail::ext_field;
using detail::UPoly;

std::size_t upoly_gcd_degree(UPoly a, UPoly b, const ExtField &F) {
    const UPoly g = detail::ugcd(std::move(a), std::move(b), F);
    return g.empty() ? 0 : g.size() - 1;
}

UPoly image_in(const Poly &a, int var, const std::vector<std::uint32_t> &point_log, const ExtField &F) {
    UPoly out(a.degree_in(var) + 1, 0);
    for (const auto &t : a.terms()) {
        std::uint64_t l = F.log_[t.coeff];
        for (int j = 0; j < a.nvars(); ++j)
            if (j != var) l += static_cast<std::uint64_t>(exponent(t.mono, j)) * point_log[j];
        const auto d = exponent(t.mono, var);
        out[d] = F.add(out[d], F.exp_[l % (F.q - 1)]);
    }
    return out;
}

std::mt19937_64 &filter_rng() {
    static std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    return rng;
}

// True when gcd(a, b) certainly does not involve x_var.
bool gcd_free_of(const Poly &a, const Poly &b, int var) {
    const auto da = a.degree_in(var), db = b.degree_in(var);
    if (da == 0 || db == 0) return true;
    const ExtField &F = ext_field(a.p());
    std::uniform_int_distribution<std::uint32_t> dist(0, F.q - 2);
    for (int attempt = 0; attempt < 3; ++attempt) {
        std::vector<std::uint32_t> pt(a.nvars());
        for (auto &x : pt) x = dist(filter_rng());
        UPoly ia = image_in(a, var, pt, F), ib = image_in(b, var, pt, F);
        if (ia.back() == 0 || ib.back() == 0) continue;
        return upoly_gcd_degree(std::move(ia), std::move(ib), F) == 0;
    }
    return false;
}
} // namespace

std::uint32_t inv_mod(std::uint32_t a, int p) {
    a %= static_cast<std::uint32_t>(p);
    if (a == 0) throw FieldError("division by zero in F_p");
    for (std::uint32_t x = 1; x < static_cast<std::uint32_t>(p); ++x)
        if ((a * x) % p == 1) return x;
    throw FieldError("no inverse mod p");
}

// ---------------------------------------------------------------- Poly

Poly Poly::constant(int p, int nvars, std::int64_t c) {
    Poly r(p, nvars);
    auto v = reduce_mod(c, p);
    if (v != 0) r.terms_.push_back({0, v});
    return r;
}

Poly Poly::variable(int p, int nvars, int var) {
    if (var < 0 || var >= nvars) throw FieldError("variable index out of range");
    return monomial(p, nvars, with_exponent(0, var, 1), 1);
}

Poly Poly::monomial(int p, int nvars, Monomial m, std::uint32_t c) {
    Poly r(p, nvars);
    c %= static_cast<std::uint32_t>(p);
    if (c != 0) r.terms_.push_back({m, c});
    return r;
}

Poly Poly::from_terms(int p, int nvars, std::vector<Term> terms) {
    Poly r(p, nvars);
    if (terms.empty()) return r;
    auto desc = [](const Term &a, const Term &b) { return a.mono > b.mono; };
    bool sorted = true;
    for (std::size_t i = 1; i < terms.size() && sorted; ++i) sorted = terms[i - 1].mono > terms[i].mono;
    if (sorted) {
        for (auto &t : terms) t.coeff %= static_cast<std::uint32_t>(p);
        std::erase_if(terms, [](const Term &t) { return t.coeff == 0; });
        r.terms_ = std::move(terms);
        return r;
    }
    std::sort(terms.begin(), terms.end(), desc);
    r.terms_.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
        std::uint32_t c = 0;
        std::size_t j = i;
        for (; j < terms.size() && terms[j].mono == terms[i].mono; ++j) c += terms[j].coeff;
        c %= static_cast<std::uint32_t>(p);
        if (c != 0) r.terms_.push_back({terms[i].mono, c});
        i = j;
    }
    return r;
}

void Poly::check_compat(const Poly &o) const {
    if (p_ != o.p_ || n_ != o.n_) throw FieldError("mixing elements of different fields");
}

std::uint32_t Poly::degree_in(int var) const {
    std::uint32_t d = 0;
    for (const auto &t : terms_) d = std::max(d, exponent(t.mono, var));
    return d;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto &t : r.terms_) t.coeff = (p_ - t.coeff) % p_;
    return r;
}

Poly &Poly::operator+=(const Poly &o) {
    check_compat(o);
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) { terms_ = o.terms_; return *this; }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && mono_greater(terms_[i].mono, o.terms_[j].mono))) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() || mono_greater(o.terms_[j].mono, terms_[i].mono)) {
            out.push_back(o.terms_[j++]);
        } else {
            auto c = (terms_[i].coeff + o.terms_[j].coeff) % p_;
            if (c != 0) out.push_back({terms_[i].mono, c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Poly &Poly::operator-=(const Poly &o) { return *this += -o; }

Poly Poly::operator*(const Poly &o) const {
    check_compat(o);
    if (terms_.empty() || o.terms_.empty()) return Poly(p_, n_);
    if (o.terms_.size() == 1) return times_monomial(o.terms_[0].mono, o.terms_[0].coeff);
    if (terms_.size() == 1) return o.times_monomial(terms_[0].mono, terms_[0].coeff);
    check_degree(std::uint64_t{total_degree(leading_mono())} + total_degree(o.leading_mono()));
    // Heap merge of the rows  small[i] * large  (all rows already sorted).
    const auto &small = terms_.size() <= o.terms_.size() ? terms_ : o.terms_;
    const auto &large = terms_.size() <= o.terms_.size() ? o.terms_ : terms_;
    std::vector<std::size_t> pos(small.size(), 0);
    std::vector<std::pair<Monomial, std::size_t>> heap;
    heap.reserve(small.size());
    for (std::size_t i = 0; i < small.size(); ++i) heap.push_back({small[i].mono + large[0].mono, i});
    std::make_heap(heap.begin(), heap.end());
    Poly r(p_, n_);
    r.terms_.reserve(small.size() + large.size());
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end());
        auto [m, i] = heap.back();
        const std::uint32_t c = (small[i].coeff * large[pos[i]].coeff) % p_;
        if (!r.terms_.empty() && r.terms_.back().mono == m) {
            r.terms_.back().coeff = (r.terms_.back().coeff + c) % p_;
        } else {
            if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
            r.terms_.push_back({m, c});
        }
        if (++pos[i] < large.size()) {
            heap.back() = {small[i].mono + large[pos[i]].mono, i};
            std::push_heap(heap.begin(), heap.end());
        } else {
            heap.pop_back();
        }
    }
    if (!r.terms_.empty() && r.terms_.back().coeff == 0) r.terms_.pop_back();
    return r;
}

Poly Poly::scaled(std::uint32_t c) const {
    c %= p_;
    if (c == 0) return Poly(p_, n_);
    Poly r = *this;
    for (auto &t : r.terms_) t.coeff = (t.coeff * c) % p_;
    return r;
}

Poly Poly::times_monomial(Monomial m, std::uint32_t c) const {
    c %= p_;
    if (c == 0) return Poly(p_, n_);
    if (!terms_.empty()) check_degree(std::uint64_t{total_degree(leading_mono())} + total_degree(m));
    Poly r = *this;
    // Multiplication by a monomial preserves the graded-lex order.
    for (auto &t : r.terms_) {
        t.mono += m;
        t.coeff = (t.coeff * c) % p_;
    }
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly result = constant(p_, n_, 1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1u) result = result * base;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return result;
}

Poly Poly::frobenius() const {
    if (!terms_.empty()) check_degree(std::uint64_t{total_degree(leading_mono())} * p_);
    Poly r = *this;
    for (auto &t : r.terms_) {
        Monomial m = 0;
        for (int v = 0; v < kMaxVars; ++v) m = with_exponent(m, v, exponent(t.mono, v) * p_);
        t.mono = m;
    }
    return r;
}

Poly Poly::monic() const {
    if (terms_.empty() || terms_.front().coeff == 1) return *this;
    return scaled(inv_mod(terms_.front().coeff, p_));
}

std::optional<Poly> try_divide(const Poly &a, const Poly &b) {
    if (b.is_zero()) throw FieldError("division by zero");
    if (a.is_zero()) return a;
    const int p = b.p();
    const Term lb = b.terms().front();
    if (b.terms().size() == 1) {
        std::vector<Term> q;
        const auto inv = inv_mod(lb.coeff, p);
        for (const auto &t : a.terms()) {
            if (!divides(lb.mono, t.mono)) return std::nullopt;
            q.push_back({t.mono - lb.mono, (t.coeff * inv) % p});
        }
        return Poly::from_terms(a.p(), a.nvars(), std::move(q));
    }
    if (total_degree(lb.mono) > total_degree(a.leading_mono())) return std::nullopt;
    // Remainder kept in a map keyed by monomial, largest first.
    std::map<Monomial, std::uint32_t, std::greater<>> rem;
    for (const auto &t : a.terms()) rem.emplace(t.mono, t.coeff);
    const auto lb_inv = inv_mod(lb.coeff, p);
    std::vector<Term> q;
    while (!rem.empty()) {
        auto it = rem.begin();
        const Term lr{it->first, it->second};
        if (!divides(lb.mono, lr.mono)) return std::nullopt;
        const Term t{lr.mono - lb.mono, (lr.coeff * lb_inv) % p};
        q.push_back(t);
        rem.erase(it);
        for (std::size_t k = 1; k < b.terms().size(); ++k) {
            const auto &bt = b.terms()[k];
            const Monomial m = bt.mono + t.mono;
            const std::uint32_t c = (bt.coeff * t.coeff) % p;
            auto [pos, inserted] = rem.emplace(m, (p - c) % p);
            if (!inserted) {
                pos->second = (pos->second + p - c) % p;
                if (pos->second == 0) rem.erase(pos);
            }
        }
    }
    return Poly::from_terms(a.p(), a.nvars(), std::move(q));
}

Poly divide_exact(const Poly &a, const Poly &b) {
    auto q = try_divide(a, b);
    if (!q) throw FieldError("inexact polynomial division");
    return *q;
}

Poly gcd(const Poly &a, const Poly &b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly::constant(a.p(), a.nvars(), 1);
    if (a == b) return a.monic();
    if (a.terms().size() == 1) return monomial_gcd(a.terms()[0].mono, b);
    if (b.terms().size() == 1) return monomial_gcd(b.terms()[0].mono, a);

    bool all_free = true;
    int free_var = -1;
    for (int u = 0; u < a.nvars(); ++u) {
        if (a.degree_in(u) == 0 && b.degree_in(u) == 0) continue;
        if (gcd_free_of(a, b, u)) {
            if (free_var < 0) free_var = u;
        } else {
            all_free = false;
        }
    }
    if (all_free) return Poly::constant(a.p(), a.nvars(), 1);
    if (free_var >= 0) return gcd(content_in(a, free_var), content_in(b, free_var));

    const int v = main_variable(a, b);
    if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
    if (b.degree_in(v) == 0) return gcd(content_in(a, v), b);

    if (auto g = detail::modular_gcd(a, b)) return *g;

    const Poly ca = content_in(a, v);
    const Poly cb = content_in(b, v);
    Poly x = divide_exact(a, ca);
    Poly y = divide_exact(b, cb);
    const Poly c = gcd(ca, cb);
    if (x.degree_in(v) < y.degree_in(v)) std::swap(x, y);
    while (true) {
        Poly r = pseudo_remainder(x, y, v);
        if (r.is_zero()) break;
        if (r.degree_in(v) == 0) {
            y = Poly::constant(a.p(), a.nvars(), 1);
            break;
        }
        x = std::move(y);
        y = primitive_part_in(r, v);
    }
    return (c * primitive_part_in(y, v)).monic();
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.p(), num_.nvars(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) {
    if (den.is_zero()) throw FieldError("division by zero");
    if (num.p() != den.p() || num.nvars() != den.nvars()) throw FieldError("mixing elements of different fields");
    if (num.is_zero()) {
        num_ = std::move(num);
        den_ = Poly::constant(num_.p(), num_.nvars(), 1);
        return;
    }
    if (!den.is_constant()) {
        Poly g = gcd(num, den);
        if (!g.is_one()) {
            num = divide_exact(num, g);
            den = divide_exact(den, g);
        }
    }
    const auto lc = den.leading_coeff();
    if (lc != 1) {
        const auto inv = inv_mod(lc, den.p());
        num = num.scaled(inv);
        den = den.scaled(inv);
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc &o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    if (den_ == o.den_) {
        if (den_.is_one()) {
            RatFunc r = *this;
            r.num_ += o.num_;
            return r;
        }
        return RatFunc(num_ + o.num_, den_);
    }
    if (den_.is_one()) {
        RatFunc r = o;
        r.num_ += num_ * o.den_;
        return r;
    }
    if (o.den_.is_one()) {
        RatFunc r = *this;
        r.num_ += o.num_ * den_;
        return r;
    }
    const Poly g = gcd(den_, o.den_);
    const Poly b1 = divide_exact(den_, g);
    const Poly d1 = divide_exact(o.den_, g);
    Poly num = num_ * d1 + o.num_ * b1;
    Poly den = b1 * o.den_;
    if (num.is_zero()) return RatFunc(num);
    const Poly h = gcd(num, g);
    if (!h.is_one()) {
        num = divide_exact(num, h);
        den = divide_exact(den, h);
    }
    RatFunc r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
}

RatFunc RatFunc::operator-(const RatFunc &o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc &o) const {
    if (is_zero()) return *this;
    if (o.is_zero()) return o;
    if (den_.is_one() && o.den_.is_one()) return RatFunc(num_ * o.num_);
    const Poly g1 = gcd(num_, o.den_);
    const Poly g2 = gcd(o.num_, den_);
    RatFunc r;
    r.num_ = divide_exact(num_, g1) * divide_exact(o.num_, g2);
    r.den_ = divide_exact(den_, g2) * divide_exact(o.den_, g1);
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw FieldError("division by zero");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc &o) const { return *this * o.inverse(); }

RatFunc RatFunc::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r;
    r.num_ = num_.pow(static_cast<unsigned>(e));
    r.den_ = den_.pow(static_cast<unsigned>(e));
    return r;
}

RatFunc RatFunc::frobenius() const {
    RatFunc r;
    r.num_ = num_.frobenius();
    r.den_ = den_.frobenius();
    return r;
}

std::optional<RatFunc> RatFunc::pth_root() const {
    const int p = num_.p();
    auto root = [p](const Poly &a) -> std::optional<Poly> {
        std::vector<Term> ts;
        ts.reserve(a.terms().size());
        for (const auto &t : a.terms()) {
            Monomial m = 0;
            for (int v = 0; v < kMaxVars; ++v) {
                auto e = exponent(t.mono, v);
                if (e % p != 0) return std::nullopt;
                m = with_exponent(m, v, e / p);
            }
            ts.push_back({m, t.coeff});
        }
        return Poly::from_terms(a.p(), a.nvars(), std::move(ts));
    };
    auto n = root(num_);
    if (!n) return std::nullopt;
    auto d = root(den_);
    if (!d) return std::nullopt;
    RatFunc r;
    r.num_ = std::move(*n);
    r.den_ = std::move(*d);
    return r;
}

namespace {
int compare_terms(const std::vector<Term> &a, const std::vector<Term> &b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        if (a[i].mono != b[i].mono) return mono_greater(a[i].mono, b[i].mono) ? 1 : -1;
        if (a[i].coeff != b[i].coeff) return a[i].coeff > b[i].coeff ? 1 : -1;
    }
    if (a.size() != b.size()) return a.size() > b.size() ? 1 : -1;
    return 0;
}
} // namespace

bool RatFunc::less(const RatFunc &o) const {
    int c = compare_terms(den_.terms(), o.den_.terms());
    if (c != 0) return c < 0;
    return compare_terms(num_.terms(), o.num_.terms()) < 0;
}

RatFunc field_arith(const RatFunc &a, const RatFunc &b, ArithOp op) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
    }
    throw FieldError("unknown operation");
}

// ---------------------------------------------------------------- FunctionField

FunctionField::FunctionField(int p, std::vector<std::string> var_names) : p_(p), names_(std::move(var_names)) {
    if (!is_supported_prime(p_)) throw FieldError("unsupported characteristic " + std::to_string(p_));
    if (names_.empty() || static_cast<int>(names_.size()) > kMaxVars)
        throw FieldError("between 1 and 3 variables are supported");
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw FieldError("duplicate variable name " + names_[i]);
}

FunctionField::FunctionField(int p, int nvars)
    : FunctionField(p, [nvars] {
          static const char *defaults[] = {"t", "u", "v"};
          if (nvars < 1 || nvars > kMaxVars) throw FieldError("between 1 and 3 variables are supported");
          return std::vector<std::string>(defaults, defaults + nvars);
      }()) {}

RatFunc FunctionField::zero() const { return RatFunc(Poly(p_, nvars())); }
RatFunc FunctionField::one() const { return constant(1); }
RatFunc FunctionField::constant(std::int64_t c) const { return RatFunc(Poly::constant(p_, nvars(), c)); }
RatFunc FunctionField::var(int i) const { return RatFunc(Poly::variable(p_, nvars(), i)); }

RatFunc FunctionField::var(std::string_view name) const {
    for (int i = 0; i < nvars(); ++i)
        if (names_[i] == name) return var(i);
    throw FieldError("unknown variable " + std::string(name));
}

std::vector<RatFunc> FunctionField::vars() const {
    std::vector<RatFunc> out;
    for (int i = 0; i < nvars(); ++i) out.push_back(var(i));
    return out;
}

std::size_t FunctionField::degree_over_frobenius() const {
    std::size_t d = 1;
    for (int i = 0; i < nvars(); ++i) d *= static_cast<std::size_t>(p_);
    return d;
}

namespace {

class Parser {
  public:
    Parser(const FunctionField &f, std::string_view s) : f_(f), s_(s) {}

    RatFunc parse_all() {
        RatFunc r = expr();
        skip_ws();
        if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return r;
    }

  private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    RatFunc expr() {
        RatFunc r = term();
        while (true) {
            if (accept('+')) r += term();
            else if (accept('-')) r -= term();
            else return r;
        }
    }

    RatFunc term() {
        RatFunc r = factor();
        while (true) {
            if (accept('*')) {
                r *= factor();
            } else if (accept('/')) {
                const auto at = pos_;
                RatFunc d = factor();
                if (d.is_zero()) throw ParseError("division by zero", at);
                r /= d;
            } else {
                return r;
            }
        }
    }

    RatFunc factor() {
        RatFunc base = atom();
        if (accept('^')) {
            skip_ws();
            const auto at = pos_;
            auto e = natural();
            if (!e) throw ParseError("expected exponent", at);
            if (*e > 1000) throw ParseError("exponent too large", at);
            base = base.pow(static_cast<long>(*e));
        }
        return base;
    }

    std::optional<std::uint64_t> natural() {
        skip_ws();
        std::size_t start = pos_;
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + static_cast<std::uint64_t>(s_[pos_] - '0');
            if (v > (std::uint64_t{1} << 40)) throw ParseError("number too large", start);
            ++pos_;
        }
        if (pos_ == start) return std::nullopt;
        return v;
    }

    RatFunc atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RatFunc r = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return r;
        }
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto v = natural();
            return f_.constant(static_cast<std::int64_t>(*v % static_cast<std::uint64_t>(f_.p())));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const auto start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string name(s_.substr(start, pos_ - start));
            for (int i = 0; i < f_.nvars(); ++i)
                if (f_.var_names()[i] == name) return f_.var(i);
            throw ParseError("unknown variable '" + name + "'", start);
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    const FunctionField &f_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

RatFunc FunctionField::parse(std::string_view text) const { return Parser(*this, text).parse_all(); }

std::vector<RatFunc> FunctionField::parse_list(std::string_view text, char sep) const {
    std::vector<RatFunc> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] == '(') ++depth;
        if (i < text.size() && text[i] == ')') --depth;
        if (i == text.size() || (text[i] == sep && depth == 0)) {
            auto piece = text.substr(start, i - start);
            if (piece.find_first_not_of(" \t") != std::string_view::npos) out.push_back(parse(piece));
            start = i + 1;
        }
    }
    return out;
}

std::string FunctionField::render(const Poly &x) const {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &t : x.terms()) {
        if (!first) os << '+';
        first = false;
        std::vector<std::string> parts;
        if (t.coeff != 1 || t.mono == 0) parts.push_back(std::to_string(t.coeff));
        for (int v = 0; v < nvars(); ++v) {
            auto e = exponent(t.mono, v);
            if (e == 0) continue;
            parts.push_back(e == 1 ? names_[v] : names_[v] + "^" + std::to_string(e));
        }
        for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
    }
    return os.str();
}

std::string FunctionField::render(const RatFunc &x) const {
    if (x.p() != p_ || x.nvars() != nvars()) throw FieldError("element does not belong to this field");
    if (x.den().is_one()) return render(x.num());
    std::string n = render(x.num());
    std::string d = render(x.den());
    if (x.num().terms().size() > 1) n = "(" + n + ")";
    const auto &dt = x.den().terms();
    bool single_power = dt.size() == 1 && dt[0].coeff == 1 && d.find('*') == std::string::npos;
    if (!single_power) d = "(" + d + ")";
    return n + "/" + d;
}

} // namespace exotic

#include "exotic/pbasis.hpp"

namespace exotic {

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

RatFunc p_monomial(std::size_t idx, const std::vector<RatFunc> &a, int p) {
    if (a.empty()) throw FieldError("p_monomial needs at least one element");
    RatFunc r = RatFunc(Poly::constant(a[0].p(), a[0].nvars(), 1));
    for (const auto &x : a) {
        auto e = static_cast<long>(idx % static_cast<std::size_t>(p));
        idx /= static_cast<std::size_t>(p);
        if (e) r *= x.pow(e);
    }
    return r;
}

RatFunc p_monomial(std::size_t idx, std::size_t n, const std::vector<RatFunc> &a, int p) {
    if (a.size() != n) throw FieldError("p_monomial: arity mismatch");
    if (idx >= ipow(static_cast<std::size_t>(p), n)) throw FieldError("p_monomial: index out of range");
    if (n == 0) throw FieldError("p_monomial: empty tuple");
    return p_monomial(idx, a, p);
}

Vec var_coords(const RatFunc &b) {
    const int p = b.p();
    const int n = b.nvars();
    const std::size_t len = ipow(static_cast<std::size_t>(p), static_cast<std::size_t>(n));
    const Poly P = b.den().is_one() ? b.num() : b.num() * b.den().pow(static_cast<unsigned>(p - 1));
    std::vector<std::vector<Term>> buckets(len);
    for (const auto &t : P.terms()) {
        std::size_t idx = 0, place = 1;
        Monomial q = 0;
        for (int v = 0; v < n; ++v) {
            auto e = exponent(t.mono, v);
            idx += (e % p) * place;
            place *= static_cast<std::size_t>(p);
            q = with_exponent(q, v, e / p);
        }
        buckets[idx].push_back({q, t.coeff});
    }
    Vec out;
    out.reserve(len);
    for (auto &bk : buckets) {
        Poly Q = Poly::from_terms(p, n, std::move(bk));
        out.push_back(b.den().is_one() ? RatFunc(std::move(Q)) : RatFunc(std::move(Q), b.den()));
    }
    return out;
}

RatFunc from_var_coords(const FunctionField &f, const Vec &c) {
    RatFunc r = f.zero();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        r += c[i].frobenius() * p_monomial(i, f.vars(), f.p());
    }
    return r;
}

bool is_zero_vec(const Vec &v) {
    for (const auto &x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec Echelon::reduce(Vec v, Vec *coeffs) const {
    if (v.size() != dim_) throw FieldError("vector length mismatch");
    if (coeffs) {
        coeffs->clear();
        if (!v.empty()) coeffs->assign(rows_.size(), RatFunc(Poly(v[0].p(), v[0].nvars())));
    }
    for (std::size_t j = 0; j < rows_.size(); ++j) {
        const RatFunc f = v[pivots_[j]];
        if (f.is_zero()) continue;
        const Vec &row = rows_[j];
        for (std::size_t c = pivots_[j]; c < dim_; ++c)
            if (!row[c].is_zero()) v[c] -= f * row[c];
        if (coeffs)
            for (std::size_t k = 0; k < combos_[j].size(); ++k)
                if (!combos_[j][k].is_zero()) (*coeffs)[k] += f * combos_[j][k];
    }
    return v;
}

bool Echelon::insert(const Vec &v) {
    Vec c;
    Vec r = reduce(v, &c);
    std::size_t piv = 0;
    while (piv < dim_ && r[piv].is_zero()) ++piv;
    if (piv == dim_) return false;
    const RatFunc inv = r[piv].inverse();
    for (auto &x : r)
        if (!x.is_zero()) x *= inv;
    // r_old = v - sum c_k orig_k, so row = (v - sum c_k orig_k) / pivot.
    Vec combo(rows_.size() + 1, RatFunc(Poly(v[0].p(), v[0].nvars())));
    for (std::size_t k = 0; k < c.size(); ++k) combo[k] = -(c[k] * inv);
    combo.back() = inv;
    rows_.push_back(std::move(r));
    pivots_.push_back(piv);
    combos_.push_back(std::move(combo));
    return true;
}

std::vector<Vec> kernel(const std::vector<Vec> &cols, std::size_t rows) {
    std::vector<Vec> out;
    if (cols.empty()) return out;
    const RatFunc zero = RatFunc(Poly(cols[0].empty() ? 2 : cols[0][0].p(), cols[0].empty() ? 1 : cols[0][0].nvars()));
    Echelon ech(rows);
    std::vector<std::size_t> indep;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        Vec c;
        Vec r = ech.reduce(cols[j], &c);
        if (is_zero_vec(r)) {
            Vec k(cols.size(), zero);
            k[j] = zero + RatFunc(Poly::constant(zero.p(), zero.nvars(), 1));
            for (std::size_t i = 0; i < c.size(); ++i) k[indep[i]] = -c[i];
            out.push_back(std::move(k));
        } else {
            ech.insert(cols[j]);
            indep.push_back(j);
        }
    }
    return out;
}

KpSpace::KpSpace(FunctionField f)
    : f_(std::move(f)), ech_(f_.degree_over_frobenius()) {}

KpSpace KpSpace::span(const FunctionField &f, const std::vector<RatFunc> &elems) {
    KpSpace s(f);
    for (const auto &x : elems) s.add(x);
    return s;
}

KpSpace KpSpace::field(const FunctionField &f, const std::vector<RatFunc> &gens) {
    KpSpace s(f);
    s.add(f.one());
    for (const auto &g : gens) s.adjoin(g);
    return s;
}

bool KpSpace::add(const RatFunc &x) {
    if (x.is_zero()) return false;
    if (!ech_.insert(var_coords(x))) return false;
    basis_.push_back(x);
    return true;
}

bool KpSpace::adjoin(const RatFunc &g) {
    if (contains(g)) return false;
    const std::vector<RatFunc> old = basis_;
    RatFunc gj = g;
    for (int j = 1; j < f_.p(); ++j) {
        for (const auto &b : old) add(b * gj);
        gj *= g;
    }
    return true;
}

bool KpSpace::contains(const RatFunc &x) const {
    if (x.is_zero()) return true;
    return is_zero_vec(ech_.reduce(var_coords(x)));
}

std::optional<Vec> KpSpace::coords(const RatFunc &x) const {
    Vec c;
    Vec r = ech_.reduce(var_coords(x), &c);
    if (!is_zero_vec(r)) return std::nullopt;
    return c;
}

LambdaCoords lambda(const FunctionField &f, const std::vector<RatFunc> &a, const RatFunc &b) {
    const std::size_t len = ipow(static_cast<std::size_t>(f.p()), a.size());
    LambdaCoords out;
    out.coords.assign(len, f.zero());
    if (len > f.degree_over_frobenius()) return out;
    KpSpace sp(f);
    for (std::size_t i = 0; i < len; ++i) {
        const RatFunc m = a.empty() ? f.one() : p_monomial(i, a, f.p());
        if (!sp.add(m)) return out;
    }
    auto c = sp.coords(b);
    if (!c) return out;
    out.coords = std::move(*c);
    out.defined = true;
    return out;
}

bool is_p_independent(const FunctionField &f, const std::vector<RatFunc> &c, const std::vector<RatFunc> &over) {
    KpSpace F = KpSpace::field(f, over);
    for (const auto &x : c)
        if (!F.adjoin(x)) return false;
    return true;
}

} // namespace exotic

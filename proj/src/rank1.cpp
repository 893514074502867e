#include "exotic/rank1.hpp"

namespace exotic {

// ---------------------------------------------------------------- matrices

Mat2 Mat2::make(RatFunc a, RatFunc b, RatFunc c, RatFunc d) {
    if (!(a * d - b * c).is_one()) throw FieldError("matrix does not have determinant 1");
    return Mat2{std::move(a), std::move(b), std::move(c), std::move(d)};
}

Mat2 Mat2::identity(const FunctionField &K) { return Mat2{K.one(), K.zero(), K.zero(), K.one()}; }

Mat2 Mat2::operator*(const Mat2 &o) const {
    return Mat2{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::inverse() const { return Mat2{d, -b, -c, a}; }

Mat2 gen2(const FunctionField &K, Gen2 kind, const RatFunc &t) {
    switch (kind) {
    case Gen2::a: return Mat2{K.one(), t, K.zero(), K.one()};
    case Gen2::b: return Mat2{K.one(), K.zero(), t, K.one()};
    case Gen2::h:
        if (t.is_zero()) throw FieldError("h(0) is not invertible");
        return Mat2{t, K.zero(), K.zero(), t.inverse()};
    case Gen2::w: return Mat2{K.zero(), K.one(), K.constant(-1), K.zero()};
    }
    throw FieldError("unknown generator");
}

Mat2 f_of_a(const FunctionField &K, const RatFunc &t) { return gen2(K, Gen2::b, -t.inverse()); }

Mat2 commutator(const Mat2 &x, const Mat2 &y) { return x.inverse() * y.inverse() * x * y; }

// ---------------------------------------------------------------- Bruhat form

Bruhat2 bruhat2(const Mat2 &g) {
    if (!(g.a * g.d - g.b * g.c).is_one()) throw FieldError("matrix does not have determinant 1");
    const RatFunc zero = g.a - g.a;
    if (g.c.is_zero()) return Bruhat2{false, g.a, g.b / g.a, zero};
    return Bruhat2{true, -g.c.inverse(), g.a * g.c, g.d / g.c};
}

Mat2 assemble(const FunctionField &K, const Bruhat2 &e) {
    Mat2 m = gen2(K, Gen2::h, e.tau) * gen2(K, Gen2::a, e.s1);
    if (e.cell) m = m * gen2(K, Gen2::w, K.zero()) * gen2(K, Gen2::a, e.s2);
    return m;
}

std::string render(const FunctionField &K, const Bruhat2 &e) {
    if (!e.cell) return "Upper{" + K.render(e.tau) + "," + K.render(e.s1) + "}";
    return "Cell{" + K.render(e.tau) + "," + K.render(e.s1) + "," + K.render(e.s2) + "}";
}

namespace {

struct State {
    bool cell;
    RatFunc tau, s, s2;
};

// Right multiplication by single primitives; only structure operations.
void rmul_h(State &x, const RatFunc &sigma, const Rank1Structure &S) {
    const RatFunc inv = S.t_inv(sigma);
    if (!x.cell) {
        x.tau = S.t_mul(x.tau, sigma);
        x.s = S.act(S.t_square(inv), x.s);
    } else {
        // a(s) w a(s2) h(sigma) = h(sigma^-1) a(sigma^2 s) w a(sigma^-2 s2)
        x.tau = S.t_mul(x.tau, inv);
        x.s = S.act(S.t_square(sigma), x.s);
        x.s2 = S.act(S.t_square(inv), x.s2);
    }
}

void rmul_a(State &x, const RatFunc &v, const Rank1Structure &S) {
    if (!x.cell) x.s = S.l_add(x.s, v);
    else x.s2 = S.l_add(x.s2, v);
}

void rmul_w(State &x, const Rank1Structure &S) {
    if (!x.cell) {
        x.cell = true;
        x.s2 = S.l_zero();
        return;
    }
    if (S.l_is_zero(x.s2)) {
        // w w = h(-1)
        x.cell = false;
        x.tau = S.t_mul(x.tau, S.t_neg_one());
        return;
    }
    // w a(y) w = h(-1/y) a(-y) w a(-1/y)
    const RatFunc y = x.s2;
    const RatFunc sy = S.sigma(y);
    const RatFunc inv_y = S.act(S.t_inv(sy), y);
    x.tau = S.t_mul(x.tau, S.t_mul(S.t_neg_one(), S.t_inv(S.l_to_t(y))));
    x.s = S.l_add(S.act(sy, x.s), S.l_neg(y));
    x.s2 = S.l_neg(inv_y);
}

} // namespace

Bruhat2 mult_bruhat(const Bruhat2 &x, const Bruhat2 &y, const Rank1Structure &S) {
    State st{x.cell, x.tau, x.s1, x.cell ? x.s2 : S.l_zero()};
    rmul_h(st, y.tau, S);
    rmul_a(st, y.s1, S);
    if (y.cell) {
        rmul_w(st, S);
        rmul_a(st, y.s2, S);
    }
    return Bruhat2{st.cell, st.tau, st.s, st.cell ? st.s2 : S.l_zero()};
}

// ---------------------------------------------------------------- Timmesfeld data

TimmesfeldData::TimmesfeldData(RSpace L, std::optional<Codim1> codim1)
    : L_(std::move(L)), codim1_(std::move(codim1)), KL_(KpSpace::field(L_.ambient(), L_.space().basis())) {
    if (!L_.contains(L_.ambient().one())) throw SpecError(L_.name(), "L must contain 1");
    if (codim1_) {
        const KpSpace K1 = KpSpace::field(L_.ambient(), codim1_->field_gens);
        for (const auto &b : K1.basis())
            if (!L_.contains(b)) throw SpecError("codim1", "K1 is not contained in L");
        if (!L_.contains(codim1_->u) || K1.contains(codim1_->u))
            throw SpecError("codim1", "u must lie in L outside K1");
        if (L_.space().dim() != K1.dim() + 1) throw SpecError("codim1", "L is not K1 + K^2 u");
    }
}

RatFunc TorusWitness::product(const FunctionField &K) const {
    RatFunc r = K.one();
    for (const auto &[f, e] : factors) r *= e > 0 ? f : f.inverse();
    return r;
}

const char *to_string(Verdict v) {
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
    }
    return "?";
}

std::pair<RatFunc, RatFunc> factor_codim1(const RatFunc &x, const TimmesfeldData &data) {
    if (!data.codim1()) throw SpecError("codim1", "no codimension-one data");
    const auto &K = data.ambient();
    const auto &c = *data.codim1();
    RSpace K1u(K, "K1(u)", c.field_gens, {K.one(), c.u});
    auto coords = K1u.member(x);
    if (!coords) throw FieldError("element is not in K1(u)");
    const RatFunc &alpha = (*coords)[0];
    const RatFunc &beta = (*coords)[1];
    if (beta.is_zero()) return {alpha, K.one()};
    return {beta, alpha / beta + c.u};
}

namespace {

// tau = l1 / l2 with l1, l2 in L*: nonzero l in L with tau*l in L.
std::optional<TorusWitness> two_factor(const RatFunc &tau, const RSpace &L) {
    const auto &E = L.space().basis();
    std::vector<Vec> cols;
    for (const auto &e : E) cols.push_back(L.space().residual(tau * e));
    auto ker = kernel(cols, L.ambient().degree_over_frobenius());
    if (ker.empty()) return std::nullopt;
    RatFunc l = L.ambient().zero();
    for (std::size_t j = 0; j < E.size(); ++j)
        if (!ker[0][j].is_zero()) l += ker[0][j].frobenius() * E[j];
    return TorusWitness{{{tau * l, 1}, {l, -1}}};
}

std::optional<TorusWitness> search(const RatFunc &tau, const RSpace &L, const std::vector<RatFunc> &pool,
                                   unsigned depth) {
    if (depth >= 1 && L.contains(tau)) return TorusWitness{{{tau, 1}}};
    if (depth >= 2)
        if (auto w = two_factor(tau, L)) return w;
    if (depth >= 3)
        for (const auto &q : pool)
            for (int e : {1, -1}) {
                const RatFunc rest = e > 0 ? tau / q : tau * q;
                if (auto w = search(rest, L, pool, depth - 1)) {
                    w->factors.push_back({q, e});
                    return w;
                }
            }
    return std::nullopt;
}

} // namespace

TorusResult torus_membership(const RatFunc &tau, const TimmesfeldData &data, unsigned bound) {
    if (tau.is_zero()) throw FieldError("torus coordinate must be nonzero");
    const auto &K = data.ambient();
    if (!data.field().contains(tau)) return {Verdict::no, std::nullopt};
    if (data.L_is_field()) return {Verdict::yes, TorusWitness{{{tau, 1}}}};
    if (data.codim1()) {
        auto [l1, l2] = factor_codim1(tau, data);
        return {Verdict::yes, TorusWitness{{{l1, 1}, {l2, 1}}}};
    }
    std::vector<RatFunc> pool = data.L().space().basis();
    const std::size_t n = pool.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pool.push_back(pool[i] + pool[j]);
    if (auto w = search(tau, data.L(), pool, bound)) {
        if (!(w->product(K) == tau)) throw FieldError("torus witness does not reproduce its target");
        return {Verdict::yes, std::move(w)};
    }
    return {Verdict::unknown, std::nullopt};
}

TorusResult membership_sl2L(const Mat2 &g, const TimmesfeldData &data, unsigned bound) {
    const Bruhat2 e = bruhat2(g);
    if (!data.L().contains(e.s1)) return {Verdict::no, std::nullopt};
    if (e.cell && !data.L().contains(e.s2)) return {Verdict::no, std::nullopt};
    return torus_membership(e.tau, data, bound);
}

RatFunc perfectness_witness(const FunctionField &K, const RatFunc &s, const RatFunc &t) {
    if (t.is_zero() || (t * t).is_one()) throw FieldError("perfectness witness needs t^2 != 1");
    const RatFunc sp = s / (K.one() - (t * t).inverse());
    const Mat2 lhs = commutator(gen2(K, Gen2::h, t), gen2(K, Gen2::a, sp));
    if (!(lhs == gen2(K, Gen2::a, s))) throw FieldError("perfectness witness failed verification");
    return sp;
}

ExtractedRank1 extract_structure(const TimmesfeldData &data, const std::vector<RatFunc> &torus_gens) {
    ExtractedRank1 out{{}, FieldRank1Structure(data.ambient(), &data.L())};
    for (const auto &t : torus_gens) {
        if (t.is_zero()) throw FieldError("torus generator must be nonzero");
        const RatFunc t2 = t * t;
        for (const auto &e : data.L().space().basis())
            if (!data.L().contains(t2 * e) || !data.L().contains(t2.inverse() * e))
                throw SpecError("torus", "h(" + data.ambient().render(t) + ") does not normalize the root group of L");
        out.tbar_gens.push_back(t2);
    }
    return out;
}

} // namespace exotic

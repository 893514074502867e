#include "exotic/reconstruct.hpp"

#include "exotic/sample.hpp"

#include <algorithm>
#include <functional>
#include "json.hpp"

namespace exotic {

// ---------------------------------------------------------------- oracles

UnipotentOracle::UnipotentOracle(RootDatum2 d, std::vector<std::size_t> designated)
    : d_(std::move(d)), designated_(std::move(designated)) {
    for (auto s : designated_)
        if (s >= d_.size()) throw SpecError("oracle", "designated slot out of range");
    store_.push_back(u_identity(d_));
}

Elem UnipotentOracle::make(const UElement &x) const {
    if (x.coords.size() != d_.size() || !u_in_domain(d_, x))
        throw InvariantError("oracle: element outside the group");
    std::lock_guard<std::mutex> lock(mu_);
    store_.push_back(x);
    return Elem{store_.size() - 1};
}

UElement UnipotentOracle::coords(Elem x) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (x.id >= store_.size()) throw FieldError("oracle: unknown handle");
    return store_[x.id];
}

Elem UnipotentOracle::identity() const { return Elem{0}; }

Elem UnipotentOracle::mul(Elem x, Elem y) const { return make(u_mult(d_, coords(x), coords(y))); }

Elem UnipotentOracle::inv(Elem x) const { return make(u_inverse(d_, coords(x))); }

bool UnipotentOracle::equal(Elem x, Elem y) const { return coords(x) == coords(y); }

void UnipotentOracle::require_designated(std::size_t slot) const {
    if (std::find(designated_.begin(), designated_.end(), slot) == designated_.end())
        throw ReconstructionError("oracle: slot " + std::to_string(slot + 1) + " is not designated");
}

Elem UnipotentOracle::param(std::size_t slot) const {
    require_designated(slot);
    return make(u_gen(d_, slot, d_.field().one()));
}

bool UnipotentOracle::in_root_subgroup(std::size_t slot, Elem x) const {
    require_designated(slot);
    const UElement c = coords(x);
    for (std::size_t i = 0; i < c.coords.size(); ++i)
        if (i != slot && !c.coords[i].is_zero()) return false;
    return true;
}

Elem UnipotentOracle::sample_root(std::size_t slot, std::uint64_t seed) const {
    require_designated(slot);
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + slot);
    const KpSpace *D = d_.domain_space(slot);
    const RatFunc t = D ? random_nonzero_in(*D, rng, 1, 1) : random_nonzero(d_.field(), rng, 1, 2);
    return make(u_gen(d_, slot, t));
}

Elem CorruptedOracle::mul(Elem x, Elem y) const {
    const Elem r = in_.mul(x, y);
    const Elem e = in_.identity();
    if (in_.equal(x, e) || in_.equal(y, e)) return r;
    return in_.mul(r, in_.make(u_gen(in_.datum(), slot_, in_.datum().field().one())));
}

// ---------------------------------------------------------------- cosets

namespace {

std::pair<Elem, Elem> end_params(const GroupOracle &o) {
    const auto d = o.designated();
    if (d.size() < 2) throw ReconstructionError("need two designated end parameters");
    return {o.param(d.front()), o.param(d.back())};
}

bool is_identity(const GroupOracle &o, Elem x) { return o.equal(x, o.identity()); }

} // namespace

bool in_center(const GroupOracle &o, Elem x) {
    const auto [a, b] = end_params(o);
    return is_identity(o, o.comm(x, a)) && is_identity(o, o.comm(x, b));
}

bool coset_equal(const GroupOracle &o, const CosetElem &x, const CosetElem &y) {
    if (x.modulus != y.modulus) throw ReconstructionError("comparing cosets of different subgroups");
    const Elem d = o.mul(x.rep, o.inv(y.rep));
    switch (x.modulus) {
    case Modulus::Z: return in_center(o, d);
    case Modulus::Z2: {
        const auto [a, b] = end_params(o);
        return in_center(o, o.comm(d, a)) && in_center(o, o.comm(d, b));
    }
    case Modulus::U2: return o.in_root_subgroup(1, d);
    case Modulus::U3: return o.in_root_subgroup(2, d);
    }
    return false;
}

// ---------------------------------------------------------------- G2

G2Recovered::G2Recovered(const GroupOracle &o) : o_(o) {
    u1_ = o.param(0);
    u6_ = o.param(5);
    u1i_ = o.inv(u1_);
    u6i_ = o.inv(u6_);
}

Elem G2Recovered::m2(Elem a, Elem t) const { return o_.comm(o_.comm(a, t), u6_); }
Elem G2Recovered::m5(Elem a, Elem t) const { return o_.comm(o_.comm(a, t), u1_); }
Elem G2Recovered::from_U1(Elem a) const { return m5(a, u6i_); }
Elem G2Recovered::from_U6(Elem t) const { return m2(u1i_, t); }
Elem G2Recovered::embed(Elem t) const { return m5(u1i_, t); }
Elem G2Recovered::xi(Elem a) const { return m2(a, u6i_); }
Elem G2Recovered::mul(Elem a, Elem b) const { return o_.comm(o_.comm(b, u6i_), a); }

bool G2Recovered::mul_law(Elem a, Elem t, Elem c) const {
    return o_.equal(m2(a, t), o_.inv(xi(c)));
}

namespace {

void require(bool ok, const std::string &what) {
    if (!ok) throw ReconstructionError("oracle inconsistency: " + what);
}

} // namespace

G2Recovered g2_recover(const GroupOracle &o, std::size_t samples, std::uint64_t seed) {
    G2Recovered r(o);
    for (std::size_t i = 0; i < samples; ++i) {
        const Elem a = o.sample_root(0, seed + 3 * i), b = o.sample_root(0, seed + 3 * i + 1);
        const Elem t = o.sample_root(5, seed + 3 * i + 2);
        require(coset_equal(o, {o.comm(a, o.param(5)), Modulus::Z2}, {o.identity(), Modulus::Z2}),
                "[U1, U6] is not inside Z2");
        require(in_center(o, r.from_U1(a)) && in_center(o, r.xi(a)) && in_center(o, r.embed(t)),
                "induced maps do not land in the center");
        require(o.equal(r.from_U1(o.mul(a, b)), o.mul(r.from_U1(a), r.from_U1(b))), "lambda_53 is not additive");
        require(o.equal(r.xi(o.mul(a, b)), o.mul(r.xi(a), r.xi(b))), "cubing is not additive");
        require(o.equal(r.mul(a, b), r.mul(b, a)), "recovered multiplication is not commutative");
        require(o.equal(r.mul(a, o.param(0)), r.from_U1(a)), "u1 is not a multiplicative identity");
    }
    return r;
}

// ---------------------------------------------------------------- C2

C2Recovered::C2Recovered(const GroupOracle &o) : o_(o) {
    u1_ = o.param(0);
    u4_ = o.param(3);
    o.param(1);
    o.param(2);
}

CosetElem C2Recovered::k0_value(Elem t) const { return {o_.comm(t, u4_), Modulus::U2}; }
CosetElem C2Recovered::l0_value(Elem a) const { return {o_.comm(u1_, a), Modulus::U3}; }
CosetElem C2Recovered::embed(Elem a) const { return {o_.comm(u1_, a), Modulus::U2}; }
CosetElem C2Recovered::square(Elem t) const { return {o_.comm(t, u4_), Modulus::U3}; }

bool C2Recovered::is_square_witness(Elem x, Elem w) const {
    return o_.in_root_subgroup(3, w) && coset_equal(o_, l0_value(w), square(x));
}

std::optional<CosetElem> C2Recovered::star(Elem a, Elem b, Elem w) const {
    if (!is_square_witness(a, w)) return std::nullopt;
    return CosetElem{m3(b, w), Modulus::U2};
}

bool C2Recovered::l0_member(const CosetElem &z, Elem w) const {
    return o_.in_root_subgroup(3, w) && coset_equal(o_, embed(w), z);
}

C2Recovered c2_recover(const GroupOracle &o, std::size_t samples, std::uint64_t seed) {
    C2Recovered r(o);
    for (std::size_t i = 0; i < samples; ++i) {
        const Elem t = o.sample_root(0, seed + 4 * i), s = o.sample_root(0, seed + 4 * i + 1);
        const Elem a = o.sample_root(3, seed + 4 * i + 2), a2 = o.sample_root(3, seed + 4 * i + 3);
        require(in_center(o, r.m3(t, a)), "[U1, U4] is not central");
        // bilinearity of the commutator pairing (char 2: squaring is additive)
        require(o.equal(r.m3(o.mul(t, s), a), o.mul(r.m3(t, a), r.m3(s, a))), "pairing not additive in U1");
        require(o.equal(r.m3(t, o.mul(a, a2)), o.mul(r.m3(t, a), r.m3(t, a2))), "pairing not additive in U4");
        require(coset_equal(o, r.k0_value(o.mul(t, s)), {o.mul(r.k0_value(t).rep, r.k0_value(s).rep), Modulus::U2}),
                "K0 identification is not additive");
    }
    return r;
}

// ---------------------------------------------------------------- verification

std::string RecoveryReport::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = kind;
    j["instances"] = instances;
    j["checks"] = checks;
    j["mismatches"] = mismatches;
    j["status"] = ok() ? "pass" : "fail";
    return j.dump(2);
}

namespace {

struct Checker {
    const UnipotentOracle &truth;
    RecoveryReport &rep;

    // Runs f; an exception or a false result is a mismatch.
    void operator()(const std::string &name, const std::function<bool()> &f) {
        ++rep.checks;
        try {
            if (f()) return;
            rep.mismatches.push_back(name);
        } catch (const std::exception &e) {
            rep.mismatches.push_back(name + " (" + e.what() + ")");
        }
    }
    bool is(Elem e, std::size_t slot, const RatFunc &c) const { return truth.coords(e) == u_gen(truth.datum(), slot, c); }
    // Value of a coset of Z modulo U2 / U3: the other central coordinate.
    bool value(const CosetElem &z, const RatFunc &c) const {
        const UElement x = truth.coords(z.rep);
        if (!x.coords[0].is_zero() || !x.coords[3].is_zero()) return false;
        return x.coords[z.modulus == Modulus::U2 ? 2 : 1] == c;
    }
};

} // namespace

RecoveryReport verify_g2(const UnipotentOracle &truth, const GroupOracle &used, std::size_t n, std::uint64_t seed) {
    RecoveryReport rep;
    rep.kind = "g2";
    const auto &d = truth.datum();
    if (d.kind() != RootKind::g2) throw SpecError("verify", "truth oracle is not of type G2");
    std::optional<G2Recovered> r;
    try {
        r.emplace(g2_recover(used, 8, seed));
    } catch (const std::exception &e) {
        rep.mismatches.push_back(std::string("recovery: ") + e.what());
        return rep;
    }
    const auto &K = d.field();
    const KpSpace &k = *d.domain_space(1);
    Rng rng(seed);
    Checker check{truth, rep};
    for (std::size_t i = 0; i < n; ++i) {
        ++rep.instances;
        const RatFunc a = random_nonzero(K, rng, 1, 2), b = random_nonzero(K, rng, 1, 2);
        const RatFunc t = random_nonzero_in(k, rng, 1, 1);
        const std::string in = " a=" + K.render(a) + " b=" + K.render(b) + " t=" + K.render(t);
        const Elem A = truth.make(u_gen(d, 0, a)), B = truth.make(u_gen(d, 0, b));
        const Elem T = truth.make(u_gen(d, 5, t));
        check("mul" + in, [&] { return check.is(r->mul(A, B), 2, a * b); });
        check("xi" + in, [&] { return check.is(r->xi(A), 3, a * a * a); });
        check("embed" + in, [&] { return check.is(r->embed(T), 2, t); });
        check("from_U1" + in, [&] { return check.is(r->from_U1(A), 2, a); });
        check("from_U6" + in, [&] { return check.is(r->from_U6(T), 3, t); });
        check("m2" + in, [&] { return check.is(r->m2(A, T), 3, -(t * a * a * a)); });
        check("m5" + in, [&] { return check.is(r->m5(A, T), 2, -(t * a)); });
        check("add" + in, [&] { return check.is(r->add(r->from_U1(A), r->from_U1(B)), 2, a + b); });
        check("mul_law" + in, [&] {
            return r->mul_law(A, truth.make(u_gen(d, 5, b * b * b)), truth.make(u_gen(d, 0, a * b)));
        });
    }
    return rep;
}

RecoveryReport verify_c2(const UnipotentOracle &truth, const GroupOracle &used, std::size_t n, std::uint64_t seed) {
    RecoveryReport rep;
    rep.kind = "c2";
    const auto &d = truth.datum();
    if (d.kind() != RootKind::c2) throw SpecError("verify", "truth oracle is not of type C2");
    std::optional<C2Recovered> r;
    try {
        r.emplace(c2_recover(used, 8, seed));
    } catch (const std::exception &e) {
        rep.mismatches.push_back(std::string("recovery: ") + e.what());
        return rep;
    }
    const auto &K = d.field();
    const KpSpace &K0 = *d.domain_space(0);
    const KpSpace &L0 = *d.domain_space(1);
    Rng rng(seed);
    Checker check{truth, rep};
    for (std::size_t i = 0; i < n; ++i) {
        ++rep.instances;
        const RatFunc t = random_nonzero_in(K0, rng, 1, 1), b = random_nonzero_in(K0, rng, 1, 1);
        const RatFunc a = random_nonzero_in(L0, rng, 1, 1), c = random_nonzero_in(K0, rng, 1, 1);
        const std::string in = " t=" + K.render(t) + " b=" + K.render(b) + " a=" + K.render(a) + " c=" + K.render(c);
        const Elem Tt = truth.make(u_gen(d, 0, t)), Bb = truth.make(u_gen(d, 0, b));
        const Elem A = truth.make(u_gen(d, 3, a)), W = truth.make(u_gen(d, 3, t * t));
        check("k0_value" + in, [&] { return check.value(r->k0_value(Tt), t); });
        check("l0_value" + in, [&] { return check.value(r->l0_value(A), a); });
        check("embed" + in, [&] { return check.value(r->embed(A), a); });
        check("square" + in, [&] { return check.value(r->square(Tt), t * t); });
        check("m2" + in, [&] { return check.value({r->m2(Tt, A), Modulus::U3}, t * t * a); });
        check("m3" + in, [&] { return check.value({r->m3(Tt, A), Modulus::U2}, t * a); });
        check("add" + in, [&] {
            return check.value({r->add(r->k0_value(Tt).rep, r->k0_value(Bb).rep), Modulus::U2}, t + b);
        });
        check("square_witness" + in, [&] { return r->is_square_witness(Tt, W); });
        check("wrong_witness" + in, [&] { return a == t * t || !r->is_square_witness(Tt, A); });
        // a * b = a^2 b, literally
        check("star" + in, [&] {
            auto s = r->star(Tt, Bb, W);
            return s && check.value(*s, t * t * b);
        });
        check("star_one" + in, [&] {
            auto s = r->star(r->oracle().param(0), Bb, r->oracle().param(3));
            return s && check.value(*s, b);
        });
        // L0-membership: values on the x2-line lie in L0 ...
        check("l0_line" + in, [&] {
            const UElement z = truth.coords(r->m2(Tt, A));
            return L0.contains(z.coords[1]) && z.coords[1] == t * t * a;
        });
        // ... and the witnessed predicate agrees with the space membership
        check("l0_member" + in, [&] {
            const CosetElem z = r->k0_value(truth.make(u_gen(d, 0, c)));
            if (L0.contains(c)) return r->l0_member(z, truth.make(u_gen(d, 3, c)));
            return !r->l0_member(z, A) && !r->l0_member(z, W);
        });
    }
    return rep;
}

// ---------------------------------------------------------------- CC(U_r)

namespace {

struct Sampler {
    const Sp4Group &G;
    Rng rng;

    RatFunc coord(std::size_t slot) {
        const auto &sp = G.data().spaces();
        return random_nonzero_in(slot % 2 == 0 ? sp.K0.space() : sp.L0.space(), rng, 1, 1);
    }
    Mat4 root_elem(Sp4Root r) { return chevalley_gen(G.field(), r, coord(root_info(r).slot)); }
    // a^v(t) and (a+b)^v(t) with t in K0; b^v(t) and (2a+b)^v(t) with t in L0.
    Mat4 coroot_elem(int which) {
        const auto &K = G.field();
        const RatFunc t = coord(which % 2 == 0 ? 0 : 1);
        switch (which) {
        case 0: return torus4(K, {t, K.one()});
        case 1: return torus4(K, {K.one(), t});
        case 2: return torus4(K, {t, t * t});
        default: return torus4(K, {t, t});
        }
    }
};

bool commute(const Mat4 &x, const Mat4 &y) { return x * y == y * x; }

// g = x_r(c) with c in the slot domain.
bool in_root_group(const Mat4 &g, Sp4Root r, const Sp4Group &G) {
    const auto &info = root_info(r);
    const Mat4 h = info.positive ? g : g.transpose();
    try {
        const UElement u = unipotent_coords(G.field(), h);
        for (std::size_t s = 0; s < 4; ++s)
            if (s != info.slot && !u.coords[s].is_zero()) return false;
        return G.data().in_slot_domain(info.slot, u.coords[info.slot]);
    } catch (const InvariantError &) {
        return false;
    }
}

} // namespace

std::string CCReport::to_json() const {
    nlohmann::ordered_json j;
    j["root"] = root;
    j["centralizer_gens"] = centralizer_gens;
    j["candidates"] = candidates;
    j["passed"] = passed;
    j["in_root_group"] = in_root_group;
    nlohmann::ordered_json kinds = nlohmann::ordered_json::object();
    for (const auto &[k, v] : by_kind) kinds[k] = {{"tried", v[0]}, {"passed", v[1]}};
    j["by_kind"] = kinds;
    j["violations"] = violations;
    j["confirms"] = confirms();
    return j.dump();
}

CCReport cc_experiment(Sp4Root root, const Sp4Group &ctx, std::size_t samples, std::uint64_t seed) {
    const auto &K = ctx.field();
    Sampler S{ctx, Rng(seed)};
    CCReport rep;
    rep.root = root_info(root).name;

    std::vector<Mat4> ur{chevalley_gen(K, root, K.one()), S.root_elem(root), S.root_elem(root)};
    auto centralizes = [&](const Mat4 &g) {
        return std::all_of(ur.begin(), ur.end(), [&](const Mat4 &x) { return commute(g, x); });
    };

    std::vector<Mat4> cgens;
    for (int r = 0; r < 8; ++r)
        for (int k = 0; k < 2; ++k) {
            const auto rr = static_cast<Sp4Root>(r);
            Mat4 g = k == 0 ? chevalley_gen(K, rr, K.one()) : S.root_elem(rr);
            if (centralizes(g)) cgens.push_back(std::move(g));
        }
    for (int c = 0; c < 4; ++c)
        for (int k = 0; k < 2; ++k)
            if (Mat4 h = S.coroot_elem(c); centralizes(h)) cgens.push_back(std::move(h));
    for (const auto &t : ctx.torus_gens())
        if (Mat4 h = torus4(K, t); centralizes(h)) cgens.push_back(std::move(h));
    rep.centralizer_gens = cgens.size();

    static const char *kinds[] = {"identity", "root_group", "torus", "other_root", "root_times_other", "word"};
    for (std::size_t n = 0; n < samples; ++n) {
        const int kind = static_cast<int>(n % 6);
        Mat4 g = Mat4::identity(K);
        auto other = [&] {
            Sp4Root o;
            do o = static_cast<Sp4Root>(S.rng() % 8);
            while (o == root);
            return o;
        };
        switch (kind) {
        case 0: break;
        case 1: g = S.root_elem(root); break;
        case 2: g = S.coroot_elem(static_cast<int>(S.rng() % 4)) * S.coroot_elem(static_cast<int>(S.rng() % 4)); break;
        case 3: g = S.root_elem(other()); break;
        case 4: g = S.root_elem(root) * S.root_elem(other()); break;
        default:
            for (int i = 0; i < 3; ++i) g = g * S.root_elem(static_cast<Sp4Root>(S.rng() % 8));
        }
        ++rep.candidates;
        auto &bk = rep.by_kind[kinds[kind]];
        ++bk[0];
        const bool pass = std::all_of(cgens.begin(), cgens.end(), [&](const Mat4 &c) { return commute(g, c); });
        const bool inside = in_root_group(g, root, ctx);
        if (inside) ++rep.in_root_group;
        if (!pass) continue;
        ++rep.passed;
        ++bk[1];
        if (!inside) rep.violations.push_back(render(K, g));
    }
    return rep;
}

} // namespace exotic

#include "exotic/sp4.hpp"

#include "json.hpp"

#include <algorithm>

namespace exotic {

namespace {

RatFunc zero_like(const RatFunc &x) { return RatFunc(Poly::constant(x.p(), x.nvars(), 0)); }
RatFunc one_like(const RatFunc &x) { return RatFunc(Poly::constant(x.p(), x.nvars(), 1)); }

void require_char2(const FunctionField &K) {
    if (K.p() != 2) throw FieldError("Sp4 is realized in characteristic 2 only");
}

// Exponents of (s_a, s_b) on the slots a, 2a+b, a+b, b.
constexpr std::array<std::array<int, 2>, 4> kExp{{{2, -1}, {2, 0}, {0, 1}, {-2, 2}}};

RatFunc slot_factor(const TorusElement2 &h, std::size_t slot) {
    return h.s_alpha.pow(kExp[slot][0]) * h.s_beta.pow(kExp[slot][1]);
}

Mat4 from_entries(const RatFunc &like, std::initializer_list<std::tuple<int, int, RatFunc>> entries) {
    Mat4 m{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = i == j ? one_like(like) : zero_like(like);
    for (const auto &[i, j, v] : entries) m(i, j) = v;
    return m;
}

const FunctionField &scratch_field() {
    static const FunctionField F(2, std::vector<std::string>{"t"});
    return F;
}

bool is_lower_unitriangular(const Mat4 &m) {
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            if (i == j ? !m(i, j).is_one() : !m(i, j).is_zero()) return false;
    return true;
}

} // namespace

// ---------------------------------------------------------------- matrices

Mat4 Mat4::identity(const FunctionField &K) { return from_entries(K.one(), {}); }

Mat4 Mat4::make(std::array<RatFunc, 16> e) {
    Mat4 m{std::move(e)};
    if (m.e[0].p() != 2) throw FieldError("Sp4 is realized in characteristic 2 only");
    if (!m.is_symplectic()) throw FieldError("matrix does not preserve the symplectic form");
    return m;
}

Mat4 Mat4::operator*(const Mat4 &o) const {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            RatFunc s = zero_like(e[0]);
            for (int k = 0; k < 4; ++k)
                if (!(*this)(i, k).is_zero() && !o(k, j).is_zero()) s += (*this)(i, k) * o(k, j);
            r(i, j) = std::move(s);
        }
    return r;
}

Mat4 Mat4::transpose() const {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
    return r;
}

// J g^T J: entry (i,j) is g(3-j, 3-i).  Signs vanish in characteristic 2.
Mat4 Mat4::inverse() const {
    Mat4 r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = (*this)(3 - j, 3 - i);
    return r;
}

// g^T J g == J, i.e. <g e_i, g e_j> = J_ij with <x,y> = sum_k x_k y_{3-k}.
bool Mat4::is_symplectic() const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            RatFunc s = zero_like(e[0]);
            for (int k = 0; k < 4; ++k) s += (*this)(k, i) * (*this)(3 - k, j);
            if (i + j == 3 ? !s.is_one() : !s.is_zero()) return false;
        }
    return true;
}

Mat4 commutator(const Mat4 &x, const Mat4 &y) { return x.inverse() * y.inverse() * x * y; }

Mat4 parse_mat4(const FunctionField &K, std::string_view text) {
    require_char2(K);
    const auto parts = K.parse_list(text, ';');
    if (parts.size() != 16) throw ParseError("expected 16 entries separated by ';'", 0);
    std::array<RatFunc, 16> e;
    for (int i = 0; i < 16; ++i) e[i] = parts[i];
    return Mat4::make(std::move(e));
}

std::string render(const FunctionField &K, const Mat4 &g) {
    std::string s;
    for (int i = 0; i < 16; ++i) {
        if (i) s += ';';
        s += K.render(g.e[i]);
    }
    return s;
}

// ---------------------------------------------------------------- roots

namespace {
const std::array<Sp4RootInfo, 8> kRoots{{{"a", false, true, 0},
                                         {"2a+b", true, true, 1},
                                         {"a+b", false, true, 2},
                                         {"b", true, true, 3},
                                         {"-a", false, false, 0},
                                         {"-2a-b", true, false, 1},
                                         {"-a-b", false, false, 2},
                                         {"-b", true, false, 3}}};
} // namespace

const Sp4RootInfo &root_info(Sp4Root r) { return kRoots[static_cast<std::size_t>(r)]; }
Sp4Root positive_root(std::size_t slot) { return static_cast<Sp4Root>(slot); }
Sp4Root negative_root(std::size_t slot) { return static_cast<Sp4Root>(slot + 4); }

std::optional<Sp4Root> parse_root(std::string_view name) {
    for (std::size_t i = 0; i < kRoots.size(); ++i)
        if (name == kRoots[i].name) return static_cast<Sp4Root>(i);
    return std::nullopt;
}

Mat4 chevalley_gen(const FunctionField &K, Sp4Root r, const RatFunc &t) {
    require_char2(K);
    const RatFunc one = K.one();
    Mat4 m{};
    switch (static_cast<Sp4Root>(static_cast<int>(r) % 4)) {
    case Sp4Root::a: m = from_entries(one, {{0, 1, t}, {2, 3, t}}); break;
    case Sp4Root::tapb: m = from_entries(one, {{0, 3, t}}); break;
    case Sp4Root::apb: m = from_entries(one, {{0, 2, t}, {1, 3, t}}); break;
    default: m = from_entries(one, {{1, 2, t}}); break;
    }
    return root_info(r).positive ? m : m.transpose();
}

// ---------------------------------------------------------------- Weyl group

namespace {
const std::array<const char *, kWeylOrder> kWeylWords{"", "a", "b", "ab", "ba", "aba", "bab", "abab"};
} // namespace

const char *weyl_name(int w) {
    static const std::array<const char *, kWeylOrder> names{"e", "a", "b", "ab", "ba", "aba", "bab", "abab"};
    if (w < 0 || w >= kWeylOrder) throw FieldError("Weyl element id out of range");
    return names[w];
}

Mat4 weyl_rep(const FunctionField &K, int w) {
    weyl_name(w);
    const RatFunc one = K.one();
    const Mat4 na = chevalley_gen(K, Sp4Root::a, one) * chevalley_gen(K, Sp4Root::neg_a, one) *
                    chevalley_gen(K, Sp4Root::a, one);
    const Mat4 nb = chevalley_gen(K, Sp4Root::b, one) * chevalley_gen(K, Sp4Root::neg_b, one) *
                    chevalley_gen(K, Sp4Root::b, one);
    Mat4 m = Mat4::identity(K);
    for (const char *c = kWeylWords[w]; *c; ++c) m = m * (*c == 'a' ? na : nb);
    return m;
}

std::vector<std::size_t> weyl_inversions(int w) {
    const auto &F = scratch_field();
    const Mat4 n = weyl_rep(F, w);
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < 4; ++s) {
        const Mat4 c = n * chevalley_gen(F, positive_root(s), F.one()) * n.inverse();
        if (is_lower_unitriangular(c)) out.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------- torus, U

Mat4 torus4(const FunctionField &K, const TorusElement2 &h) {
    require_char2(K);
    if (h.s_alpha.is_zero() || h.s_beta.is_zero()) throw FieldError("torus coordinates must be nonzero");
    const RatFunc d2 = h.s_beta / h.s_alpha;
    Mat4 m = Mat4::identity(K);
    m(0, 0) = h.s_alpha;
    m(1, 1) = d2;
    m(2, 2) = d2.inverse();
    m(3, 3) = h.s_alpha.inverse();
    return m;
}

Mat4 unipotent4(const FunctionField &K, const UElement &x) {
    if (x.coords.size() != 4) throw FieldError("Sp4 unipotent elements have four coordinates");
    Mat4 m = Mat4::identity(K);
    for (std::size_t s = 0; s < 4; ++s)
        if (!x.coords[s].is_zero()) m = m * chevalley_gen(K, positive_root(s), x.coords[s]);
    return m;
}

// x1(t) x2(b) x3(c) x4(a) = 1 + tE12 + aE23 + tE34 + (c+ta)E13 + cE24 + (b+tc)E14.
UElement unipotent_coords(const FunctionField &K, const Mat4 &g) {
    const RatFunc &t = g(0, 1), &a = g(1, 2), &c = g(1, 3);
    UElement x{{t, g(0, 3) - t * c, c, a}};
    if (!(unipotent4(K, x) == g)) throw InvariantError("matrix is not in the positive unipotent subgroup");
    return x;
}

// ---------------------------------------------------------------- Bruhat

bool Bruhat4::operator==(const Bruhat4 &o) const {
    return tau.s_alpha == o.tau.s_alpha && tau.s_beta == o.tau.s_beta && u1 == o.u1 && w == o.w && u2 == o.u2;
}

namespace {

// u1^-1 g u2^-1 monomial for upper unitriangular u1, u2 (no bookkeeping of
// the u's: the monomial matrix of a double coset U m U is unique).
Mat4 monomial_part(Mat4 m) {
    std::array<bool, 4> used{};
    for (int j = 0; j < 4; ++j) {
        int i = 3;
        while (i >= 0 && (used[i] || m(i, j).is_zero())) --i;
        if (i < 0) throw FieldError("matrix is singular");
        used[i] = true;
        for (int l = j + 1; l < 4; ++l)
            if (!m(i, l).is_zero()) {
                const RatFunc c = m(i, l) / m(i, j);
                for (int r = 0; r < 4; ++r)
                    if (!m(r, j).is_zero()) m(r, l) -= c * m(r, j);
            }
        for (int k = 0; k < i; ++k)
            if (!m(k, j).is_zero()) {
                const RatFunc c = m(k, j) / m(i, j);
                for (int col = 0; col < 4; ++col)
                    if (!m(i, col).is_zero()) m(k, col) -= c * m(i, col);
            }
    }
    return m;
}

// A = U L with U upper and L lower unitriangular, via Doolittle on the
// reversed matrix.
std::pair<Mat4, Mat4> ul_decompose(const Mat4 &A) {
    const RatFunc one = one_like(A.e[0]);
    Mat4 Lp = from_entries(one, {}), Up = from_entries(one, {});
    auto Ar = [&](int i, int j) -> const RatFunc & { return A(3 - i, 3 - j); };
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            RatFunc s = Ar(i, j);
            for (int k = 0; k < i; ++k) s -= Lp(i, k) * Up(k, j);
            Up(i, j) = s;
        }
        if (!Up(i, i).is_one()) throw InvariantError("UL factorization has a non-unit pivot");
        for (int j = i + 1; j < 4; ++j) {
            RatFunc s = Ar(j, i);
            for (int k = 0; k < i; ++k) s -= Lp(j, k) * Up(k, i);
            Lp(j, i) = s;
        }
    }
    Mat4 U{}, L{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            U(i, j) = Lp(3 - i, 3 - j);
            L(i, j) = Up(3 - i, 3 - j);
        }
    return {U, L};
}

} // namespace

Bruhat4 sp4_bruhat(const Mat4 &g) {
    if (g.e[0].p() != 2) throw FieldError("Sp4 is realized in characteristic 2 only");
    if (!g.is_symplectic()) throw FieldError("matrix does not preserve the symplectic form");
    const Mat4 m = monomial_part(g);
    const int nv = g.e[0].nvars();
    const FunctionField K(2, nv);

    int w = -1;
    Mat4 n{};
    for (int c = 0; c < kWeylOrder && w < 0; ++c) {
        n = weyl_rep(K, c);
        bool match = true;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) match = match && (n(i, j).is_zero() == m(i, j).is_zero());
        if (match) w = c;
    }
    if (w < 0) throw InvariantError("monomial part is not a Weyl element");

    // m = h n_w; n_w is a permutation matrix in characteristic 2.
    const Mat4 h = m * n.inverse();
    const TorusElement2 tau{h(0, 0), h(0, 0) * h(1, 1)};
    if (!(torus4(K, tau) == h)) throw InvariantError("monomial part has the wrong torus shape");

    const auto [v1, L] = ul_decompose(g * m.inverse());
    const Mat4 hi = h.inverse();
    Bruhat4 out{tau, unipotent_coords(K, hi * v1 * h), w, unipotent_coords(K, m.inverse() * L * m)};

    const auto inv = weyl_inversions(w);
    for (std::size_t s = 0; s < 4; ++s)
        if (!out.u2.coords[s].is_zero() && std::find(inv.begin(), inv.end(), s) == inv.end())
            throw InvariantError("u2 leaves the slots prescribed by w");
    return out;
}

Mat4 assemble(const FunctionField &K, const Bruhat4 &b) {
    return torus4(K, b.tau) * unipotent4(K, b.u1) * weyl_rep(K, b.w) * unipotent4(K, b.u2);
}

std::string to_json(const FunctionField &K, const Bruhat4 &b) {
    auto unip = [&](const UElement &x) {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (std::size_t s = 0; s < 4; ++s) j[root_info(positive_root(s)).name] = K.render(x.coords[s]);
        return j;
    };
    nlohmann::ordered_json j;
    j["tau"] = {{"s_a", K.render(b.tau.s_alpha)}, {"s_b", K.render(b.tau.s_beta)}};
    j["u1"] = unip(b.u1);
    j["w"] = weyl_name(b.w);
    j["u2"] = unip(b.u2);
    return j.dump();
}

// ---------------------------------------------------------------- PSp4(L0,K0)

Psp4Data::Psp4Data(const FunctionField &K, const IndifferentSpec &spec, std::optional<Codim1> L0_codim1,
                   std::optional<Codim1> K0_codim1)
    : K_(K), spec_(spec), sp_([&] {
          const auto rep = validate_indifferent(K, spec);
          if (!rep.ok()) throw SpecError("indifferent", "indifferent set does not validate");
          return resolve_indifferent(K, spec);
      }()),
      K0_(sp_.K0, std::move(K0_codim1)), L0_(sp_.L0, std::move(L0_codim1)), stab_(stabilizer_space(sp_.K0)) {}

bool Psp4Data::in_slot_domain(std::size_t slot, const RatFunc &x) const {
    if (slot >= 4) throw FieldError("Sp4 slot out of range");
    return slot % 2 == 0 ? sp_.K0.contains(x) : sp_.L0.contains(x);
}

namespace {

Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::no || b == Verdict::no) return Verdict::no;
    if (a == Verdict::yes && b == Verdict::yes) return Verdict::yes;
    return Verdict::unknown;
}

// Unipotent and Weyl parts only; empty reason when all coordinates fit.
std::string unipotent_failure(const Bruhat4 &b, const Psp4Data &d) {
    const auto &K = d.field();
    for (const auto *u : {&b.u1, &b.u2})
        for (std::size_t s = 0; s < 4; ++s)
            if (!d.in_slot_domain(s, u->coords[s]))
                return std::string(u == &b.u1 ? "u1" : "u2") + " coordinate " + root_info(positive_root(s)).name +
                       " = " + K.render(u->coords[s]) + " outside " + (s % 2 == 0 ? "K0" : "L0");
    return {};
}

Psp4Result torus_verdict(const TorusElement2 &tau, const Psp4Data &d, unsigned bound) {
    Psp4Result r;
    auto a = torus_membership(tau.s_alpha, d.K0(), bound);
    auto b = torus_membership(tau.s_beta, d.L0(), bound);
    r.verdict = combine(a.verdict, b.verdict);
    r.alpha = std::move(a.witness);
    r.beta = std::move(b.witness);
    if (a.verdict == Verdict::no) r.reason = "s_a outside the field generated by K0";
    else if (b.verdict == Verdict::no) r.reason = "s_b outside the field generated by L0";
    else if (r.verdict == Verdict::unknown) r.reason = "torus search exhausted the bound";
    return r;
}

} // namespace

Psp4Result membership_psp4(const Mat4 &g, const Psp4Data &d, unsigned bound) {
    const Bruhat4 b = sp4_bruhat(g);
    if (auto why = unipotent_failure(b, d); !why.empty()) return {Verdict::no, why, std::nullopt, std::nullopt};
    return torus_verdict(b.tau, d, bound);
}

bool torus_normalizer_check(const RatFunc &s_alpha, const RatFunc &s_beta, const Psp4Data &d) {
    if (s_alpha.is_zero() || s_beta.is_zero()) throw FieldError("torus coordinates must be nonzero");
    return d.K0_stabilizer().contains(s_beta);
}

// ---------------------------------------------------------------- T PSp4(L0,K0)

Sp4Group::Sp4Group(const M4Structure &M)
    : data_(M.K, M.spec, M.L0_codim1, M.K0_codim1), fields_(derive_fields({RSpace(M.K, "K2", {}, {M.K.one()}), data_.spaces().L0, data_.spaces().K0})) {
    for (const auto &g : M.T) {
        if (!(slot_factor(g.h, 0) == g.on_K0) || !(slot_factor(g.h, 3) == g.on_L0))
            throw SpecError("T", "action of (" + M.K.render(g.h.s_alpha) + ", " + M.K.render(g.h.s_beta) +
                                     ") does not match the exponent table");
        if (!torus_normalizer_check(g.h.s_alpha, g.h.s_beta, data_))
            throw SpecError("T", "s_b = " + M.K.render(g.h.s_beta) + " does not stabilize K0");
        T_.push_back(g.h);
    }
}

RatFunc Sp4Group::mu(const RatFunc &a, const RatFunc &b) const {
    const auto &K0 = data_.spaces().K0;
    if (!K0.contains(a) || !K0.contains(b)) throw FieldError("mu is defined on K0");
    return a * a * b;
}

Psp4Result Sp4Group::member(const Mat4 &g, unsigned bound) const {
    const Bruhat4 b = sp4_bruhat(g);
    if (auto why = unipotent_failure(b, data_); !why.empty()) return {Verdict::no, why, std::nullopt, std::nullopt};
    std::size_t combos = 1;
    for (std::size_t i = 0; i < T_.size(); ++i) combos *= 3;
    bool any_unknown = false;
    Psp4Result last;
    for (std::size_t c = 0; c < combos; ++c) {
        TorusElement2 h = b.tau;
        std::size_t code = c;
        for (const auto &t : T_) {
            const int e = static_cast<int>(code % 3) - 1;
            code /= 3;
            h.s_alpha *= t.s_alpha.pow(-e);
            h.s_beta *= t.s_beta.pow(-e);
        }
        Psp4Result r = torus_verdict(h, data_, bound);
        if (r.verdict == Verdict::yes) return r;
        any_unknown = any_unknown || r.verdict == Verdict::unknown;
        last = std::move(r);
    }
    if (any_unknown) return {Verdict::unknown, "torus part not resolved against T", std::nullopt, std::nullopt};
    last.reason = "torus part outside T T0 for every tried T element";
    return last;
}

Sp4Group build_group_from_M(const M4Structure &M) { return Sp4Group(M); }

TorusElement2 perfectness_torus(const FunctionField &K, std::size_t slot, const RatFunc &t) {
    if (slot >= 4) throw FieldError("Sp4 slot out of range");
    if (slot == 0 || slot == 1) return {t, K.one()};
    return {t, t * t};
}

RatFunc sp4_perfectness_witness(std::size_t slot, const RatFunc &s, const TorusElement2 &h) {
    if (slot >= 4) throw FieldError("Sp4 slot out of range");
    const RatFunc f = slot_factor(h, slot);
    if (f.is_one()) throw FieldError("the torus element acts trivially on this root group");
    const RatFunc sp = s / (one_like(f) - f.inverse());
    const FunctionField K(2, s.nvars());
    const Sp4Root r = positive_root(slot);
    if (!(commutator(torus4(K, h), chevalley_gen(K, r, sp)) == chevalley_gen(K, r, s)))
        throw FieldError("perfectness witness failed verification");
    return sp;
}

} // namespace exotic

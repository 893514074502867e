#include "exotic/unipotent.hpp"

#include <cctype>

namespace exotic {

RootDatum2 RootDatum2::g2(const FunctionField &K, const std::vector<RatFunc> &k_gens) {
    if (K.p() != 3) throw SpecError("g2", "the G2 relations are the characteristic 3 ones");
    if (!is_p_independent(K, k_gens)) throw SpecError("g2", "generators of k must be p-independent");
    RootDatum2 d(RootKind::g2, K);
    // Exponents are the Cartan integers <gamma, alpha^v>, <gamma, beta^v>.
    d.slots_ = {{"a", false, "K", {2, -1}},      {"3a+b", true, "k", {3, -1}}, {"2a+b", false, "K", {1, 0}},
                {"3a+2b", true, "k", {0, 1}},   {"a+b", false, "K", {-1, 1}}, {"b", true, "k", {-3, 2}}};
    auto k = std::make_shared<const KpSpace>(KpSpace::field(K, k_gens));
    for (const auto &s : d.slots_) d.domains_.push_back(s.long_root ? k : nullptr);
    return d;
}

RootDatum2 RootDatum2::c2(const FunctionField &K, const IndifferentSpec &spec) {
    if (K.p() != 2) throw SpecError("c2", "the C2 relation is the characteristic 2 one");
    const auto rep = validate_indifferent(K, spec);
    if (!rep.ok()) throw SpecError("c2", "indifferent set does not validate");
    auto sp = resolve_indifferent(K, spec);
    RootDatum2 d(RootKind::c2, K);
    d.slots_ = {{"a", false, "K0", {2, -1}}, {"2a+b", true, "L0", {2, 0}},
                {"a+b", false, "K0", {0, 1}}, {"b", true, "L0", {-2, 2}}};
    auto L0 = std::make_shared<const KpSpace>(sp.L0.space());
    auto K0 = std::make_shared<const KpSpace>(sp.K0.space());
    d.domains_ = {K0, L0, K0, L0};
    return d;
}

bool RootDatum2::in_domain(std::size_t slot, const RatFunc &x) const {
    const auto &D = domains_.at(slot);
    return !D || D->contains(x);
}

const KpSpace *RootDatum2::domain_space(std::size_t slot) const { return domains_.at(slot).get(); }

UWord RootDatum2::relation(std::size_t i, std::size_t j, const RatFunc &b, const RatFunc &c) const {
    if (i >= j) throw FieldError("relation needs i < j");
    if (kind_ == RootKind::g2) {
        // [x1(a),x5(b)] = x3(-ab), [x2(t),x6(u)] = x4(tu),
        // [x1(a),x6(t)] = x2(-t a^3) x3(t a^2) x4(t^2 a^3) x5(-t a)
        if (i == 0 && j == 4) return {{2, -(b * c)}};
        if (i == 1 && j == 5) return {{3, b * c}};
        if (i == 0 && j == 5) {
            const RatFunc a2 = b * b, a3 = a2 * b;
            return {{1, -(c * a3)}, {2, c * a2}, {3, c * c * a3}, {4, -(c * b)}};
        }
        return {};
    }
    // [x1(t),x4(a)] = x2(t^2 a) x3(t a)
    if (i == 0 && j == 3) return {{1, b * b * c}, {2, b * c}};
    return {};
}

bool UElement::is_identity() const { return is_zero_vec(coords); }

UElement u_identity(const RootDatum2 &d) { return UElement{Vec(d.size(), d.field().zero())}; }

UElement u_gen(const RootDatum2 &d, std::size_t slot, const RatFunc &t) {
    if (slot >= d.size()) throw FieldError("slot out of range");
    UElement x = u_identity(d);
    x.coords[slot] = t;
    return x;
}

namespace {

// c := c * x_j(b).  The tail x_{j+1}..x_n is moved right past x_j(b):
// tail x_j(b) = x_j(b) prod_k x_k(c_k) [x_k(c_k), x_j(b)].  Relation values
// lie in slots > j, so the recursion only ever moves to higher slots.
void mul_gen(const RootDatum2 &d, Vec &c, std::size_t j, const RatFunc &b) {
    if (b.is_zero()) return;
    UWord tail;
    for (std::size_t k = j + 1; k < c.size(); ++k)
        if (!c[k].is_zero()) {
            tail.push_back({k, c[k]});
            c[k] = d.field().zero();
        }
    c[j] += b;
    for (const auto &[k, ck] : tail) {
        mul_gen(d, c, k, ck);
        const UWord w = d.relation(j, k, b, ck); // [x_j, x_k]; we need its inverse
        for (auto it = w.rbegin(); it != w.rend(); ++it) mul_gen(d, c, it->first, -it->second);
    }
}

void require_domain(const RootDatum2 &d, const UElement &x, const char *what) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d.in_domain(i, x.coords.at(i)))
            throw InvariantError(std::string(what) + ": slot " + std::to_string(i + 1) + " coordinate " +
                                 d.field().render(x.coords[i]) + " is outside " + d.slots()[i].domain);
}

} // namespace

UElement u_from_word(const RootDatum2 &d, const UWord &w) {
    UElement x = u_identity(d);
    for (const auto &[s, t] : w) {
        if (s >= d.size()) throw FieldError("slot out of range");
        mul_gen(d, x.coords, s, t);
    }
    return x;
}

bool u_in_domain(const RootDatum2 &d, const UElement &x) {
    if (x.coords.size() != d.size()) return false;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d.in_domain(i, x.coords[i])) return false;
    return true;
}

UElement u_mult(const RootDatum2 &d, const UElement &x, const UElement &y) {
    require_domain(d, x, "u_mult input");
    require_domain(d, y, "u_mult input");
    UElement r = x;
    for (std::size_t j = 0; j < d.size(); ++j) mul_gen(d, r.coords, j, y.coords[j]);
    require_domain(d, r, "u_mult result");
    return r;
}

UElement u_inverse(const RootDatum2 &d, const UElement &x) {
    UElement r = u_identity(d);
    for (std::size_t j = d.size(); j-- > 0;) mul_gen(d, r.coords, j, -x.coords.at(j));
    return r;
}

UElement u_commutator(const RootDatum2 &d, const UElement &x, const UElement &y) {
    return u_mult(d, u_mult(d, u_inverse(d, x), u_inverse(d, y)), u_mult(d, x, y));
}

namespace {

bool zero_at(const UElement &x, std::initializer_list<std::size_t> slots) {
    for (auto s : slots)
        if (!x.coords.at(s).is_zero()) return false;
    return true;
}

// Parameters u_first = x1(1), u_last = x_n(1).
std::pair<UElement, UElement> end_params(const RootDatum2 &d) {
    return {u_gen(d, 0, d.field().one()), u_gen(d, d.size() - 1, d.field().one())};
}

bool center_by_coords(const RootDatum2 &d, const UElement &x) {
    return d.kind() == RootKind::g2 ? zero_at(x, {0, 1, 4, 5}) : zero_at(x, {0, 3});
}

} // namespace

bool center_member(const RootDatum2 &d, const UElement &x) {
    const bool by_coords = center_by_coords(d, x);
    const auto [u1, un] = end_params(d);
    const bool by_comm = u_commutator(d, x, u1).is_identity() && u_commutator(d, x, un).is_identity();
    if (by_coords != by_comm) throw InvariantError("center: coordinate and commutator tests disagree");
    return by_coords;
}

bool z2_member(const RootDatum2 &d, const UElement &x) {
    if (d.kind() != RootKind::g2) throw SpecError("z2", "second center is only tabulated for G2");
    const bool by_coords = zero_at(x, {0, 5});
    const auto [u1, u6] = end_params(d);
    const bool by_comm = center_by_coords(d, u_commutator(d, x, u1)) && center_by_coords(d, u_commutator(d, x, u6));
    if (by_coords != by_comm) throw InvariantError("Z2: coordinate and commutator tests disagree");
    return by_coords;
}

bool centralizer_u1_member(const RootDatum2 &d, const UElement &x) {
    const bool by_coords = d.kind() == RootKind::g2 ? zero_at(x, {4, 5}) : zero_at(x, {3});
    const bool by_comm = u_commutator(d, x, end_params(d).first).is_identity();
    if (by_coords != by_comm) throw InvariantError("centralizer of u1: coordinate and commutator tests disagree");
    return by_coords;
}

RatFunc torus_factor(const RootDatum2 &d, const TorusElement2 &h, std::size_t slot) {
    const auto &e = d.slots().at(slot).torus;
    return h.s_alpha.pow(e[0]) * h.s_beta.pow(e[1]);
}

UElement torus_act(const RootDatum2 &d, const TorusElement2 &h, const UElement &x) {
    if (h.s_alpha.is_zero() || h.s_beta.is_zero()) throw FieldError("torus coordinates must be nonzero");
    UElement r = x;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!r.coords[i].is_zero()) r.coords[i] *= torus_factor(d, h, i);
    return r;
}

bool torus_normalizes(const RootDatum2 &d, const TorusElement2 &h) {
    if (h.s_alpha.is_zero() || h.s_beta.is_zero()) throw FieldError("torus coordinates must be nonzero");
    for (std::size_t i = 0; i < d.size(); ++i) {
        const KpSpace *D = d.domain_space(i);
        if (!D) continue;
        const RatFunc f = torus_factor(d, h, i);
        for (const auto &b : D->basis())
            if (!D->contains(f * b) || !D->contains(f.inverse() * b)) return false;
    }
    return true;
}

UElement parse_uword(const RootDatum2 &d, std::string_view text) {
    UWord w;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip();
    if (i < text.size() && text[i] == '1') {
        ++i;
        skip();
        if (i != text.size()) throw ParseError("unexpected input after identity", i);
        return u_identity(d);
    }
    while (true) {
        skip();
        if (i >= text.size() || text[i] != 'x') throw ParseError("expected generator x<slot>(...)", i);
        ++i;
        std::size_t slot = 0, digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            slot = slot * 10 + static_cast<std::size_t>(text[i++] - '0');
            if (++digits > 3) throw ParseError("slot number too long", i);
        }
        if (digits == 0 || slot == 0 || slot > d.size()) throw ParseError("bad slot number", i);
        if (i >= text.size() || text[i] != '(') throw ParseError("expected '('", i);
        const std::size_t start = ++i;
        int depth = 1;
        while (i < text.size() && depth > 0) {
            if (text[i] == '(') ++depth;
            if (text[i] == ')') --depth;
            ++i;
        }
        if (depth != 0) throw ParseError("unbalanced parentheses", i);
        try {
            w.push_back({slot - 1, d.field().parse(text.substr(start, i - 1 - start))});
        } catch (const ParseError &e) {
            throw ParseError("bad coordinate", start + e.position());
        }
        skip();
        if (i == text.size()) break;
        if (text[i] != '*') throw ParseError("expected '*'", i);
        ++i;
    }
    return u_from_word(d, w);
}

std::string render(const RootDatum2 &d, const UElement &x) {
    std::string out;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i].is_zero()) continue;
        if (!out.empty()) out += "*";
        out += "x" + std::to_string(i + 1) + "(" + d.field().render(x.coords[i]) + ")";
    }
    return out.empty() ? "1" : out;
}

} // namespace exotic

#include "extfield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

namespace exotic::detail {

// ---------------------------------------------------------------- F_{p^k}

namespace {

// x^k + f(x) with f = digits of c; primitive iff x has order q - 1.
bool build_ext(ExtField &F, int p, int k, std::uint32_t c) {
    F.p = p;
    F.q = 1;
    for (int i = 0; i < k; ++i) F.q *= static_cast<std::uint32_t>(p);
    F.exp_.assign(F.q - 1, 0);
    F.log_.assign(F.q, 0);
    std::vector<std::uint32_t> low(k), cur(k, 0);
    for (int i = 0, cc = static_cast<int>(c); i < k; ++i, cc /= p) low[i] = cc % p;
    cur[0] = 1;
    auto encode = [&] {
        std::uint32_t r = 0;
        for (int i = k - 1; i >= 0; --i) r = r * p + cur[i];
        return r;
    };
    for (std::uint32_t i = 0; i < F.q - 1; ++i) {
        const std::uint32_t e = encode();
        if (i > 0 && e == 1) return false;
        F.exp_[i] = e;
        F.log_[e] = i;
        const std::uint32_t top = cur[k - 1];
        for (int j = k - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        for (int j = 0; j < k; ++j) cur[j] = (cur[j] + (p - top) * low[j]) % p;
    }
    return encode() == 1;
}

} // namespace

const ExtField &ext_field(int p) {
    static std::mutex mu;
    static std::map<int, ExtField> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    const int k = p == 2 ? 16 : p == 3 ? 10 : 7;
    ExtField F;
    for (std::uint32_t c = 1;; ++c)
        if (build_ext(F, p, k, c)) break;
    return cache.emplace(p, std::move(F)).first->second;
}

// ---------------------------------------------------------------- F_q[y]

void trim(UPoly &a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t ueval(const UPoly &a, std::uint32_t x, const ExtField &F) {
    std::uint32_t r = 0;
    for (std::size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
    return r;
}

UPoly umul(const UPoly &a, const UPoly &b, const ExtField &F) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    trim(r);
    return r;
}

std::pair<UPoly, UPoly> udivmod(UPoly a, const UPoly &b, const ExtField &F) {
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    UPoly q(a.size() - b.size() + 1, 0);
    const std::uint32_t li = F.inv(b.back());
    while (a.size() >= b.size()) {
        const std::size_t sh = a.size() - b.size();
        const std::uint32_t f = F.mul(a.back(), li);
        q[sh] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] = F.sub(a[sh + i], F.mul(f, b[i]));
        trim(a);
    }
    trim(q);
    return {q, a};
}

UPoly ugcd(UPoly a, UPoly b, const ExtField &F) {
    trim(a), trim(b);
    while (!b.empty()) {
        auto r = udivmod(std::move(a), b, F).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const std::uint32_t li = F.inv(a.back());
        for (auto &c : a) c = F.mul(c, li);
    }
    return a;
}

// ---------------------------------------------------------------- Brown's gcd

namespace {

using EPoly = std::map<Monomial, std::uint32_t>; // zero coefficients never stored

// Polynomial in the remaining variables with coefficients in F_q[y].
using RPoly = std::map<Monomial, UPoly>;

struct Ctx {
    const ExtField &F;
    std::mt19937_64 rng;
};

bool lex_greater(Monomial a, Monomial b, const std::vector<int> &vars) {
    for (int v : vars) {
        const auto ea = exponent(a, v), eb = exponent(b, v);
        if (ea != eb) return ea > eb;
    }
    return false;
}

Monomial lex_leading(const EPoly &a, const std::vector<int> &vars) {
    Monomial best = a.begin()->first;
    for (const auto &[m, c] : a)
        if (lex_greater(m, best, vars)) best = m;
    return best;
}

EPoly make_monic(EPoly a, const std::vector<int> &vars, const ExtField &F) {
    if (a.empty()) return a;
    const std::uint32_t li = F.inv(a.at(lex_leading(a, vars)));
    for (auto &[m, c] : a) c = F.mul(c, li);
    return a;
}

RPoly split(const EPoly &a, int y) {
    RPoly r;
    for (const auto &[m, c] : a) {
        UPoly &u = r[with_exponent(m, y, 0)];
        const auto e = exponent(m, y);
        if (u.size() <= e) u.resize(e + 1, 0);
        u[e] = c;
    }
    return r;
}

EPoly join(const RPoly &r, int y) {
    EPoly a;
    for (const auto &[m, u] : r)
        for (std::size_t e = 0; e < u.size(); ++e)
            if (u[e]) a[with_exponent(m, y, static_cast<std::uint32_t>(e))] = u[e];
    return a;
}

UPoly content(const RPoly &r, const ExtField &F) {
    UPoly g;
    for (const auto &[m, u] : r) {
        g = ugcd(std::move(g), u, F);
        if (g.size() == 1) break;
    }
    return g;
}

void divide_by(RPoly &r, const UPoly &c, const ExtField &F) {
    if (c.size() <= 1) return;
    for (auto &[m, u] : r) u = udivmod(u, c, F).first;
}

EPoly univariate_gcd(const EPoly &a, const EPoly &b, int x, const ExtField &F) {
    auto to_u = [&](const EPoly &e) {
        UPoly u;
        for (const auto &[m, c] : e) {
            const auto d = exponent(m, x);
            if (u.size() <= d) u.resize(d + 1, 0);
            u[d] = c;
        }
        return u;
    };
    const UPoly g = ugcd(to_u(a), to_u(b), F);
    EPoly out;
    for (std::size_t e = 0; e < g.size(); ++e)
        if (g[e]) out[with_exponent(0, x, static_cast<std::uint32_t>(e))] = g[e];
    return out;
}

std::uint32_t degree_in(const RPoly &r) {
    std::size_t d = 0;
    for (const auto &[m, u] : r) d = std::max(d, u.size() - 1);
    return static_cast<std::uint32_t>(d);
}

// Monic (lex in vars) gcd of nonzero a, b in F_q[vars].
std::optional<EPoly> brown(const EPoly &a, const EPoly &b, const std::vector<int> &vars, Ctx &ctx) {
    const ExtField &F = ctx.F;
    if (vars.size() == 1) return univariate_gcd(a, b, vars[0], F);

    const int y = vars.back();
    const std::vector<int> rest(vars.begin(), vars.end() - 1);
    RPoly ra = split(a, y), rb = split(b, y);
    const UPoly ca = content(ra, F), cb = content(rb, F);
    divide_by(ra, ca, F);
    divide_by(rb, cb, F);
    const UPoly c = ugcd(ca, cb, F);

    auto lead = [&](const RPoly &r) {
        Monomial best = r.begin()->first;
        for (const auto &[m, u] : r)
            if (lex_greater(m, best, rest)) best = m;
        return best;
    };
    const UPoly &la = ra.at(lead(ra)), &lb = rb.at(lead(rb));
    const UPoly gamma = ugcd(la, lb, F);
    const std::uint32_t bound = static_cast<std::uint32_t>(gamma.size() - 1) + std::min(degree_in(ra), degree_in(rb));

    auto eval = [&](const RPoly &r, std::uint32_t x) {
        EPoly out;
        for (const auto &[m, u] : r)
            if (auto v = ueval(u, x, F)) out[m] = v;
        return out;
    };
    auto with_content = [&](EPoly g) {
        RPoly r = split(g, y);
        for (auto &[m, u] : r) u = umul(u, c, F);
        return make_monic(join(r, y), vars, F);
    };

    RPoly H;
    UPoly M{1};
    Monomial H_lead = 0;
    std::uint32_t points = 0;
    std::uniform_int_distribution<std::uint32_t> dist(0, F.q - 1);
    for (std::uint32_t tries = 0; tries < 4 * bound + 64; ++tries) {
        const std::uint32_t alpha = dist(ctx.rng);
        if (ueval(la, alpha, F) == 0 || ueval(lb, alpha, F) == 0) continue;
        if (points > 0 && ueval(M, alpha, F) == 0) continue; // already used
        auto g = brown(eval(ra, alpha), eval(rb, alpha), rest, ctx);
        if (!g) return std::nullopt;
        const Monomial lm = lex_leading(*g, rest);
        if (lm == 0) {
            EPoly one;
            one[0] = 1;
            return with_content(std::move(one));
        }
        if (points > 0) {
            if (lex_greater(H_lead, lm, rest)) {
                H.clear(), M = {1}, points = 0;
            } else if (lex_greater(lm, H_lead, rest)) {
                continue;
            }
        }
        const std::uint32_t ga = ueval(gamma, alpha, F);
        for (auto &[m, v] : *g) v = F.mul(v, ga);
        // Newton step: H += (g - H(alpha)) M / M(alpha).
        const std::uint32_t mi = F.inv(ueval(M, alpha, F));
        for (const auto &[m, v] : *g) H.try_emplace(m);
        for (auto &[m, u] : H) {
            const auto it = g->find(m);
            const std::uint32_t target = it == g->end() ? 0 : it->second;
            const std::uint32_t diff = F.sub(target, ueval(u, alpha, F));
            if (!diff) continue;
            const std::uint32_t f = F.mul(diff, mi);
            if (u.size() < M.size()) u.resize(M.size(), 0);
            for (std::size_t i = 0; i < M.size(); ++i) u[i] = F.add(u[i], F.mul(f, M[i]));
            trim(u);
        }
        std::erase_if(H, [](const auto &kv) { return kv.second.empty(); });
        M = umul(M, UPoly{F.neg(alpha), 1}, F);
        H_lead = lm;
        if (++points > bound) {
            divide_by(H, content(H, F), F);
            return with_content(join(H, y));
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<Poly> modular_gcd(const Poly &a, const Poly &b) {
    const int p = a.p();
    const ExtField &F = ext_field(p);
    std::vector<int> vars;
    for (int v = 0; v < a.nvars(); ++v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) vars.push_back(v);
    if (vars.empty()) return std::nullopt;
    // Fewest-degree variable last: it is the one interpolated at the top.
    std::stable_sort(vars.begin(), vars.end(), [&](int u, int v) {
        return std::min(a.degree_in(u), b.degree_in(u)) > std::min(a.degree_in(v), b.degree_in(v));
    });
    auto to_e = [](const Poly &x) {
        EPoly e;
        for (const auto &t : x.terms()) e[t.mono] = t.coeff;
        return e;
    };
    Ctx ctx{F, std::mt19937_64(0x2545F4914F6CDD1DULL)};
    auto g = brown(to_e(a), to_e(b), vars, ctx);
    if (!g || g->empty()) return std::nullopt;
    std::vector<Term> ts;
    for (const auto &[m, c] : *g) {
        if (c >= static_cast<std::uint32_t>(p)) return std::nullopt; // not defined over F_p
        ts.push_back({m, c});
    }
    Poly G = Poly::from_terms(p, a.nvars(), std::move(ts)).monic();
    if (!try_divide(a, G) || !try_divide(b, G)) return std::nullopt;
    return G;
}

} // namespace exotic::detail

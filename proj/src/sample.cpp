#include "exotic/sample.hpp"

namespace exotic {

Poly random_poly(const FunctionField &K, Rng &rng, unsigned deg, unsigned terms) {
    std::uniform_int_distribution<unsigned> count(0, terms);
    std::uniform_int_distribution<unsigned> e(0, deg);
    std::uniform_int_distribution<unsigned> c(1, static_cast<unsigned>(K.p() - 1));
    std::vector<Term> ts;
    unsigned k = count(rng);
    for (unsigned i = 0; i < k; ++i) {
        Monomial m = 0;
        unsigned left = deg;
        for (int v = 0; v < K.nvars(); ++v) {
            unsigned x = std::min(e(rng), left);
            left -= x;
            m = with_exponent(m, v, x);
        }
        ts.push_back({m, c(rng)});
    }
    return Poly::from_terms(K.p(), K.nvars(), std::move(ts));
}

RatFunc random_polynomial(const FunctionField &K, Rng &rng, unsigned deg, unsigned terms) {
    return RatFunc(random_poly(K, rng, deg, terms));
}

RatFunc random_nonzero(const FunctionField &K, Rng &rng, unsigned deg, unsigned terms) {
    while (true) {
        RatFunc r = random_ratfunc(K, rng, deg, terms);
        if (!r.is_zero()) return r;
    }
}

RatFunc random_ratfunc(const FunctionField &K, Rng &rng, unsigned deg, unsigned terms) {
    Poly n = random_poly(K, rng, deg, terms);
    Poly d;
    do {
        d = random_poly(K, rng, deg, terms);
    } while (d.is_zero());
    return RatFunc(n, d);
}

RatFunc random_in(const KpSpace &S, Rng &rng, unsigned deg, unsigned terms) {
    const auto &K = S.field_ctx();
    RatFunc x = K.zero();
    for (const auto &b : S.basis()) x += random_polynomial(K, rng, deg, terms).frobenius() * b;
    return x;
}

RatFunc random_nonzero_in(const KpSpace &S, Rng &rng, unsigned deg, unsigned terms) {
    if (S.dim() == 0) throw FieldError("the zero space has no nonzero elements");
    while (true) {
        RatFunc x = random_in(S, rng, deg, terms);
        if (!x.is_zero()) return x;
    }
}

} // namespace exotic

#pragma once

// Seeded random elements for property checks.

#include "exotic/pbasis.hpp"

#include <random>

namespace exotic {

using Rng = std::mt19937_64;

// Polynomial with at most `terms` terms of total degree <= deg.
Poly random_poly(const FunctionField &K, Rng &rng, unsigned deg, unsigned terms = 3);
RatFunc random_polynomial(const FunctionField &K, Rng &rng, unsigned deg, unsigned terms = 3);
RatFunc random_nonzero(const FunctionField &K, Rng &rng, unsigned deg, unsigned terms = 3);
// num/den with den != 0.
RatFunc random_ratfunc(const FunctionField &K, Rng &rng, unsigned deg, unsigned terms = 3);
// sum c_j^p b_j over the basis of S with random polynomial c_j (may be 0).
RatFunc random_in(const KpSpace &S, Rng &rng, unsigned deg, unsigned terms = 2);
RatFunc random_nonzero_in(const KpSpace &S, Rng &rng, unsigned deg, unsigned terms = 2);

} // namespace exotic

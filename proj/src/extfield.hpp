#pragma once

// Internal: the extension fields F_{p^k} used for evaluation in gcd
// computations, and dense univariate polynomials over them.

#include "exotic/field.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace exotic::detail {

struct ExtField {
    int p = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> exp_, log_; // elements as base-p digit vectors

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (p == 2) return a ^ b;
        std::uint32_t r = 0, place = 1;
        while (a || b) {
            r += ((a % p + b % p) % p) * place;
            a /= p, b /= p, place *= p;
        }
        return r;
    }
    std::uint32_t neg(std::uint32_t a) const {
        if (p == 2) return a;
        std::uint32_t r = 0, place = 1;
        for (; a; a /= p, place *= p) r += ((p - a % p) % p) * place;
        return r;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (!a || !b) return 0;
        return exp_[(log_[a] + log_[b]) % (q - 1)];
    }
    std::uint32_t inv(std::uint32_t a) const { return exp_[(q - 1 - log_[a]) % (q - 1)]; }
};

// F_{p^k} with k = 16, 10, 7 for p = 2, 3, 5.
const ExtField &ext_field(int p);

using UPoly = std::vector<std::uint32_t>; // dense, index = degree

void trim(UPoly &a);
std::uint32_t ueval(const UPoly &a, std::uint32_t x, const ExtField &F);
UPoly umul(const UPoly &a, const UPoly &b, const ExtField &F);
// Quotient and remainder; b nonzero.
std::pair<UPoly, UPoly> udivmod(UPoly a, const UPoly &b, const ExtField &F);
// Monic gcd (empty when both are zero).
UPoly ugcd(UPoly a, UPoly b, const ExtField &F);

// gcd by evaluation and interpolation over F_{p^k}; nothing when the
// result cannot be confirmed by exact division (the caller falls back).
std::optional<Poly> modular_gcd(const Poly &a, const Poly &b);

} // namespace exotic::detail

#pragma once

// Unipotent groups U(k,K) given by root coordinates and commutator
// relations: G2 in characteristic 3 (six slots, short roots over K, long
// roots over k) and C2 in characteristic 2 (four slots over K0 / L0).
// Products are computed by collection into the normal form x1()x2()...xn().

#include "exotic/tower.hpp"

#include <array>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace exotic {

// A computed object contradicts a property that holds by construction.
class InvariantError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class RootKind { g2, c2 };

struct USlot {
    std::string root;          // e.g. "2a+b"
    bool long_root = false;
    std::string domain;        // "K", "k", "K0", "L0"
    std::array<int, 2> torus;  // exponents of (s_alpha, s_beta)
};

// Generator word: (slot, coordinate), slots 0-based.
using UWord = std::vector<std::pair<std::size_t, RatFunc>>;

class RootDatum2 {
  public:
    // p = 3, k = K^3[k_gens].
    static RootDatum2 g2(const FunctionField &K, const std::vector<RatFunc> &k_gens);
    // p = 2, slots U1 = a (K0), U2 = 2a+b (L0), U3 = a+b (K0), U4 = b (L0).
    static RootDatum2 c2(const FunctionField &K, const IndifferentSpec &spec);

    RootKind kind() const { return kind_; }
    const FunctionField &field() const { return K_; }
    std::size_t size() const { return slots_.size(); }
    const std::vector<USlot> &slots() const { return slots_; }

    bool in_domain(std::size_t slot, const RatFunc &x) const;
    // Basis over K^p of the slot's coordinate domain (empty when it is all of K).
    const KpSpace *domain_space(std::size_t slot) const;
    // [x_i(b), x_j(c)] for i < j, as an ascending word (empty: they commute).
    UWord relation(std::size_t i, std::size_t j, const RatFunc &b, const RatFunc &c) const;

  private:
    RootDatum2(RootKind kind, FunctionField K) : kind_(kind), K_(std::move(K)) {}

    RootKind kind_;
    FunctionField K_;
    std::vector<USlot> slots_;
    std::vector<std::shared_ptr<const KpSpace>> domains_; // null = K
};

struct UElement {
    Vec coords;
    bool operator==(const UElement &o) const = default;
    bool is_identity() const;
};

UElement u_identity(const RootDatum2 &d);
UElement u_gen(const RootDatum2 &d, std::size_t slot, const RatFunc &t);
UElement u_from_word(const RootDatum2 &d, const UWord &w);

bool u_in_domain(const RootDatum2 &d, const UElement &x);
// Throws InvariantError if an input or the result leaves the slot domains.
UElement u_mult(const RootDatum2 &d, const UElement &x, const UElement &y);
UElement u_inverse(const RootDatum2 &d, const UElement &x);
UElement u_commutator(const RootDatum2 &d, const UElement &x, const UElement &y); // x^-1 y^-1 x y

// Coordinate tests, cross-checked against the commutator characterizations
// (Z: commutes with the end parameters; Z2: commutators land in Z).
bool center_member(const RootDatum2 &d, const UElement &x);
bool z2_member(const RootDatum2 &d, const UElement &x); // G2 only
// C_U(x1(1)) by coordinates: G2 gives U1 U2 Z, C2 gives U1 Z.
bool centralizer_u1_member(const RootDatum2 &d, const UElement &x);

struct TorusElement2 {
    RatFunc s_alpha, s_beta;
};

RatFunc torus_factor(const RootDatum2 &d, const TorusElement2 &h, std::size_t slot);
UElement torus_act(const RootDatum2 &d, const TorusElement2 &h, const UElement &x);
// Every slot factor stabilizes that slot's domain.
bool torus_normalizes(const RootDatum2 &d, const TorusElement2 &h);

// "x1(expr)*x6(expr)*..." (or "1") multiplied out in the group.
UElement parse_uword(const RootDatum2 &d, std::string_view text);
std::string render(const RootDatum2 &d, const UElement &x);

} // namespace exotic

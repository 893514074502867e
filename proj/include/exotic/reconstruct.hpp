#pragma once

// Recovering the coordinate structure from a unipotent group that is only
// available as a black box.  Recovery code sees a GroupOracle and nothing
// else; every recovered operation is a commutator term in the designated
// parameters.  UnipotentOracle is the ground-truth implementation used to
// drive and check the recovery.

#include "exotic/sp4.hpp"
#include "exotic/unipotent.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace exotic {

class ReconstructionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Opaque element handle.
struct Elem {
    std::uint64_t id = 0;
};

class GroupOracle {
  public:
    virtual ~GroupOracle() = default;
    virtual Elem identity() const = 0;
    virtual Elem mul(Elem x, Elem y) const = 0;
    virtual Elem inv(Elem x) const = 0;
    virtual bool equal(Elem x, Elem y) const = 0;
    // Designated root subgroups (0-based slots) and their parameters x_i(1).
    virtual std::vector<std::size_t> designated() const = 0;
    virtual Elem param(std::size_t slot) const = 0;
    virtual bool in_root_subgroup(std::size_t slot, Elem x) const = 0;
    virtual Elem sample_root(std::size_t slot, std::uint64_t seed) const = 0;

    Elem comm(Elem x, Elem y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }
};

// U(k,K) from the unipotent module.  Handles index an internal table; the
// table is guarded so concurrent readers are safe.
class UnipotentOracle : public GroupOracle {
  public:
    UnipotentOracle(RootDatum2 d, std::vector<std::size_t> designated);

    Elem identity() const override;
    Elem mul(Elem x, Elem y) const override;
    Elem inv(Elem x) const override;
    bool equal(Elem x, Elem y) const override;
    std::vector<std::size_t> designated() const override { return designated_; }
    Elem param(std::size_t slot) const override;
    bool in_root_subgroup(std::size_t slot, Elem x) const override;
    Elem sample_root(std::size_t slot, std::uint64_t seed) const override;

    // Ground-truth side, not part of the oracle interface.
    Elem make(const UElement &x) const;
    UElement coords(Elem x) const;
    const RootDatum2 &datum() const { return d_; }

  private:
    void require_designated(std::size_t slot) const;

    RootDatum2 d_;
    std::vector<std::size_t> designated_;
    mutable std::mutex mu_;
    mutable std::deque<UElement> store_;
};

// Forwards to an inner oracle but multiplies every product of two
// non-identity elements by an extra generator: a negative control.
class CorruptedOracle : public GroupOracle {
  public:
    CorruptedOracle(const UnipotentOracle &inner, std::size_t slot) : in_(inner), slot_(slot) {}
    Elem identity() const override { return in_.identity(); }
    Elem mul(Elem x, Elem y) const override;
    Elem inv(Elem x) const override { return in_.inv(x); }
    bool equal(Elem x, Elem y) const override { return in_.equal(x, y); }
    std::vector<std::size_t> designated() const override { return in_.designated(); }
    Elem param(std::size_t slot) const override { return in_.param(slot); }
    bool in_root_subgroup(std::size_t slot, Elem x) const override { return in_.in_root_subgroup(slot, x); }
    Elem sample_root(std::size_t slot, std::uint64_t seed) const override { return in_.sample_root(slot, seed); }

  private:
    const UnipotentOracle &in_;
    std::size_t slot_;
};

enum class Modulus { Z, Z2, U2, U3 };

struct CosetElem {
    Elem rep;
    Modulus modulus;
};

// x == y modulo the subgroup, using commutator tests only (Z: commutes with
// the two end parameters; Z2: both commutators lie in Z) or the designated
// root subgroup predicate (U2, U3; 0-based slots 1 and 2).
bool coset_equal(const GroupOracle &o, const CosetElem &x, const CosetElem &y);
bool in_center(const GroupOracle &o, Elem x);

// G2, parameters u1 = x1(1), u6 = x6(1).  K is carried by U1 (arguments) and
// U3 (values), k by U6 (arguments) and U4 (values).
class G2Recovered {
  public:
    explicit G2Recovered(const GroupOracle &o);

    Elem add(Elem x, Elem y) const { return o_.mul(x, y); }
    Elem m2(Elem a, Elem t) const;      // [[a, t], u6]: U1 x U6 -> U4, x4(-t a^3)
    Elem m5(Elem a, Elem t) const;      // [[a, t], u1]: U1 x U6 -> U3, x3(-t a)
    Elem from_U1(Elem a) const;         // m5(a, u6^-1) = x3(a)
    Elem from_U6(Elem t) const;         // m2(u1^-1, t) = x4(t)
    Elem embed(Elem t) const;           // k -> K: m5(u1^-1, t) = x3(t)
    Elem xi(Elem a) const;              // m2(a, u6^-1) = x4(a^3)
    Elem mul(Elem a, Elem b) const;     // [[b, u6^-1], a] = x3(a b)
    // m2(a, t) == -xi(c): the defining condition for c = a b when t = xi(b).
    bool mul_law(Elem a, Elem t, Elem c) const;

    const GroupOracle &oracle() const { return o_; }

  private:
    const GroupOracle &o_;
    Elem u1_, u6_, u1i_, u6i_;
};

// Runs the recovery together with sampled consistency checks (linearity of
// the induced maps, centrality of the values); throws ReconstructionError on
// an inconsistent oracle.
G2Recovered g2_recover(const GroupOracle &o, std::size_t samples = 8, std::uint64_t seed = 1);

// C2 (char 2), parameters u_i = x_i(1).  K0 is carried by U1 (arguments) and
// Z mod U2 (values, the U3 component); L0 by U4 and Z mod U3.
class C2Recovered {
  public:
    explicit C2Recovered(const GroupOracle &o);

    Elem add(Elem x, Elem y) const { return o_.mul(x, y); }
    Elem m2(Elem t, Elem a) const { return o_.comm(t, a); } // read mod U3: x2(t^2 a)
    Elem m3(Elem t, Elem a) const { return o_.comm(t, a); } // read mod U2: x3(t a)
    CosetElem k0_value(Elem t) const;  // [t, u4] mod U2 = x3(t)
    CosetElem l0_value(Elem a) const;  // [u1, a] mod U3 = x2(a)
    CosetElem embed(Elem a) const;     // L0 -> K0: [u1, a] mod U2 = x3(a)
    CosetElem square(Elem t) const;    // [t, u4] mod U3 = x2(t^2)
    // w in U4 with [u1, w] == [x, u4] mod U3, i.e. w carries the square of x.
    bool is_square_witness(Elem x, Elem w) const;
    // a * b = m3(b, a^2) = a^2 b, given the witness w for a^2; nothing if w fails.
    std::optional<CosetElem> star(Elem a, Elem b, Elem w) const;
    // K0 value z lies in L0, witnessed by w in U4 with embed(w) == z.
    bool l0_member(const CosetElem &z, Elem w) const;

    const GroupOracle &oracle() const { return o_; }

  private:
    const GroupOracle &o_;
    Elem u1_, u4_;
};

C2Recovered c2_recover(const GroupOracle &o, std::size_t samples = 8, std::uint64_t seed = 1);

struct RecoveryReport {
    std::string kind;
    std::size_t instances = 0;
    std::size_t checks = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return mismatches.empty(); }
    std::string to_json() const;
};

// n random instances compared exactly against the coordinates behind
// `truth`; `used` is the oracle recovery runs on (normally truth itself).
RecoveryReport verify_g2(const UnipotentOracle &truth, const GroupOracle &used, std::size_t n, std::uint64_t seed);
RecoveryReport verify_c2(const UnipotentOracle &truth, const GroupOracle &used, std::size_t n, std::uint64_t seed);

// Sampling evidence for U_r = CC(U_r) in T PSp_4(L0,K0).  C(U_r) is
// sampled by root elements and coroot-torus elements that commute with
// sampled elements of U_r; candidates that commute with all of those must
// lie in U_r.  Evidence, not proof.
struct CCReport {
    std::string root;
    std::size_t centralizer_gens = 0;
    std::size_t candidates = 0;
    std::size_t passed = 0;        // commute with every sampled generator of C(U_r)
    std::size_t in_root_group = 0; // candidates lying in U_r(L0 or K0)
    std::map<std::string, std::array<std::size_t, 2>> by_kind; // kind -> {tried, passed}
    std::vector<std::string> violations; // passed but outside U_r
    bool confirms() const { return violations.empty(); }
    std::string to_json() const;
};

CCReport cc_experiment(Sp4Root root, const Sp4Group &ctx, std::size_t samples, std::uint64_t seed);

} // namespace exotic

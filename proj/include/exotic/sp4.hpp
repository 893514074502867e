#pragma once

// Sp_4(K) in characteristic 2 (= PSp_4(K)), realized on K^4 with the
// antidiagonal form J = antidiag(1,1,1,1).  Root subgroups, the Bruhat
// normal form, membership in PSp_4(L0,K0) and the group T PSp_4(L0,K0)
// built from an indifferent set.
//
// Positive root groups (E_ij matrix units, 1-based):
//   x_a(t)    = 1 + t(E12 + E34)      slot 1, short, K0
//   x_2a+b(t) = 1 + t E14             slot 2, long,  L0
//   x_a+b(t)  = 1 + t(E13 + E24)      slot 3, short, K0
//   x_b(t)    = 1 + t E23             slot 4, long,  L0
// Negative roots are the transposes.  h(s_a, s_b) = a^v(s_a) b^v(s_b) =
// diag(s_a, s_b/s_a, s_a/s_b, 1/s_a), which scales the slots by the C2
// exponent table of the unipotent module.

#include "exotic/rank1.hpp"
#include "exotic/unipotent.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace exotic {

struct Mat4 {
    std::array<RatFunc, 16> e;

    static Mat4 identity(const FunctionField &K);
    // Checks the form; throws FieldError otherwise.
    static Mat4 make(std::array<RatFunc, 16> e);

    const RatFunc &operator()(int i, int j) const { return e[4 * i + j]; }
    RatFunc &operator()(int i, int j) { return e[4 * i + j]; }

    Mat4 operator*(const Mat4 &o) const;
    Mat4 transpose() const;
    Mat4 inverse() const; // J g^T J, valid for symplectic g
    bool is_symplectic() const;
    bool operator==(const Mat4 &o) const = default;
};

Mat4 commutator(const Mat4 &x, const Mat4 &y); // x^-1 y^-1 x y
// "m11;m12;...;m44" (row-major)
Mat4 parse_mat4(const FunctionField &K, std::string_view text);
std::string render(const FunctionField &K, const Mat4 &g);

enum class Sp4Root { a, tapb, apb, b, neg_a, neg_tapb, neg_apb, neg_b };

struct Sp4RootInfo {
    const char *name;
    bool long_root;
    bool positive;
    std::size_t slot; // 0-based slot of the root or of its opposite
};
const Sp4RootInfo &root_info(Sp4Root r);
Sp4Root positive_root(std::size_t slot);
Sp4Root negative_root(std::size_t slot);
std::optional<Sp4Root> parse_root(std::string_view name);

Mat4 chevalley_gen(const FunctionField &K, Sp4Root r, const RatFunc &t);

// Weyl group, ids 0..7: e, a, b, ab, ba, aba, bab, abab (= w0).
constexpr int kWeylOrder = 8;
const char *weyl_name(int w);
// Product of n_a = x_a(1) x_-a(1) x_a(1) and n_b along the word.
Mat4 weyl_rep(const FunctionField &K, int w);
// Positive slots r with w(r) < 0, i.e. n_w x_r n_w^-1 lower triangular.
std::vector<std::size_t> weyl_inversions(int w);

Mat4 torus4(const FunctionField &K, const TorusElement2 &h);
// x_1(c1) x_2(c2) x_3(c3) x_4(c4).
Mat4 unipotent4(const FunctionField &K, const UElement &x);
// Inverse of unipotent4; throws InvariantError if g is not of that shape.
UElement unipotent_coords(const FunctionField &K, const Mat4 &g);

// g = h(tau) u1 n_w u2 with u2 supported on weyl_inversions(w).
struct Bruhat4 {
    TorusElement2 tau;
    UElement u1;
    int w = 0;
    UElement u2;
    bool operator==(const Bruhat4 &o) const;
};

Bruhat4 sp4_bruhat(const Mat4 &g);
Mat4 assemble(const FunctionField &K, const Bruhat4 &b);
std::string to_json(const FunctionField &K, const Bruhat4 &b);

// An indifferent set with optional codimension-one data for the two tori.
class Psp4Data {
  public:
    Psp4Data(const FunctionField &K, const IndifferentSpec &spec, std::optional<Codim1> L0_codim1 = std::nullopt,
             std::optional<Codim1> K0_codim1 = std::nullopt);

    const FunctionField &field() const { return K_; }
    const IndifferentSpec &spec() const { return spec_; }
    const IndifferentSpaces &spaces() const { return sp_; }
    const TimmesfeldData &K0() const { return K0_; }
    const TimmesfeldData &L0() const { return L0_; }
    const KpSpace &K0_stabilizer() const { return stab_; }
    bool in_slot_domain(std::size_t slot, const RatFunc &x) const;
    bool in_domain(Sp4Root r, const RatFunc &x) const { return in_slot_domain(root_info(r).slot, x); }

  private:
    FunctionField K_;
    IndifferentSpec spec_;
    IndifferentSpaces sp_;
    TimmesfeldData K0_, L0_;
    KpSpace stab_;
};

struct Psp4Result {
    Verdict verdict = Verdict::unknown;
    std::string reason;
    std::optional<TorusWitness> alpha, beta; // s_a over K0, s_b over L0
};

Psp4Result membership_psp4(const Mat4 &g, const Psp4Data &d, unsigned bound);

// h(s_a, s_b) normalizes PSp_4(L0,K0) iff s_b K0 = K0.
bool torus_normalizer_check(const RatFunc &s_alpha, const RatFunc &s_beta, const Psp4Data &d);

// The structure (K0; L0, T, +, mu): T by generators together with their
// scaling factors on U_a (K0) and U_b (L0).
struct M4Structure {
    FunctionField K;
    IndifferentSpec spec;
    std::optional<Codim1> L0_codim1, K0_codim1;
    struct TorusGen {
        TorusElement2 h;
        RatFunc on_K0, on_L0;
    };
    std::vector<TorusGen> T;
};

class Sp4Group {
  public:
    explicit Sp4Group(const M4Structure &M);

    const Psp4Data &data() const { return data_; }
    const FunctionField &field() const { return data_.field(); }
    // Stabilizer fields of the chain K^2 <= L0 <= K0.
    const DerivedFields &fields() const { return fields_; }
    const std::vector<TorusElement2> &torus_gens() const { return T_; }

    Mat4 mul(const Mat4 &x, const Mat4 &y) const { return x * y; }
    Mat4 inv(const Mat4 &x) const { return x.inverse(); }
    RatFunc mu(const RatFunc &a, const RatFunc &b) const; // a^2 b on K0
    // Membership in T PSp_4(L0,K0): the torus part is tried against every
    // product of the T generators with exponents in {-1,0,1}.
    Psp4Result member(const Mat4 &g, unsigned bound) const;

  private:
    Psp4Data data_;
    DerivedFields fields_;
    std::vector<TorusElement2> T_;
};

Sp4Group build_group_from_M(const M4Structure &M);

// A torus element of the subgroup scaling `slot` by t^2: a^v(t) for the
// slots a, 2a+b and (a+b)^v(t) = h(t, t^2) for a+b, b.
TorusElement2 perfectness_torus(const FunctionField &K, std::size_t slot, const RatFunc &t);
// s' with [h, x_slot(s')] = x_slot(s); throws when h acts trivially on the slot.
RatFunc sp4_perfectness_witness(std::size_t slot, const RatFunc &s, const TorusElement2 &h);

} // namespace exotic

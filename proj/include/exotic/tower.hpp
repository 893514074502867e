#pragma once

// Subfield chains K^p <= K_1 <= ... <= K, additive groups R_i over them,
// and (weak) indifferent sets K^2 <= L0 <= K0 <= K.

#include "exotic/pbasis.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace exotic {

// Malformed specification; `where` names the offending level.
class SpecError : public std::runtime_error {
  public:
    SpecError(std::string where, std::string what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string &where() const { return where_; }

  private:
    std::string where_;
};

struct SubfieldSpec {
    std::string name;
    std::vector<RatFunc> gens; // K_i = K^p[gens]
};

struct RSpaceSpec {
    std::string name;
    std::string over; // subfield name; "Kp" is K^p itself
    std::vector<RatFunc> basis;
};

struct IndifferentSpec {
    std::vector<RatFunc> L0_basis;      // over K^2
    std::vector<RatFunc> K0_field_gens; // K0 is a space over K^2[gens]
    std::vector<RatFunc> K0_basis;
    bool weak = false;
};

struct TowerSpec {
    FunctionField K;
    std::vector<SubfieldSpec> subfields;
    std::vector<RSpaceSpec> rspaces;
    std::optional<IndifferentSpec> indifferent;
};

TowerSpec parse_tower_json(const std::string &text);
TowerSpec load_tower_file(const std::string &path);

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<Check> checks;
    std::map<std::string, std::size_t> dims;
    bool ok() const;
    void add(std::string name, bool pass, std::string detail = {});
    std::string to_json() const;
};

// Lambda coordinates of x over K^p[gens], or nothing when x is outside.
// Throws SpecError when gens are p-dependent.
std::optional<LambdaCoords> subfield_member(const FunctionField &K, const RatFunc &x, const SubfieldSpec &F);

// R = span_{K^p[field_gens]}(basis), resolved to explicit K^p-linear data.
class RSpace {
  public:
    RSpace(const FunctionField &K, std::string name, std::vector<RatFunc> field_gens, std::vector<RatFunc> basis,
           bool require_one = true);

    const std::string &name() const { return name_; }
    const FunctionField &ambient() const { return scalars_.field_ctx(); }
    const std::vector<RatFunc> &field_gens() const { return gens_; }
    const std::vector<RatFunc> &basis() const { return basis_; }
    const KpSpace &scalars() const { return scalars_; }
    const KpSpace &space() const { return space_; }

    bool contains(const RatFunc &x) const { return space_.contains(x); }
    // Unique scalar-field coordinates in the given basis.
    std::optional<Vec> member(const RatFunc &x) const;
    RatFunc combine(const Vec &coords) const;
    std::size_t dim() const { return basis_.size(); }

  private:
    std::string name_;
    std::vector<RatFunc> gens_;
    std::vector<RatFunc> basis_;
    KpSpace scalars_;
    KpSpace space_;
};

RSpace resolve_rspace(const TowerSpec &spec, const RSpaceSpec &r);
const SubfieldSpec *find_subfield(const TowerSpec &spec, const std::string &name);

std::optional<Vec> rspace_member(const RatFunc &x, const RSpace &R);

struct TowerOptions {
    std::size_t samples = 64;
    std::uint64_t seed = 1;
};

ValidationReport validate_tower(const TowerSpec &spec, const TowerOptions &opt = {});

// {a in K : aR <= R} (a field; contained in R since 1 in R).
SubfieldSpec stabilizer_field(const RSpace &R);
// K^p-basis of the stabilizer.
KpSpace stabilizer_space(const RSpace &R);

struct DerivedFields {
    std::vector<SubfieldSpec> fields;
    // K~ with K~^p = K_1: the first derived field, relabeled.
    SubfieldSpec tilde;
    bool tilde_relabeled = true;
};
DerivedFields derive_fields(const std::vector<RSpace> &chain);

ValidationReport validate_indifferent(const FunctionField &K, const IndifferentSpec &spec);

// The pieces of an indifferent set as K^p-spaces (p = 2).
struct IndifferentSpaces {
    RSpace L0;
    RSpace K0;
    KpSpace L0_field; // K^2[L0]
};
IndifferentSpaces resolve_indifferent(const FunctionField &K, const IndifferentSpec &spec);

} // namespace exotic

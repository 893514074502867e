#pragma once

// Seeded property suites over every module, one check per acceptance
// criterion, and the loaders for the shipped JSON configs.

#include "exotic/sp4.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace exotic {

// A tower/indifferent config plus the optional codimension-one data
// ("indifferent.L0.codim1" / "indifferent.K0.codim1": {"field_gens", "u"}).
struct LoadedConfig {
    TowerSpec tower;
    std::optional<Codim1> L0_codim1, K0_codim1;
};
LoadedConfig parse_config(const std::string &text);
LoadedConfig load_config(const std::string &path);
// Throws SpecError when the config has no indifferent block.
Psp4Data psp4_data(const LoadedConfig &c);
// G2 datum: p = 3, k = K^3[gens of the first subfield].
RootDatum2 g2_datum(const LoadedConfig &c);

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::string config_dir = "configs";
    std::size_t samples = 0; // 0: the full counts; otherwise a cap per sample loop
    unsigned bound = 2;
};

enum class Status { pass, fail, unknown };
const char *to_string(Status s);

struct SuiteCheck {
    std::string name;
    std::string title;
    Status status = Status::pass;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string detail;
    std::string counterexample; // first failing input, rendered
};

struct SuiteReport {
    std::vector<SuiteCheck> checks; // sorted by name
    bool ok() const;
    std::string to_json() const;
};

// Criteria 1..11; throws std::out_of_range for other ids.
SuiteCheck run_criterion(int id, const SuiteConfig &cfg);
constexpr int kCriteria = 11;
SuiteReport run_suite(const SuiteConfig &cfg);

} // namespace exotic

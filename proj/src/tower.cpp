#include "exotic/tower.hpp"
#include "exotic/sample.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace exotic {

using nlohmann::json;

// ---------------------------------------------------------------- config

namespace {

std::vector<RatFunc> parse_elems(const FunctionField &K, const json &arr, const std::string &where) {
    if (!arr.is_array()) throw SpecError(where, "expected a list of element strings");
    std::vector<RatFunc> out;
    for (const auto &e : arr) {
        if (!e.is_string()) throw SpecError(where, "elements must be strings");
        out.push_back(K.parse(e.get<std::string>()));
    }
    return out;
}

} // namespace

TowerSpec parse_tower_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    if (!j.contains("p") || !j.contains("vars")) throw SpecError("config", "missing \"p\" or \"vars\"");
    FunctionField K(j.at("p").get<int>(), j.at("vars").get<std::vector<std::string>>());
    TowerSpec spec{K, {}, {}, std::nullopt};
    if (j.contains("subfields"))
        for (const auto &s : j.at("subfields")) {
            auto name = s.at("name").get<std::string>();
            spec.subfields.push_back({name, parse_elems(K, s.value("gens", json::array()), name)});
        }
    if (j.contains("rspaces"))
        for (const auto &r : j.at("rspaces")) {
            auto name = r.at("name").get<std::string>();
            spec.rspaces.push_back({name, r.value("over", std::string("Kp")), parse_elems(K, r.at("basis"), name)});
        }
    if (j.contains("indifferent")) {
        const auto &ind = j.at("indifferent");
        IndifferentSpec is;
        is.L0_basis = parse_elems(K, ind.at("L0").at("basis"), "L0");
        is.K0_field_gens = parse_elems(K, ind.at("K0").value("over_field_gens", json::array()), "K0");
        is.K0_basis = parse_elems(K, ind.at("K0").at("basis"), "K0");
        is.weak = ind.value("weak", false);
        spec.indifferent = std::move(is);
    }
    return spec;
}

TowerSpec load_tower_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw SpecError(path, "cannot open config file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_tower_json(ss.str());
}

// ---------------------------------------------------------------- reports

bool ValidationReport::ok() const {
    for (const auto &c : checks)
        if (!c.pass) return false;
    return true;
}

void ValidationReport::add(std::string name, bool pass, std::string detail) {
    checks.push_back({std::move(name), pass, std::move(detail)});
}

std::string ValidationReport::to_json() const {
    json j;
    j["ok"] = ok();
    j["checks"] = json::array();
    for (const auto &c : checks) {
        json e{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}};
        if (!c.detail.empty()) e["detail"] = c.detail;
        j["checks"].push_back(e);
    }
    j["dims"] = dims;
    return j.dump(2);
}

// ---------------------------------------------------------------- membership

std::optional<LambdaCoords> subfield_member(const FunctionField &K, const RatFunc &x, const SubfieldSpec &F) {
    if (!is_p_independent(K, F.gens)) throw SpecError(F.name, "generators are p-dependent");
    auto l = lambda(K, F.gens, x);
    if (!l.defined) return std::nullopt;
    return l;
}

RSpace::RSpace(const FunctionField &K, std::string name, std::vector<RatFunc> field_gens, std::vector<RatFunc> basis,
               bool require_one)
    : name_(std::move(name)), gens_(std::move(field_gens)), basis_(std::move(basis)),
      scalars_(KpSpace::field(K, gens_)), space_(K) {
    if (require_one && std::find(basis_.begin(), basis_.end(), K.one()) == basis_.end())
        throw SpecError(name_, "basis must contain 1");
    for (const auto &b : basis_)
        for (const auto &f : scalars_.basis())
            if (!space_.add(f * b)) throw SpecError(name_, "basis is linearly dependent over its scalar field");
}

std::optional<Vec> RSpace::member(const RatFunc &x) const {
    auto c = space_.coords(x);
    if (!c) return std::nullopt;
    const std::size_t m = scalars_.dim();
    Vec out;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        RatFunc s = ambient().zero();
        for (std::size_t a = 0; a < m; ++a)
            if (!(*c)[j * m + a].is_zero()) s += (*c)[j * m + a].frobenius() * scalars_.basis()[a];
        out.push_back(s);
    }
    return out;
}

RatFunc RSpace::combine(const Vec &coords) const {
    if (coords.size() != basis_.size()) throw FieldError("coordinate count mismatch");
    RatFunc r = ambient().zero();
    for (std::size_t j = 0; j < coords.size(); ++j) r += coords[j] * basis_[j];
    return r;
}

std::optional<Vec> rspace_member(const RatFunc &x, const RSpace &R) { return R.member(x); }

const SubfieldSpec *find_subfield(const TowerSpec &spec, const std::string &name) {
    for (const auto &s : spec.subfields)
        if (s.name == name) return &s;
    return nullptr;
}

RSpace resolve_rspace(const TowerSpec &spec, const RSpaceSpec &r) {
    std::vector<RatFunc> gens;
    if (r.over != "Kp") {
        const auto *F = find_subfield(spec, r.over);
        if (!F) throw SpecError(r.name, "unknown subfield '" + r.over + "'");
        gens = F->gens;
    }
    return RSpace(spec.K, r.name, gens, r.basis);
}

// ---------------------------------------------------------------- stabilizer

KpSpace stabilizer_space(const RSpace &R) {
    const auto &K = R.ambient();
    const auto &E = R.space().basis();
    const std::size_t rows = K.degree_over_frobenius() * R.basis().size();
    std::vector<Vec> cols;
    cols.reserve(E.size());
    for (const auto &e : E) {
        Vec col;
        col.reserve(rows);
        for (const auto &b : R.basis()) {
            Vec r = R.space().residual(e * b);
            col.insert(col.end(), r.begin(), r.end());
        }
        cols.push_back(std::move(col));
    }
    KpSpace S(K);
    for (const auto &k : kernel(cols, rows)) {
        RatFunc s = K.zero();
        for (std::size_t j = 0; j < k.size(); ++j)
            if (!k[j].is_zero()) s += k[j].frobenius() * E[j];
        S.add(s);
    }
    return S;
}

SubfieldSpec stabilizer_field(const RSpace &R) {
    const KpSpace S = stabilizer_space(R);
    const auto &K = R.ambient();
    std::vector<RatFunc> candidates = K.vars();
    candidates.insert(candidates.end(), R.basis().begin(), R.basis().end());
    candidates.insert(candidates.end(), S.basis().begin(), S.basis().end());
    KpSpace F = KpSpace::field(K, {});
    SubfieldSpec out{"Stab(" + R.name() + ")", {}};
    for (const auto &c : candidates) {
        if (F.dim() == S.dim()) break;
        if (!S.contains(c)) continue;
        if (F.adjoin(c)) out.gens.push_back(c);
    }
    if (F.dim() != S.dim()) throw SpecError(R.name(), "stabilizer is not a field");
    return out;
}

DerivedFields derive_fields(const std::vector<RSpace> &chain) {
    DerivedFields out;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (i > 0) {
            for (const auto &a : chain[i - 1].space().basis())
                for (const auto &b : chain[i].space().basis())
                    if (!chain[i].contains(a * b))
                        throw SpecError(chain[i].name(), "R_{i-1} * R_i is not contained in R_i");
        }
        auto F = stabilizer_field(chain[i]);
        F.name = "K" + std::to_string(i);
        out.fields.push_back(std::move(F));
    }
    if (!out.fields.empty()) {
        out.tilde = out.fields.size() > 1 ? out.fields[1] : out.fields[0];
        out.tilde.name = "K~";
    }
    return out;
}

// ---------------------------------------------------------------- validation

namespace {

std::string render_list(const FunctionField &K, const std::vector<RatFunc> &xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + K.render(xs[i]);
    return s + "}";
}

RatFunc random_scalar(const KpSpace &F, Rng &rng) {
    const auto &K = F.field_ctx();
    RatFunc s = K.zero();
    for (const auto &b : F.basis()) s += random_polynomial(K, rng, 1, 2).frobenius() * b;
    return s;
}

bool independent_over(const KpSpace &F, const std::vector<RatFunc> &xs) {
    KpSpace span(F.field_ctx());
    for (const auto &x : xs)
        for (const auto &f : F.basis())
            if (!span.add(f * x)) return false;
    return true;
}

} // namespace

ValidationReport validate_tower(const TowerSpec &spec, const TowerOptions &opt) {
    ValidationReport rep;
    const auto &K = spec.K;
    rep.dims["K/Kp"] = K.degree_over_frobenius();
    Rng rng(opt.seed);

    std::vector<KpSpace> fields;
    for (std::size_t i = 0; i < spec.subfields.size(); ++i) {
        const auto &s = spec.subfields[i];
        rep.add(s.name + ".p_independent", is_p_independent(K, s.gens), render_list(K, s.gens));
        fields.push_back(KpSpace::field(K, s.gens));
        rep.dims[s.name + "/Kp"] = fields.back().dim();
        if (i > 0) {
            bool inc = true;
            for (const auto &g : spec.subfields[i - 1].gens) inc = inc && fields.back().contains(g);
            rep.add(spec.subfields[i - 1].name + ".subset_" + s.name, inc);
        }
    }

    for (const auto &r : spec.rspaces) {
        std::vector<RatFunc> gens;
        std::size_t level = spec.subfields.size();
        if (r.over != "Kp") {
            const SubfieldSpec *F = nullptr;
            for (std::size_t i = 0; i < spec.subfields.size(); ++i)
                if (spec.subfields[i].name == r.over) {
                    F = &spec.subfields[i];
                    level = i;
                }
            if (!F) throw SpecError(r.name, "unknown subfield '" + r.over + "'");
            gens = F->gens;
        } else {
            level = static_cast<std::size_t>(-1);
        }
        RSpace R(K, r.name, gens, r.basis);
        rep.dims[r.name + "/" + r.over] = R.dim();

        // R_i <= K_{i+1} (next subfield in the chain, or K itself).
        const std::size_t next = level + 1;
        std::string next_name = "K";
        std::size_t next_dim = K.degree_over_frobenius();
        bool inside = true;
        if (next < spec.subfields.size()) {
            next_name = spec.subfields[next].name;
            next_dim = fields[next].dim();
            for (const auto &b : R.basis()) inside = inside && fields[next].contains(b);
        }
        rep.add(r.name + ".subset_" + next_name, inside);
        rep.dims["[" + next_name + ":" + r.over + "]"] = next_dim / R.scalars().dim();

        // (1) stabilizer equals the scalar field.
        const KpSpace S = stabilizer_space(R);
        rep.add(r.name + ".condition1", S.dim() == R.scalars().dim(),
                "dim_Kp stabilizer = " + std::to_string(S.dim()) + ", dim_Kp " + r.over + " = " +
                    std::to_string(R.scalars().dim()));

        // (2) exact on the basis, sampled on random independent subsets.
        std::vector<RatFunc> rest;
        for (const auto &b : R.basis())
            if (!b.is_one()) rest.push_back(b);
        const bool basis_ok = is_p_independent(K, rest, gens);
        rep.add(r.name + ".condition2.basis", basis_ok, render_list(K, rest));
        std::size_t tested = 0, failed = 0;
        std::string witness;
        if (R.dim() > 1) {
            std::uniform_int_distribution<std::size_t> size(1, R.dim() - 1);
            for (std::size_t it = 0; it < opt.samples; ++it) {
                std::vector<RatFunc> C;
                const std::size_t k = size(rng);
                for (std::size_t m = 0; m < k; ++m) {
                    RatFunc c = K.zero();
                    for (const auto &b : R.basis()) c += random_scalar(R.scalars(), rng) * b;
                    C.push_back(c);
                }
                std::vector<RatFunc> with_one = C;
                with_one.push_back(K.one());
                if (!independent_over(R.scalars(), with_one)) continue;
                ++tested;
                if (!is_p_independent(K, C, gens)) {
                    ++failed;
                    if (witness.empty()) witness = render_list(K, C);
                }
            }
        }
        rep.add(r.name + ".condition2.sampled", failed == 0,
                std::to_string(tested) + " independent subsets tested" +
                    (witness.empty() ? std::string() : ", counterexample " + witness));
    }
    return rep;
}

// ---------------------------------------------------------------- indifferent sets

IndifferentSpaces resolve_indifferent(const FunctionField &K, const IndifferentSpec &spec) {
    if (K.p() != 2) throw SpecError("indifferent", "indifferent sets live in characteristic 2");
    RSpace L0(K, "L0", {}, spec.L0_basis, false);
    RSpace K0(K, "K0", spec.K0_field_gens, spec.K0_basis, false);
    KpSpace F = KpSpace::field(K, spec.L0_basis);
    return {std::move(L0), std::move(K0), std::move(F)};
}

ValidationReport validate_indifferent(const FunctionField &K, const IndifferentSpec &spec) {
    ValidationReport rep;
    std::optional<IndifferentSpaces> sp;
    try {
        sp.emplace(resolve_indifferent(K, spec));
        rep.add("structure", true);
    } catch (const SpecError &e) {
        rep.add("structure", false, e.what());
        return rep;
    }
    const auto &L0 = sp->L0;
    const auto &K0 = sp->K0;
    rep.dims["L0/K2"] = L0.space().dim();
    rep.dims["K0/K2"] = K0.space().dim();
    rep.dims["K2[L0]/K2"] = sp->L0_field.dim();

    rep.add("K2_subset_L0", L0.contains(K.one()));
    bool inc = true;
    for (const auto &l : L0.space().basis()) inc = inc && K0.contains(l);
    rep.add("L0_subset_K0", inc);

    bool l0_stable = true;
    std::string bad;
    for (const auto &r : K0.space().basis())
        for (const auto &l : L0.space().basis())
            if (l0_stable && !L0.contains(r * r * l)) {
                l0_stable = false;
                bad = K.render(r) + "^2*" + K.render(l);
            }
    rep.add("L0_stable_under_K0^2", l0_stable, bad);

    bool k0_stable = true;
    bad.clear();
    for (const auto &f : sp->L0_field.basis())
        for (const auto &k : K0.space().basis())
            if (k0_stable && !K0.contains(f * k)) {
                k0_stable = false;
                bad = K.render(f) + "*" + K.render(k);
            }
    rep.add("K0_stable_under_K2[L0]", k0_stable, bad);

    if (!spec.weak) {
        const KpSpace gen = KpSpace::field(K, K0.space().basis());
        rep.add("K0_generates_K", gen.dim() == K.degree_over_frobenius());
    }
    return rep;
}

} // namespace exotic

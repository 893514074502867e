// exotic: command-line front end.  Exit codes: 0 success, 1 a check or
// validation failed (or a config is missing/invalid), 2 parse/usage error.

#include "exotic/reconstruct.hpp"
#include "exotic/suite.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace exotic;
using nlohmann::json;

namespace {

struct Opts {
    int p = 2;
    std::string vars = "t,u,v";
    std::string config;
    std::uint64_t seed = 1;
    std::size_t samples = 0;
    unsigned bound = 2;
    std::string report;
};

// Raised for bad command-line content that CLI11 cannot see (exit 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::optional<LoadedConfig> config_of(const Opts &o) {
    if (o.config.empty()) return std::nullopt;
    return load_config(o.config);
}

FunctionField field_of(const Opts &o) {
    if (auto c = config_of(o)) return c->tower.K;
    return FunctionField(o.p, split(o.vars, ','));
}

// Writes the report file when asked and prints the JSON.
void emit(const Opts &o, const json &j) {
    const std::string text = j.dump(2);
    std::cout << text << "\n";
    if (!o.report.empty()) {
        std::ofstream out(o.report);
        if (!out) throw SpecError(o.report, "cannot write report");
        out << text << "\n";
    }
}

std::vector<RatFunc> parse_list(const FunctionField &K, const std::string &s) {
    if (s.empty()) return {};
    return K.parse_list(s, ',');
}

Mat2 parse_mat2(const FunctionField &K, const std::string &s) {
    const auto e = K.parse_list(s, ';');
    if (e.size() != 4) throw UsageError("a 2x2 matrix needs 4 ';'-separated entries");
    return Mat2::make(e[0], e[1], e[2], e[3]);
}

json witness_json(const FunctionField &K, const TorusWitness &w) {
    json a = json::array();
    for (const auto &[f, e] : w.factors) a.push_back({{"factor", K.render(f)}, {"exp", e}});
    return a;
}

// L from --L (a K^2-basis) or from the config's L0, with codim-1 data from
// --codim1 "gens|u" or the config.
TimmesfeldData timmesfeld_of(const Opts &o, const std::string &L, const std::string &codim1) {
    const auto cfg = config_of(o);
    const FunctionField K = field_of(o);
    std::vector<RatFunc> basis;
    std::optional<Codim1> c1;
    if (!L.empty()) {
        basis = parse_list(K, L);
    } else if (cfg && cfg->tower.indifferent) {
        basis = cfg->tower.indifferent->L0_basis;
        c1 = cfg->L0_codim1;
    } else {
        throw UsageError("give --L or a --config with an indifferent block");
    }
    if (!codim1.empty()) {
        const auto parts = split(codim1, '|');
        if (parts.size() != 2) throw UsageError("--codim1 expects \"gens|u\"");
        c1 = Codim1{parse_list(K, parts[0]), K.parse(parts[1])};
    }
    return TimmesfeldData(RSpace(K, "L", {}, basis), c1);
}

RootDatum2 datum_of(const Opts &o, const std::string &kind) {
    const auto cfg = config_of(o);
    const FunctionField K = field_of(o);
    if (kind == "g2") {
        if (cfg) return g2_datum(*cfg);
        return RootDatum2::g2(K, {K.var(0)});
    }
    if (kind != "c2") throw UsageError("--kind must be g2 or c2");
    if (cfg && cfg->tower.indifferent) return RootDatum2::c2(K, *cfg->tower.indifferent);
    if (K.nvars() < 2) throw UsageError("c2 without --config needs two variables");
    const auto t = K.var(0), u = K.var(1);
    return RootDatum2::c2(K, IndifferentSpec{{K.one(), t}, {t}, {K.one(), u}, false});
}

Psp4Data psp4_of(const Opts &o) {
    const auto cfg = config_of(o);
    if (!cfg) throw UsageError("sp4 member/torus-check need --config with an indifferent block");
    return psp4_data(*cfg);
}

TorusElement2 parse_torus(const FunctionField &K, const std::string &s) {
    const auto e = parse_list(K, s);
    if (e.size() != 2) throw UsageError("--torus expects \"s_alpha,s_beta\"");
    return {e[0], e[1]};
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact computations with exotic groups over function fields of characteristic p"};
    app.require_subcommand(1);
    Opts o;
    auto globals = [&](CLI::App *c) {
        c->add_option("-p", o.p, "characteristic (2, 3 or 5)")->check(CLI::IsMember({2, 3, 5}));
        c->add_option("--vars", o.vars, "comma-separated variable names");
        c->add_option("--config", o.config, "tower/indifferent JSON config (config directory for suite run)");
        c->add_option("--seed", o.seed, "random seed");
        c->add_option("--samples", o.samples, "sample count");
        c->add_option("--bound", o.bound, "search bound");
        c->add_option("--report", o.report, "also write the JSON report to this file");
    };
    int rc = 0;

    // field eval
    auto *field = app.add_subcommand("field", "field arithmetic")->require_subcommand(1);
    std::string expr;
    auto *feval = field->add_subcommand("eval", "parse and print in canonical form");
    feval->add_option("expr", expr)->required();
    globals(feval);
    feval->callback([&] {
        const auto K = field_of(o);
        const auto x = K.parse(expr);
        json j{{"value", K.render(x)}, {"frobenius", K.render(x.frobenius())}};
        if (auto r = x.pth_root()) j["pth_root"] = K.render(*r);
        else j["pth_root"] = nullptr;
        emit(o, j);
    });

    // lambda
    std::string a_list;
    auto *lam = app.add_subcommand("lambda", "lambda coordinates of b over K^p[a]");
    lam->add_option("--a", a_list, "comma-separated tuple a")->required();
    lam->add_option("b", expr)->required();
    globals(lam);
    lam->callback([&] {
        const auto K = field_of(o);
        const auto a = parse_list(K, a_list);
        const auto l = lambda(K, a, K.parse(expr));
        json c = json::array();
        for (const auto &x : l.coords) c.push_back(K.render(x));
        emit(o, {{"defined", l.defined}, {"coords", c}});
    });

    // tower / indifferent validate
    std::string file;
    auto *tower = app.add_subcommand("tower", "tower configs")->require_subcommand(1);
    auto *tval = tower->add_subcommand("validate", "validate a tower config");
    tval->add_option("file", file, "config file (or --config)");
    globals(tval);
    tval->callback([&] {
        const auto spec = load_config(file.empty() ? o.config : file).tower;
        const auto r = validate_tower(spec, {o.samples ? o.samples : 64, o.seed});
        emit(o, json::parse(r.to_json()));
        rc = r.ok() ? 0 : 1;
    });
    auto *indiff = app.add_subcommand("indifferent", "indifferent sets")->require_subcommand(1);
    auto *ival = indiff->add_subcommand("validate", "validate the indifferent block of a config");
    ival->add_option("file", file, "config file (or --config)");
    globals(ival);
    ival->callback([&] {
        const auto spec = load_config(file.empty() ? o.config : file).tower;
        if (!spec.indifferent) throw SpecError("config", "no \"indifferent\" block");
        const auto r = validate_indifferent(spec.K, *spec.indifferent);
        emit(o, json::parse(r.to_json()));
        rc = r.ok() ? 0 : 1;
    });

    // sl2
    std::string matrix, L, codim1, tau, s_str, t_str, torus;
    auto *sl2 = app.add_subcommand("sl2", "SL2(L)")->require_subcommand(1);
    auto *sbr = sl2->add_subcommand("bruhat", "Bruhat normal form");
    sbr->add_option("--matrix", matrix, "\"a;b;c;d\"")->required();
    globals(sbr);
    sbr->callback([&] {
        const auto K = field_of(o);
        const auto e = bruhat2(parse_mat2(K, matrix));
        std::cout << render(K, e) << "\n";
        if (!o.report.empty()) emit(o, {{"bruhat", render(K, e)}});
    });
    auto *smem = sl2->add_subcommand("member", "membership in T(L) SL2(L)");
    smem->add_option("--matrix", matrix, "\"a;b;c;d\"")->required();
    smem->add_option("--L", L, "K^2-basis of L");
    smem->add_option("--codim1", codim1, "\"field_gens|u\"");
    globals(smem);
    smem->callback([&] {
        const auto d = timmesfeld_of(o, L, codim1);
        const auto r = membership_sl2L(parse_mat2(d.ambient(), matrix), d, o.bound);
        json j{{"verdict", to_string(r.verdict)}};
        if (r.witness) j["witness"] = witness_json(d.ambient(), *r.witness);
        emit(o, j);
    });
    auto *swit = sl2->add_subcommand("witness", "torus witness: tau as a product of elements of L*");
    swit->add_option("tau", tau)->required();
    swit->add_option("--L", L, "K^2-basis of L");
    swit->add_option("--codim1", codim1, "\"field_gens|u\"");
    globals(swit);
    swit->callback([&] {
        const auto d = timmesfeld_of(o, L, codim1);
        const auto r = torus_membership(d.ambient().parse(tau), d, o.bound);
        json j{{"verdict", to_string(r.verdict)}};
        if (r.witness) j["witness"] = witness_json(d.ambient(), *r.witness);
        emit(o, j);
    });
    auto *sperf = sl2->add_subcommand("perfect", "s' with [h(t), a(s')] = a(s)");
    sperf->add_option("--s", s_str)->required();
    sperf->add_option("--t", t_str)->required();
    globals(sperf);
    sperf->callback([&] {
        const auto K = field_of(o);
        const auto s = K.parse(s_str), t = K.parse(t_str);
        const auto sp = perfectness_witness(K, s, t);
        const bool ok = commutator(gen2(K, Gen2::h, t), gen2(K, Gen2::a, sp)) == gen2(K, Gen2::a, s);
        emit(o, {{"s_prime", K.render(sp)}, {"verified", ok}});
        rc = ok ? 0 : 1;
    });
    auto *srec = sl2->add_subcommand("recover", "structure (L, T, ., sigma) of T SL2(L)");
    srec->add_option("--L", L, "K^2-basis of L");
    srec->add_option("--torus", torus, "diagonal entries of the torus generators")->required();
    globals(srec);
    srec->callback([&] {
        const auto d = timmesfeld_of(o, L, "");
        const auto &K = d.ambient();
        const auto ex = extract_structure(d, parse_list(K, torus));
        json tb = json::array(), basis = json::array();
        for (const auto &x : ex.tbar_gens) tb.push_back(K.render(x));
        for (const auto &x : d.L().basis()) basis.push_back(K.render(x));
        emit(o, {{"L_basis", basis}, {"tbar_gens", tb}, {"L_is_field", d.L_is_field()}});
    });

    // u
    std::string kind = "g2", x_str, y_str, h_str;
    auto *u = app.add_subcommand("u", "unipotent groups U(k,K)")->require_subcommand(1);
    auto add_u = [&](const char *name, const char *help, int args) {
        auto *c = u->add_subcommand(name, help);
        c->add_option("--kind", kind, "g2 or c2")->check(CLI::IsMember({"g2", "c2"}));
        c->add_option("x", x_str, "word \"x1(expr)*x6(expr)*...\"")->required();
        if (args == 2) c->add_option("y", y_str)->required();
        globals(c);
        return c;
    };
    add_u("mult", "normal form of x*y", 2)->callback([&] {
        const auto d = datum_of(o, kind);
        emit(o, {{"result", render(d, u_mult(d, parse_uword(d, x_str), parse_uword(d, y_str)))}});
    });
    add_u("comm", "[x, y] = x^-1 y^-1 x y", 2)->callback([&] {
        const auto d = datum_of(o, kind);
        emit(o, {{"result", render(d, u_commutator(d, parse_uword(d, x_str), parse_uword(d, y_str)))}});
    });
    add_u("center", "membership in Z (and Z2 for g2)", 1)->callback([&] {
        const auto d = datum_of(o, kind);
        const auto x = parse_uword(d, x_str);
        json j{{"element", render(d, x)}, {"center", center_member(d, x)}};
        if (d.kind() == RootKind::g2) j["z2"] = z2_member(d, x);
        emit(o, j);
    });
    auto *uact = add_u("act", "torus action h(s_alpha, s_beta) . x", 1);
    uact->add_option("--torus", h_str, "\"s_alpha,s_beta\"")->required();
    uact->callback([&] {
        const auto d = datum_of(o, kind);
        const auto h = parse_torus(d.field(), h_str);
        emit(o, {{"result", render(d, torus_act(d, h, parse_uword(d, x_str)))}, {"normalizes", torus_normalizes(d, h)}});
    });

    // sp4
    auto *sp4 = app.add_subcommand("sp4", "Sp4 in characteristic 2")->require_subcommand(1);
    auto *pbr = sp4->add_subcommand("bruhat", "Bruhat normal form h u1 n_w u2");
    pbr->add_option("--matrix", matrix, "16 ';'-separated entries, row-major")->required();
    globals(pbr);
    pbr->callback([&] {
        const auto K = field_of(o);
        emit(o, json::parse(to_json(K, sp4_bruhat(parse_mat4(K, matrix)))));
    });
    auto *pmem = sp4->add_subcommand("member", "membership in PSp4(L0,K0)");
    pmem->add_option("--matrix", matrix, "16 ';'-separated entries, row-major")->required();
    globals(pmem);
    pmem->callback([&] {
        const auto d = psp4_of(o);
        const auto &K = d.field();
        const auto r = membership_psp4(parse_mat4(K, matrix), d, o.bound);
        json j{{"verdict", to_string(r.verdict)}, {"reason", r.reason}};
        if (r.alpha) j["alpha"] = witness_json(K, *r.alpha);
        if (r.beta) j["beta"] = witness_json(K, *r.beta);
        emit(o, j);
    });
    auto *ptc = sp4->add_subcommand("torus-check", "does h(s_alpha, s_beta) normalize PSp4(L0,K0)");
    ptc->add_option("--torus", h_str, "\"s_alpha,s_beta\"")->required();
    globals(ptc);
    ptc->callback([&] {
        const auto d = psp4_of(o);
        const auto h = parse_torus(d.field(), h_str);
        emit(o, {{"normalizes", torus_normalizer_check(h.s_alpha, h.s_beta, d)}});
    });

    // reconstruct
    auto *rec = app.add_subcommand("reconstruct", "recover the field structure from a black-box group")
                    ->require_subcommand(1);
    auto *rg2 = rec->add_subcommand("g2", "G2 over (K, k), config: first subfield is k");
    auto *rc2 = rec->add_subcommand("c2", "C2 over (K0, L0), config: indifferent block");
    for (auto *c : {rg2, rc2}) globals(c);
    auto run_rec = [&](bool g2) {
        const auto cfg = config_of(o);
        if (!cfg) throw SpecError("config", "reconstruct needs --config");
        const std::size_t n = o.samples ? o.samples : 100;
        const RecoveryReport r =
            g2 ? [&] {
                UnipotentOracle orc(g2_datum(*cfg), {0, 5});
                return verify_g2(orc, orc, n, o.seed);
            }()
               : [&] {
                     if (!cfg->tower.indifferent) throw SpecError("config", "no \"indifferent\" block");
                     UnipotentOracle orc(RootDatum2::c2(cfg->tower.K, *cfg->tower.indifferent), {0, 1, 2, 3});
                     return verify_c2(orc, orc, n, o.seed);
                 }();
        emit(o, json::parse(r.to_json()));
        rc = r.ok() ? 0 : 1;
    };
    rg2->callback([&] { run_rec(true); });
    rc2->callback([&] { run_rec(false); });

    // suite run
    auto *suite = app.add_subcommand("suite", "property suites")->require_subcommand(1);
    auto *srun = suite->add_subcommand("run", "run every acceptance check (--config: config directory)");
    globals(srun);
    srun->callback([&] {
        SuiteConfig cfg;
        cfg.seed = o.seed;
        cfg.samples = o.samples;
        cfg.bound = o.bound;
        if (!o.config.empty()) cfg.config_dir = o.config;
        const auto r = run_suite(cfg);
        emit(o, json::parse(r.to_json()));
        for (const auto &c : r.checks)
            if (c.status == Status::unknown) std::cerr << "warning: " << c.name << " inconclusive\n";
        rc = r.ok() ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError &e) {
        std::cerr << "parse error at " << e.position() << ": " << e.what() << "\n";
        return 2;
    } catch (const UsageError &e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const json::exception &e) {
        std::cerr << "invalid JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

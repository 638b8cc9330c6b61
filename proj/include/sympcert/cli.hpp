#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sympcert/certifier.hpp"
#include "sympcert/json_io.hpp"
#include "sympcert/periodlab.hpp"

namespace sympcert::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCertFail = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct RunContext {
    std::vector<std::string> argv;
    nlohmann::json inputs = nlohmann::json::object();  // path -> digest
    std::vector<std::string> outputs;
    std::uint64_t seed = 0;
    bool numeric_outputs = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void note_input(const std::filesystem::path& path) {
        inputs[path.string()] = digest_hex(read_file(path));
    }

    void write_output(const std::filesystem::path& path, const std::string& data) {
        write_file_atomic(path, data);
        outputs.push_back(path.string());
    }

    void finalize_manifest() {
        if (outputs.empty()) return;
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        nlohmann::json m{
            {"argv", argv},
            {"inputs", inputs},
            {"outputs", outputs},
            {"seed", seed},
            {"numeric_outputs", numeric_outputs},
            {"tool_version", kToolVersion},
            {"wall_ms", ms},
        };
        write_file_atomic(outputs.front() + ".manifest.json", m.dump(2) + "\n");
    }
};

inline Profile parse_profile(RelationId id, const std::vector<std::string>& kvs,
                             const std::string& mode) {
    Profile p = default_profile(id);
    for (const auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--profile", "expected key=value, got '" + kv + "'");
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "a0") {
            p.a0_block = val == "generic" ? Profile::Block::Generic : Profile::Block::Identity;
        } else if (key == "phi0") {
            p.phi0 = val == "generic" ? Profile::Phi::Generic : Profile::Phi::Trivial;
        } else if (key == "phiS") {
            p.phiS = val == "generic" ? Profile::Phi::Generic : Profile::Phi::Trivial;
        } else if (key == "rsupsing") {
            p.rsupsing_mode = val == "corrected" ? Profile::Mode::Corrected
                                                 : Profile::Mode::Verbatim;
        } else if (key == "qe2e2") {
            p.qe2e2_mode = val == "corrected" ? Profile::Mode::Corrected : Profile::Mode::Verbatim;
        } else if (key == "gtilde") {
            p.gtilde_order = val == "text" ? Profile::GtildeOrder::Text : Profile::GtildeOrder::Code;
        } else {
            throw CLI::ValidationError("--profile", "unknown profile key '" + key + "'");
        }
    }
    if (!mode.empty()) {
        Profile::Mode m = mode == "corrected" ? Profile::Mode::Corrected : Profile::Mode::Verbatim;
        if (id == RelationId::RSUPSING) p.rsupsing_mode = m;
        if (id == RelationId::QE2E2) p.qe2e2_mode = m;
    }
    return p;
}

inline GroebnerBasis load_or_compute_gb(RunContext& ctx, const std::string& path) {
    if (!path.empty()) {
        ctx.note_input(path);
        return gb_from_json(load_json(path));
    }
    return buchberger(sp4_generators());
}

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline DerivationNode parse_tree(const nlohmann::json& j) {
    DerivationNode node;
    if (j.contains("leaf")) return node;
    node.split = j.at("split").get<std::string>();
    node.if_zero = std::make_shared<DerivationNode>(parse_tree(j.at("zero")));
    node.if_nonzero = std::make_shared<DerivationNode>(parse_tree(j.at("nonzero")));
    return node;
}

inline nlohmann::json tree_to_json(const DerivationNode& node) {
    if (node.is_leaf()) return nlohmann::json{{"leaf", true}};
    return nlohmann::json{{"split", node.split},
                          {"zero", tree_to_json(*node.if_zero)},
                          {"nonzero", tree_to_json(*node.if_nonzero)}};
}

inline DerivationScript script_from_json(const nlohmann::json& j) {
    DerivationScript s;
    s.relation = relation_from_name(j.at("relation").get<std::string>());
    s.profile = j.contains("profile")
                    ? profile_from_json(j.at("profile"), default_profile(s.relation))
                    : default_profile(s.relation);
    s.hypothesis_monomials = j.at("monomials").get<std::vector<std::string>>();
    s.neqs = j.at("neqs").get<std::vector<std::string>>();
    s.root = parse_tree(j.at("tree"));
    return s;
}

inline nlohmann::json script_to_json(const DerivationScript& s) {
    return nlohmann::json{{"relation", relation_name(s.relation)},
                          {"profile", profile_to_json(s.profile)},
                          {"monomials", s.hypothesis_monomials},
                          {"neqs", s.neqs},
                          {"tree", tree_to_json(s.root)}};
}

// Tolerant JSON comparison for the numeric module's outputs.
inline bool json_close(const nlohmann::json& a, const nlohmann::json& b, double tol) {
    if (a.is_number() && b.is_number())
        return std::abs(a.get<double>() - b.get<double>()) <=
               tol * std::max(1.0, std::abs(b.get<double>()));
    if (a.type() != b.type()) return false;
    if (a.is_object()) {
        if (a.size() != b.size()) return false;
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (!b.contains(it.key())) return false;
            if (!json_close(it.value(), b.at(it.key()), tol)) return false;
        }
        return true;
    }
    if (a.is_array()) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!json_close(a[i], b[i], tol)) return false;
        return true;
    }
    return a == b;
}

inline int emit_certificate(RunContext& ctx, const Certificate& cert, const std::string& out) {
    std::string text = cert.to_json().dump(2) + "\n";
    if (!out.empty()) ctx.write_output(out, text);
    std::cout << text;
    ctx.finalize_manifest();
    return cert.passed() ? kExitPass : kExitCertFail;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args) {
    using detail::RunContext;
    RunContext ctx;
    ctx.argv = args;

    CLI::App app{"exact certificates for the split-surface relation polynomials"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    // ---- groebner ----
    auto* cmd_gb = app.add_subcommand("groebner", "compute the reduced basis of I(Sp4)");
    std::string gb_ideal = "sp4", gb_out;
    cmd_gb->add_option("--ideal", gb_ideal, "ideal name")->default_val("sp4");
    cmd_gb->add_option("--out", gb_out, "output basis file")->required();
    cmd_gb->callback([&] {
        if (gb_ideal != "sp4") throw CLI::ValidationError("--ideal", "only 'sp4' is available");
        GroebnerBasis gb = buchberger(sp4_generators());
        ctx.write_output(gb_out, gb_to_json(gb).dump(2) + "\n");
        std::cout << "basis elements: " << gb.elements.size() << "\n";
        ctx.finalize_manifest();
    });

    // ---- reduce ----
    auto* cmd_red = app.add_subcommand("reduce", "canonical normal form modulo a basis");
    std::string red_poly, red_gb, red_out;
    cmd_red->add_option("--poly", red_poly, "polynomial file")->required();
    cmd_red->add_option("--gb", red_gb, "basis file")->required();
    cmd_red->add_option("--out", red_out, "output file")->required();
    cmd_red->callback([&] {
        ctx.note_input(red_poly);
        ctx.note_input(red_gb);
        Poly p = poly_from_json(load_json(red_poly));
        GroebnerBasis gb = gb_from_json(load_json(red_gb));
        ReductionResult rr = normal_form(p, gb);
        nlohmann::json quot = nlohmann::json::array();
        for (const auto& q : rr.quotients) quot.push_back(poly_to_json(q));
        nlohmann::json out{{"remainder", poly_to_json(rr.remainder)},
                           {"quotients", quot},
                           {"telemetry",
                            {{"steps", rr.steps},
                             {"peak_terms", rr.peak_terms},
                             {"max_degree_seen", rr.max_degree_seen}}}};
        ctx.write_output(red_out, out.dump(2) + "\n");
        std::cout << "remainder terms: " << rr.remainder.term_count() << "  steps: " << rr.steps
                  << "  peak terms: " << rr.peak_terms
                  << "  max degree: " << rr.max_degree_seen << "\n";
        ctx.finalize_manifest();
    });

    // ---- relations build ----
    auto* cmd_rel = app.add_subcommand("relations", "relation polynomial construction");
    auto* cmd_rel_build = cmd_rel->add_subcommand("build", "build one relation polynomial");
    std::string rel_id, rel_out, rel_mode;
    std::vector<std::string> rel_profile;
    cmd_rel_build->add_option("--id", rel_id, "relation id")->required();
    cmd_rel_build->add_option("--profile", rel_profile, "profile overrides key=value");
    cmd_rel_build->add_option("--mode", rel_mode, "verbatim|corrected");
    cmd_rel_build->add_option("--out", rel_out, "output polynomial file")->required();
    cmd_rel_build->callback([&] {
        RelationId id = relation_from_name(rel_id);
        Profile profile = detail::parse_profile(id, rel_profile, rel_mode);
        Poly rel = build_relation(id, profile);
        ctx.write_output(rel_out, poly_to_json(rel).dump(2) + "\n");
        std::cout << relation_name(id) << ": " << rel.term_count() << " terms, X-degree "
                  << rel.degree_main() << "\n";
        ctx.finalize_manifest();
    });

    // ---- coeffs ----
    auto* cmd_coeffs = app.add_subcommand("coeffs", "coefficient rules of a polynomial");
    std::string co_poly, co_out;
    cmd_coeffs->add_option("--poly", co_poly, "polynomial file")->required();
    cmd_coeffs->add_option("--out", co_out, "output file")->required();
    cmd_coeffs->callback([&] {
        ctx.note_input(co_poly);
        nlohmann::json j = load_json(co_poly);
        // accept either a bare polynomial file or a reduce output envelope
        Poly p = poly_from_json(j.contains("remainder") ? j.at("remainder") : j);
        CoeffMap map = coefficient_rules(p);
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& [mono, coef] : map.entries) {
            nlohmann::json factors = nlohmann::json::array();
            for (const auto& f : factor_heuristic(coef)) factors.push_back(f.str());
            entries.push_back(nlohmann::json{{"monomial", monomial_str(mono)},
                                             {"coefficient", coef.str()},
                                             {"factors", factors}});
        }
        ctx.write_output(co_out, nlohmann::json{{"entries", entries}}.dump(2) + "\n");
        std::cout << entries.size() << " monomials\n";
        ctx.finalize_manifest();
    });

    // ---- certify ----
    auto* cmd_cert = app.add_subcommand("certify", "produce certificates");
    auto* cmd_van = cmd_cert->add_subcommand("vanishing", "structured-instance vanishing");
    std::string van_case, van_rel, van_out, van_mode;
    std::uint64_t van_seed = 1;
    int van_trials = 100;
    cmd_van->add_option("--case", van_case, "structured case id")->required();
    cmd_van->add_option("--relation", van_rel, "relation id")->required();
    cmd_van->add_option("--seed", van_seed, "certificate seed")->default_val(1);
    cmd_van->add_option("--trials", van_trials, "trial count")->default_val(100);
    cmd_van->add_option("--mode", van_mode, "verbatim|corrected");
    cmd_van->add_option("--out", van_out, "certificate file");
    int exit_code = kExitPass;
    cmd_van->callback([&] {
        RelationId rel = relation_from_name(van_rel);
        CaseId cid = case_from_name(van_case);
        ctx.seed = van_seed;
        std::optional<Profile> profile;
        if (!van_mode.empty()) profile = detail::parse_profile(rel, {}, van_mode);
        Certificate cert = vanishing_certify(cid, rel, van_seed, van_trials, profile);
        exit_code = detail::emit_certificate(ctx, cert, van_out);
    });

    auto* cmd_non = cmd_cert->add_subcommand("nontrivial", "non-membership witness");
    std::string non_rel, non_gb, non_out, non_mode;
    std::vector<std::string> non_profile;
    std::uint64_t non_seed = 1;
    cmd_non->add_option("--relation", non_rel, "relation id")->required();
    cmd_non->add_option("--gb", non_gb, "basis file (computed when omitted)");
    cmd_non->add_option("--seed", non_seed, "certificate seed")->default_val(1);
    cmd_non->add_option("--profile", non_profile, "profile overrides key=value");
    cmd_non->add_option("--mode", non_mode, "verbatim|corrected");
    cmd_non->add_option("--out", non_out, "certificate file");
    cmd_non->callback([&] {
        RelationId rel = relation_from_name(non_rel);
        Profile profile = detail::parse_profile(rel, non_profile, non_mode);
        GroebnerBasis gb = detail::load_or_compute_gb(ctx, non_gb);
        ctx.seed = non_seed;
        Certificate cert = nontriviality_certify(rel, profile, gb, non_seed);
        exit_code = detail::emit_certificate(ctx, cert, non_out);
    });

    // ---- check ----
    auto* cmd_check = app.add_subcommand("check", "verify quoted identities and derivations");
    auto* cmd_cc = cmd_check->add_subcommand("coeffs", "quoted-coefficient claims");
    std::string cc_rel, cc_claims, cc_gb, cc_out, cc_mode;
    std::vector<std::string> cc_profile;
    cmd_cc->add_option("--relation", cc_rel, "relation id")->required();
    cmd_cc->add_option("--claims", cc_claims, "claims file")->required();
    cmd_cc->add_option("--gb", cc_gb, "basis file (computed when omitted)");
    cmd_cc->add_option("--profile", cc_profile, "profile overrides key=value");
    cmd_cc->add_option("--mode", cc_mode, "verbatim|corrected");
    cmd_cc->add_option("--out", cc_out, "certificate file");
    cmd_cc->callback([&] {
        RelationId rel = relation_from_name(cc_rel);
        Profile profile = detail::parse_profile(rel, cc_profile, cc_mode);
        ctx.note_input(cc_claims);
        GroebnerBasis gb = detail::load_or_compute_gb(ctx, cc_gb);
        Poly nf = normal_form(cached_relation(rel, profile), gb, false).remainder;
        CoeffMap map = coefficient_rules(nf);

        Certificate cert;
        cert.kind = "coeff_identity";
        cert.relation = relation_name(rel);
        cert.profile = profile;
        cert.outcome = "pass";
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& jc : load_json(cc_claims)) {
            CoeffClaim claim;
            claim.monomial = jc.at("monomial").get<std::string>();
            claim.claimed = jc.at("claimed").get<std::string>();
            claim.mode = coeff_mode_from_name(
                jc.contains("mode") ? jc.at("mode").get<std::string>() : "up_to_sign");
            if (jc.contains("assume_zero"))
                claim.assume_zero = jc.at("assume_zero").get<std::vector<std::string>>();
            CoeffCheckResult res =
                check_coeff_identity(map, parse_x_monomial(claim.monomial),
                                     poly_parse(claim.claimed), claim.mode, claim.assume_zero);
            if (!res.pass) cert.outcome = "fail";
            checks.push_back(nlohmann::json{{"monomial", claim.monomial},
                                            {"claimed", claim.claimed},
                                            {"mode", coeff_mode_name(claim.mode)},
                                            {"assume_zero", claim.assume_zero},
                                            {"pass", res.pass},
                                            {"normalization", res.normalization},
                                            {"residual", res.residual.str()}});
            std::cout << (res.pass ? "[PASS] " : "[FAIL] ") << "c(" << claim.monomial << ")"
                      << (res.normalization.empty() ? "" : "  [normalization " + res.normalization + "]")
                      << "\n";
        }
        cert.evidence["checks"] = checks;
        exit_code = detail::emit_certificate(ctx, cert, cc_out);
    });

    auto* cmd_cd = cmd_check->add_subcommand("derivation", "replay a printed case analysis");
    std::string cd_script, cd_gb, cd_out;
    cmd_cd->add_option("--script", cd_script, "derivation script file")->required();
    cmd_cd->add_option("--gb", cd_gb, "basis file (computed when omitted)");
    cmd_cd->add_option("--out", cd_out, "certificate file");
    cmd_cd->callback([&] {
        ctx.note_input(cd_script);
        DerivationScript script = detail::script_from_json(load_json(cd_script));
        GroebnerBasis gb = detail::load_or_compute_gb(ctx, cd_gb);
        Poly nf = normal_form(cached_relation(script.relation, script.profile), gb, false).remainder;
        Certificate cert = derivation_check(script, coefficient_rules(nf));
        exit_code = detail::emit_certificate(ctx, cert, cd_out);
    });

    // ---- periods ----
    auto* cmd_per = app.add_subcommand("periods", "numeric period-matrix checks");
    std::string per_g2, per_g3, per_check = "legendre", per_out;
    cmd_per->add_option("--g2", per_g2, "g2 (rational)")->required();
    cmd_per->add_option("--g3", per_g3, "g3 (rational)")->required();
    cmd_per->add_option("--check", per_check, "legendre|split|isogeny|all")->default_val("legendre");
    cmd_per->add_option("--out", per_out, "output file");
    cmd_per->callback([&] {
        CurveSpec curve{parse_rational(per_g2), parse_rational(per_g3)};
        PeriodBasis basis = elliptic_periods(curve);
        PeriodBasis paper = to_paper_normalization(basis);
        nlohmann::json out;
        bool ok = true;
        auto put = [&out](const std::string& key, Complex v) {
            out[key] = {v.real(), v.imag()};
        };
        put("omega1", basis.omega1);
        put("omega2", basis.omega2);
        put("eta1", basis.eta1);
        put("eta2", basis.eta2);
        put("tau", basis.omega2 / basis.omega1);
        double res_raw = legendre_residual(basis);
        double res_paper = legendre_residual(paper);
        out["legendre_raw"] = res_raw;
        out["legendre_paper"] = res_paper;
        std::cout << "omega1 = " << detail::fmt_double(basis.omega1.real()) << " + "
                  << detail::fmt_double(basis.omega1.imag()) << "i\n";
        std::cout << "omega2 = " << detail::fmt_double(basis.omega2.real()) << " + "
                  << detail::fmt_double(basis.omega2.imag()) << "i\n";
        std::cout << "legendre residual (raw)   = " << detail::fmt_double(res_raw) << "\n";
        std::cout << "legendre residual (paper) = " << detail::fmt_double(res_paper) << "\n";
        if (per_check == "legendre" || per_check == "all")
            ok = ok && res_raw < 1e-9 && res_paper < 1e-9;
        if (per_check == "split" || per_check == "all") {
            CMat4 big = assemble_split_period(basis, basis);
            double det_gap =
                std::abs(det4(big) - det2(period_matrix(basis)) * det2(period_matrix(basis)));
            out["split_det_gap"] = det_gap;
            std::cout << "split det gap             = " << detail::fmt_double(det_gap) << "\n";
            ok = ok && det_gap < 1e-12;
        }
        if (per_check == "isogeny" || per_check == "all") {
            CMat2 two{Complex(2), Complex(0), Complex(0), Complex(2)};
            double res = isogeny_residual(two, basis, basis, two);
            out["isogeny_residual"] = res;
            std::cout << "[2]-isogeny residual      = " << detail::fmt_double(res) << "\n";
            ok = ok && res < 1e-10;
        }
        if (!per_out.empty()) {
            ctx.numeric_outputs = true;
            ctx.write_output(per_out, out.dump(2) + "\n");
        }
        ctx.finalize_manifest();
        exit_code = ok ? kExitPass : kExitCertFail;
    });

    // ---- reproduce ----
    auto* cmd_rep = app.add_subcommand("reproduce", "re-run a manifest and diff outputs");
    std::string rep_manifest;
    cmd_rep->add_option("--manifest", rep_manifest, "manifest file")->required();
    cmd_rep->callback([&] {
        nlohmann::json m = load_json(rep_manifest);
        auto rec_argv = m.at("argv").get<std::vector<std::string>>();
        auto rec_outputs = m.at("outputs").get<std::vector<std::string>>();
        bool numeric = m.value("numeric_outputs", false);
        for (const auto& [path, digest] : m.at("inputs").items())
            if (digest_hex(read_file(path)) != digest.get<std::string>())
                throw std::runtime_error("input changed since manifest: " + path);

        auto tmpdir = std::filesystem::temp_directory_path() /
                      ("sympcert-rep-" + digest_hex(m.dump()));
        std::filesystem::create_directories(tmpdir);
        std::vector<std::string> new_argv = rec_argv;
        std::vector<std::pair<std::string, std::string>> pairs;  // original -> replay
        for (std::size_t i = 0; i < rec_outputs.size(); ++i) {
            std::string replay =
                (tmpdir / ("out" + std::to_string(i) + std::filesystem::path(rec_outputs[i])
                                                           .filename()
                                                           .string()))
                    .string();
            for (auto& a : new_argv)
                if (a == rec_outputs[i]) a = replay;
            pairs.emplace_back(rec_outputs[i], replay);
        }
        int rc = run(new_argv);
        if (rc == kExitUsage) throw std::runtime_error("replay failed");
        bool same = true;
        for (const auto& [orig, replay] : pairs) {
            std::string a = read_file(orig), b = read_file(replay);
            if (a == b) continue;
            if (numeric &&
                detail::json_close(nlohmann::json::parse(b), nlohmann::json::parse(a), 1e-9))
                continue;
            same = false;
            std::cout << "output differs: " << orig << "\n";
        }
        std::cout << (same ? "reproduced: outputs identical\n" : "reproduction mismatch\n");
        exit_code = same ? kExitPass : kExitCertFail;
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace sympcert::cli

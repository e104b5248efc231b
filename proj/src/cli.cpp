#include "fredholm/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "fredholm/json_io.hpp"

namespace fredholm {

namespace {

Json header(const RunConfig& cfg) {
    Json out;
    out["tool"] = Json{{"name", kToolName}, {"version", kToolVersion}};
    out["command"] = cfg.command;
    out["tolerance"] = to_json(cfg.tol);
    return out;
}

const std::string& require_input(const RunConfig& cfg) {
    if (!cfg.input_path) throw ValidationError(cfg.command + " needs --input");
    return *cfg.input_path;
}

PerturbationPlan make_plan(const RunConfig& cfg) {
    if (!cfg.seed) throw ValidationError(cfg.command + " needs --seed");
    PerturbationPlan plan;
    plan.epsilon = cfg.epsilon;
    plan.trials = cfg.trials;
    plan.seed = *cfg.seed;
    plan.mode = parse_perturbation_mode(cfg.mode);
    plan.rank_cap = cfg.rank_cap;
    plan.validate();
    return plan;
}

constexpr const char* kEpsilonNote =
    "finite-dimensional sections: the index equals dim H1 - dim H2 for every perturbation, so invariance holds "
    "for every epsilon; no stability threshold is estimated";

Json analyze_pair_report(const RunConfig& cfg, CheckList& checks) {
    const FredholmPair p = parse_pair_json(read_json_file(require_input(cfg)));
    const Tolerance& tol = cfg.tol;
    Json out = header(cfg);
    out["spaces"] = Json{{"dim_H1", p.dim_h1()}, {"dim_H2", p.dim_h2()}};
    out["analysis"] = to_json(analyze_pair(p, tol));

    const auto [e1, e2] = euler_index(p, tol);
    out["euler_index"] = Json{{"S_plus_T_adjoint", e1}, {"T_plus_S_adjoint", e2}};

    try {
        const CompressedPair cp = compress_pair(p, tol);
        Json c;
        c["rank_ST"] = cp.rank_ST;
        c["rank_TS"] = cp.rank_TS;
        c["dim_H1"] = cp.H1c.dim();
        c["dim_H2"] = cp.H2c.dim();
        c["analysis"] = to_json(analyze_pair(cp.pair(), tol));
        c["product_residual"] = cp.product_residual;
        out["compression"] = std::move(c);
    } catch (const InconsistencyError& e) {
        out["compression"] = Json{{"error", e.what()}};
    }

    const HarmonicDims h = harmonic_dims(p, tol);
    out["harmonic"] = Json{{"kernel_V", h.kernel_V},
                           {"kernel_laplacian_H1", h.kernel_laplacian_h1},
                           {"kernel_laplacian_H2", h.kernel_laplacian_h2}};
    out["product_zero"] = is_product_zero(p, tol);
    checks = verify_pair(p, tol);
    return out;
}

Json analyze_chain_report(const RunConfig& cfg, CheckList& checks) {
    const Chain ch = parse_chain_json(read_json_file(require_input(cfg)));
    const Tolerance& tol = cfg.tol;
    Json out = header(cfg);
    out["dims"] = ch.dims();
    out["top_degree"] = ch.minimal_top_degree();
    out["analysis"] = to_json(analyze_chain(ch, tol));
    out["non_complex_degrees"] = validate_chain(ch, tol).non_complex_degrees;

    const FredholmPair p = chain_to_pair(ch);
    out["reduced_pair"] = Json{{"dim_H1", p.dim_h1()}, {"dim_H2", p.dim_h2()}, {"analysis", to_json(analyze_pair(p, tol))}};

    const StitchedOperators st = stitched_euler_operators(ch, tol);
    out["stitched"] = Json{{"index_even", st.index_even}, {"index_odd", st.index_odd}};

    const Chain dual = dual_chain(ch);
    out["dual"] = Json{{"dims", dual.dims()}, {"index", analyze_chain(dual, tol).index}};

    Json harmonic = Json::array();
    for (const auto& lap : chain_laplacians(ch)) harmonic.push_back(lap.cols() - numerical_rank(lap, tol));
    out["laplacian_kernel_dims"] = std::move(harmonic);
    checks = verify_chain(ch, tol);
    return out;
}

Json perturb_pair_report(const RunConfig& cfg, CheckList& checks) {
    const FredholmPair p = parse_pair_json(read_json_file(require_input(cfg)));
    const PerturbationPlan plan = make_plan(cfg);
    const PairExperimentLog log = plan.mode == PerturbationMode::DenseSmallNorm
                                      ? perturb_pair(p, plan, cfg.tol)
                                      : compact_perturb_pair(p, plan, cfg.tol);
    Json out = header(cfg);
    out["experiment"] = to_json(log);
    out["note"] = kEpsilonNote;
    checks = verify_experiment(log, cfg.tol);
    return out;
}

Json perturb_chain_report(const RunConfig& cfg, CheckList& checks) {
    const Chain ch = parse_chain_json(read_json_file(require_input(cfg)));
    const PerturbationPlan plan = make_plan(cfg);
    const ChainExperimentLog log = plan.mode == PerturbationMode::DenseSmallNorm
                                       ? perturb_chain(ch, plan, cfg.tol)
                                       : compact_perturb_chain(ch, plan, cfg.tol);
    Json out = header(cfg);
    out["experiment"] = to_json(log);
    out["note"] = kEpsilonNote;
    checks = verify_experiment(log, cfg.tol);
    return out;
}

std::vector<Index> parse_n_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ValidationError("--n-range must look like A:B, got '" + text + "'");
    try {
        std::size_t used_a = 0;
        std::size_t used_b = 0;
        const std::string a_text = text.substr(0, colon);
        const std::string b_text = text.substr(colon + 1);
        const long long a = std::stoll(a_text, &used_a);
        const long long b = std::stoll(b_text, &used_b);
        if (used_a != a_text.size() || used_b != b_text.size() || a < 1 || b < a) throw std::invalid_argument("range");
        return n_range(a, b);
    } catch (const std::logic_error&) {
        throw ValidationError("--n-range must be A:B with 1 <= A <= B, got '" + text + "'");
    }
}

Json probe_report(const RunConfig& cfg, CheckList& checks) {
    OperatorFamily fam;
    fam.kind = parse_family_kind(cfg.family);
    fam.shape = parse_shape_rule(cfg.shape);
    fam.weights = parse_weight_rule(cfg.weights);
    if (fam.kind == FamilyKind::FiniteRankCoupling) {
        const Json doc = read_json_file(require_input(cfg));
        fam.block = doc.contains("block") ? parse_matrix_json(doc["block"], "$.block") : parse_matrix_json(doc);
    }
    OperatorFamily partner;
    partner.kind = parse_family_kind(cfg.partner);
    partner.shape = parse_shape_rule(cfg.partner_shape);
    partner.weights = fam.weights;
    if (partner.kind == FamilyKind::FiniteRankCoupling) partner.block = fam.block;

    const StabilizationReport report = stabilization_scan(fam, partner, parse_n_range(cfg.n_range), cfg.window, cfg.tol);
    Json out = header(cfg);
    out["scan"] = to_json(report);
    out["note"] = "finite sections of an infinite-dimensional family; limits describe the truncations only";
    checks = verify_scan(report);
    return out;
}

void render_text(const Json& j, std::ostream& os, const std::string& indent) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Json& v = it.value();
        if (v.is_object()) {
            os << indent << it.key() << ":\n";
            render_text(v, os, indent + "  ");
        } else if (v.is_array() && !v.empty() && v.front().is_object()) {
            os << indent << it.key() << ":\n";
            for (const auto& item : v) {
                os << indent << "  -";
                for (auto f = item.begin(); f != item.end(); ++f) os << " " << f.key() << "=" << f.value().dump();
                os << "\n";
            }
        } else {
            os << indent << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
    }
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Json report;
    CheckList checks;
    try {
        cfg.tol.validate();
        if (cfg.format != "json" && cfg.format != "text") throw ValidationError("--format must be json or text");
        if (cfg.command == "analyze-pair") {
            report = analyze_pair_report(cfg, checks);
        } else if (cfg.command == "analyze-chain") {
            report = analyze_chain_report(cfg, checks);
        } else if (cfg.command == "perturb-pair") {
            report = perturb_pair_report(cfg, checks);
        } else if (cfg.command == "perturb-chain") {
            report = perturb_chain_report(cfg, checks);
        } else if (cfg.command == "probe") {
            report = probe_report(cfg, checks);
        } else {
            throw ValidationError("unknown command '" + cfg.command + "'");
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInconsistent;
    }

    const bool ok = all_passed(checks);
    report["checks"] = to_json(checks);
    report["status"] = ok ? "consistent" : "inconsistent";

    std::ostringstream body;
    if (cfg.format == "json") {
        body << report.dump(2) << "\n";
    } else {
        render_text(report, body, "");
    }

    if (cfg.output_path) {
        std::ofstream file(*cfg.output_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << *cfg.output_path << "\n";
            return kExitValidation;
        }
        file << body.str();
    } else {
        out << body.str();
    }

    if (!ok) {
        for (const auto& c : checks) {
            if (!c.passed) err << "check failed: " << c.name << " (residual " << c.residual << ")\n";
        }
        return kExitInconsistent;
    }
    return kExitOk;
}

}  // namespace fredholm

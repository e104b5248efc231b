// Command-line front end: fredholm <command> [options]

#include <iostream>

#include <CLI11.hpp>

#include "fredholm/cli.hpp"

int main(int argc, char** argv) {
    fredholm::RunConfig cfg;
    CLI::App app{"Index and quotient dimensions of Fredholm pairs and chains of matrices"};
    app.set_version_flag("--version", fredholm::kToolVersion);

    app.add_option("command", cfg.command, "analyze-pair | analyze-chain | perturb-pair | perturb-chain | probe")
        ->required()
        ->check(CLI::IsMember({"analyze-pair", "analyze-chain", "perturb-pair", "perturb-chain", "probe"}));
    app.add_option("--input", cfg.input_path, "pair, chain, or block JSON file");
    app.add_option("--tol", cfg.tol.rank_rtol, "relative rank threshold")->capture_default_str();
    app.add_option("--atol", cfg.tol.residual_atol, "residual threshold for identity checks")->capture_default_str();
    app.add_option("--seed", cfg.seed, "RNG seed (required for perturb commands)");
    app.add_option("--format", cfg.format, "json | text")->capture_default_str();
    app.add_option("--output", cfg.output_path, "write the report here instead of stdout");
    app.add_option("--trials", cfg.trials, "perturbation trials")->capture_default_str();
    app.add_option("--epsilon", cfg.epsilon, "operator-norm bound for small-norm perturbations")->capture_default_str();
    app.add_option("--mode", cfg.mode, "dense-small-norm | finite-rank | compact-analog")->capture_default_str();
    app.add_option("--rank-cap", cfg.rank_cap, "rank cap for finite-rank perturbations")->capture_default_str();
    app.add_option("--family", cfg.family,
                   "zero | right-shift | left-shift | weighted-shift | diagonal | finite-rank-coupling")
        ->capture_default_str();
    app.add_option("--shape", cfg.shape, "square | rect-up | rect-down")->capture_default_str();
    app.add_option("--weights", cfg.weights, "reciprocal | reciprocal-square | constant")->capture_default_str();
    app.add_option("--partner", cfg.partner, "partner family for probe (T operator)")->capture_default_str();
    app.add_option("--partner-shape", cfg.partner_shape, "shape rule of the partner family")->capture_default_str();
    app.add_option("--n-range", cfg.n_range, "truncation sizes A:B")->capture_default_str();
    app.add_option("--window", cfg.window, "stable window for probe")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return fredholm::kExitValidation;
    }
    return fredholm::run(cfg, std::cout, std::cerr);
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "fredholm/hilbert.hpp"

namespace fredholm {

inline constexpr const char* kToolName = "fredholm";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitInconsistent = 3 };

/// One CLI invocation. Command-specific requirements are checked by run().
struct RunConfig {
    std::string command;  ///< analyze-pair | analyze-chain | perturb-pair | perturb-chain | probe
    std::optional<std::string> input_path;
    Tolerance tol;
    std::optional<std::uint64_t> seed;
    std::string format = "json";  ///< json | text
    std::optional<std::string> output_path;

    int trials = 100;
    double epsilon = 0.1;
    std::string mode = "dense-small-norm";
    Index rank_cap = 1;

    std::string family = "right-shift";
    std::string shape = "square";
    std::string weights = "reciprocal";
    std::string partner = "zero";
    std::string partner_shape = "square";
    std::string n_range = "1:40";
    Index window = 5;
};

/**
 * Runs @p cfg. The report goes to cfg.output_path if set, otherwise to
 * @p out; diagnostics go to @p err. Returns 0 when every check passes,
 * 2 on invalid input or configuration, 3 when a check fails.
 */
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace fredholm

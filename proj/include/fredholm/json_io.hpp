/**
 * @file json_io.hpp
 * @brief JSON encodings of operators, pairs, chains and reports.
 *
 * Matrix schema: {"rows": m, "cols": n, "entries": [[e, ...], ...]} with
 * entries row-major and each e either [re, im] or a bare real number.
 * Pair files hold {"S": matrix, "T": matrix}; chain files hold
 * {"dims": [...], "deltas": [matrix, ...]}.
 */

#pragma once

#include <string>

#include <json.hpp>

#include "fredholm/chain.hpp"
#include "fredholm/pair.hpp"
#include "fredholm/perturbation.hpp"
#include "fredholm/truncation.hpp"

namespace fredholm {

using Json = nlohmann::ordered_json;

/// Schema violation; what() starts with the JSON path of the offending value.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& path, const std::string& message)
        : ValidationError(path + ": " + message), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

Operator parse_matrix_json(const Json& doc, const std::string& path = "$");
Json emit_matrix_json(const Operator& a);

FredholmPair parse_pair_json(const Json& doc, const std::string& path = "$");
Json emit_pair_json(const FredholmPair& p);

Chain parse_chain_json(const Json& doc, const std::string& path = "$");
Json emit_chain_json(const Chain& ch);

/// Reads and parses a file; throws ParseError on I/O or syntax failure.
Json read_json_file(const std::string& path);

Json to_json(const Tolerance& tol);
Json to_json(const PairAnalysis& an);
Json to_json(const ChainAnalysis& an);
Json to_json(const CheckList& checks);
Json to_json(const PerturbationPlan& plan);
Json to_json(const PairExperimentLog& log);
Json to_json(const ChainExperimentLog& log);
Json to_json(const StabilizationReport& report);

}  // namespace fredholm

#include "fredholm/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fredholm {

namespace {

std::string at(const std::string& path, const char* key) { return path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const Json& member(const Json& doc, const char* key, const std::string& path) {
    if (!doc.is_object()) throw ParseError(path, "expected an object");
    const auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(at(path, key), "missing");
    return *it;
}

Index count(const Json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ParseError(path, "expected a non-negative integer");
    return static_cast<Index>(v.get<long long>());
}

double real_number(const Json& v, const std::string& path) {
    if (!v.is_number()) throw ParseError(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError(path, "non-finite number");
    return x;
}

Scalar entry(const Json& v, const std::string& path) {
    if (v.is_number()) return {real_number(v, path), 0.0};
    if (v.is_array() && v.size() == 2) return {real_number(v[0], at(path, std::size_t{0})), real_number(v[1], at(path, std::size_t{1}))};
    throw ParseError(path, "expected [re, im] or a number");
}

Json number(double x) { return Json(x); }

}  // namespace

Operator parse_matrix_json(const Json& doc, const std::string& path) {
    const Index rows = count(member(doc, "rows", path), at(path, "rows"));
    const Index cols = count(member(doc, "cols", path), at(path, "cols"));
    const Json& entries = member(doc, "entries", path);
    const std::string epath = at(path, "entries");
    if (!entries.is_array()) throw ParseError(epath, "expected an array of rows");
    if (static_cast<Index>(entries.size()) != rows) {
        throw ParseError(epath, "expected " + std::to_string(rows) + " rows, found " + std::to_string(entries.size()));
    }
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const Json& row = entries[static_cast<std::size_t>(i)];
        const std::string rpath = at(epath, static_cast<std::size_t>(i));
        if (!row.is_array()) throw ParseError(rpath, "expected a row array");
        if (static_cast<Index>(row.size()) != cols) {
            throw ParseError(rpath, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
        }
        for (Index j = 0; j < cols; ++j) {
            m(i, j) = entry(row[static_cast<std::size_t>(j)], at(rpath, static_cast<std::size_t>(j)));
        }
    }
    return Operator(std::move(m));
}

Json emit_matrix_json(const Operator& a) {
    Json entries = Json::array();
    for (Index i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (Index j = 0; j < a.cols(); ++j) row.push_back(Json::array({number(a(i, j).real()), number(a(i, j).imag())}));
        entries.push_back(std::move(row));
    }
    Json out;
    out["rows"] = a.rows();
    out["cols"] = a.cols();
    out["entries"] = std::move(entries);
    return out;
}

FredholmPair parse_pair_json(const Json& doc, const std::string& path) {
    Operator s = parse_matrix_json(member(doc, "S", path), at(path, "S"));
    Operator t = parse_matrix_json(member(doc, "T", path), at(path, "T"));
    try {
        return {std::move(s), std::move(t)};
    } catch (const DimensionError& e) {
        throw ParseError(path, e.what());
    }
}

Json emit_pair_json(const FredholmPair& p) {
    Json out;
    out["S"] = emit_matrix_json(p.S());
    out["T"] = emit_matrix_json(p.T());
    return out;
}

Chain parse_chain_json(const Json& doc, const std::string& path) {
    const Json& dims_doc = member(doc, "dims", path);
    const std::string dpath = at(path, "dims");
    if (!dims_doc.is_array()) throw ParseError(dpath, "expected an array of dimensions");
    std::vector<Index> dims;
    for (std::size_t k = 0; k < dims_doc.size(); ++k) dims.push_back(count(dims_doc[k], at(dpath, k)));

    const Json& deltas_doc = member(doc, "deltas", path);
    const std::string mpath = at(path, "deltas");
    if (!deltas_doc.is_array()) throw ParseError(mpath, "expected an array of matrices");
    std::vector<Operator> deltas;
    for (std::size_t k = 0; k < deltas_doc.size(); ++k) deltas.push_back(parse_matrix_json(deltas_doc[k], at(mpath, k)));
    try {
        return {std::move(dims), std::move(deltas)};
    } catch (const DimensionError& e) {
        throw ParseError(path, e.what());
    }
}

Json emit_chain_json(const Chain& ch) {
    Json out;
    out["dims"] = ch.dims();
    Json deltas = Json::array();
    for (const auto& d : ch.deltas()) deltas.push_back(emit_matrix_json(d));
    out["deltas"] = std::move(deltas);
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, "cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path, std::string("invalid JSON: ") + e.what());
    }
}

Json to_json(const Tolerance& tol) {
    Json out;
    out["rank_rtol"] = tol.rank_rtol;
    out["residual_atol"] = tol.residual_atol;
    return out;
}

Json to_json(const PairAnalysis& an) {
    Json out;
    out["a"] = an.a;
    out["b"] = an.b;
    out["c"] = an.c;
    out["d"] = an.d;
    out["index"] = an.index;
    out["rank_ST"] = an.rank_ST;
    out["rank_TS"] = an.rank_TS;
    Json norms;
    for (const auto& [name, value] : an.residuals) norms[name] = value;
    out["residuals"] = std::move(norms);
    return out;
}

Json to_json(const ChainAnalysis& an) {
    Json out;
    Json degrees = Json::array();
    for (std::size_t p = 0; p < an.per_degree.size(); ++p) {
        Json d;
        d["p"] = p;
        d["kernel_quotient"] = an.per_degree[p].kernel_quotient;
        d["range_quotient"] = an.per_degree[p].range_quotient;
        degrees.push_back(std::move(d));
    }
    out["per_degree"] = std::move(degrees);
    out["index"] = an.index;
    out["consecutive_ranks"] = an.consecutive_ranks;
    return out;
}

Json to_json(const CheckList& checks) {
    Json out = Json::array();
    for (const auto& c : checks) {
        Json j;
        j["name"] = c.name;
        j["passed"] = c.passed;
        j["residual"] = c.residual;
        out.push_back(std::move(j));
    }
    return out;
}

Json to_json(const PerturbationPlan& plan) {
    Json out;
    out["mode"] = to_string(plan.mode);
    out["epsilon"] = plan.epsilon;
    out["trials"] = plan.trials;
    out["seed"] = plan.seed;
    out["rank_cap"] = plan.rank_cap;
    return out;
}

namespace {

template <typename Log>
Json summary(const Log& log) {
    Json s;
    s["trials"] = log.trials.size();
    s["index_preserved_all"] = log.all_index_preserved();
    s["dims_jumped_count"] = log.jump_count();
    s["max_perturbation_norm"] = log.max_perturbation_norm();
    return s;
}

}  // namespace

Json to_json(const PairExperimentLog& log) {
    Json out;
    out["plan"] = to_json(log.plan);
    out["base"] = to_json(log.base);
    Json trials = Json::array();
    for (std::size_t k = 0; k < log.trials.size(); ++k) {
        const auto& t = log.trials[k];
        Json j;
        j["trial"] = k;
        j["norm_dS"] = t.norm_dS;
        j["norm_dT"] = t.norm_dT;
        j["a"] = t.analysis.a;
        j["b"] = t.analysis.b;
        j["c"] = t.analysis.c;
        j["d"] = t.analysis.d;
        j["index"] = t.analysis.index;
        j["rank_ST"] = t.analysis.rank_ST;
        j["rank_TS"] = t.analysis.rank_TS;
        j["index_preserved"] = t.index_preserved;
        j["dims_jumped"] = t.dims_jumped;
        trials.push_back(std::move(j));
    }
    out["trials"] = std::move(trials);
    out["summary"] = summary(log);
    return out;
}

Json to_json(const ChainExperimentLog& log) {
    Json out;
    out["plan"] = to_json(log.plan);
    out["base"] = to_json(log.base);
    Json trials = Json::array();
    for (std::size_t k = 0; k < log.trials.size(); ++k) {
        const auto& t = log.trials[k];
        Json j;
        j["trial"] = k;
        j["delta_norms"] = t.delta_norms;
        Json kq = Json::array();
        Json rq = Json::array();
        for (const auto& q : t.analysis.per_degree) {
            kq.push_back(q.kernel_quotient);
            rq.push_back(q.range_quotient);
        }
        j["kernel_quotients"] = std::move(kq);
        j["range_quotients"] = std::move(rq);
        j["index"] = t.analysis.index;
        j["pair_gap_S"] = t.pair_gap_S;
        j["pair_gap_T"] = t.pair_gap_T;
        j["pair_gap_bounded"] = t.pair_gap_bounded;
        j["index_preserved"] = t.index_preserved;
        j["dims_jumped"] = t.dims_jumped;
        trials.push_back(std::move(j));
    }
    out["trials"] = std::move(trials);
    out["summary"] = summary(log);
    return out;
}

Json to_json(const StabilizationReport& report) {
    auto entry_json = [](const ScanEntry& e) {
        Json j;
        j["n"] = e.n;
        j["rows"] = e.rows;
        j["cols"] = e.cols;
        j["a"] = e.a;
        j["b"] = e.b;
        j["c"] = e.c;
        j["d"] = e.d;
        j["index"] = e.index;
        return j;
    };
    Json out;
    out["family"] = report.family;
    out["partner"] = report.partner;
    out["shape_rule"] = report.shape_rule;
    Json per_n = Json::array();
    for (const auto& e : report.per_n) per_n.push_back(entry_json(e));
    out["per_n"] = std::move(per_n);
    out["stable_window"] = report.stable_window;
    out["stabilized"] = report.stabilized;
    out["limits"] = report.limits ? entry_json(*report.limits) : Json(nullptr);
    out["square_caveat"] = report.square_caveat;
    if (report.square_caveat) out["caveat"] = report.caveat;
    return out;
}

}  // namespace fredholm

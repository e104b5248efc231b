#include "fredholm/perturbation.hpp"

#include <algorithm>
#include <cmath>

namespace fredholm {

std::string to_string(PerturbationMode mode) {
    switch (mode) {
        case PerturbationMode::DenseSmallNorm: return "dense-small-norm";
        case PerturbationMode::FiniteRank: return "finite-rank";
        case PerturbationMode::CompactAnalog: return "compact-analog";
    }
    return "unknown";
}

PerturbationMode parse_perturbation_mode(const std::string& name) {
    if (name == "dense-small-norm") return PerturbationMode::DenseSmallNorm;
    if (name == "finite-rank") return PerturbationMode::FiniteRank;
    if (name == "compact-analog") return PerturbationMode::CompactAnalog;
    throw ValidationError("unknown perturbation mode '" + name + "'");
}

void PerturbationPlan::validate() const {
    if (!std::isfinite(epsilon) || epsilon <= 0.0) throw ValidationError("epsilon must be a positive finite number");
    if (trials < 1) throw ValidationError("trials must be at least 1");
    if (rank_cap < 0) throw ValidationError("rank_cap must be non-negative");
}

std::mt19937_64 trial_engine(std::uint64_t seed, int trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    return std::mt19937_64(seq);
}

Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(i, j) = Scalar(re, im);
        }
    }
    return m;
}

Operator draw_perturbation(Index rows, Index cols, const PerturbationPlan& plan, std::mt19937_64& rng) {
    if (rows == 0 || cols == 0) return Operator::zero(rows, cols);
    switch (plan.mode) {
        case PerturbationMode::DenseSmallNorm: {
            const Matrix g = gaussian_matrix(rows, cols, rng);
            const double norm = operator_norm(Operator(g));
            // Strictly inside the ball: target in [0, epsilon).
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const double target = plan.epsilon * unit(rng) * (1.0 - 1e-12);
            if (norm == 0.0) return Operator::zero(rows, cols);
            return Operator(Matrix(g * (target / norm)));
        }
        case PerturbationMode::FiniteRank: {
            const Index cap = std::min({plan.rank_cap, rows, cols});
            if (cap == 0) return Operator::zero(rows, cols);
            std::uniform_int_distribution<Index> pick(1, cap);
            const Index r = pick(rng);
            const Matrix left = gaussian_matrix(rows, r, rng);
            const Matrix right = gaussian_matrix(cols, r, rng);
            return Operator(Matrix(left * right.adjoint()));
        }
        case PerturbationMode::CompactAnalog:
            return Operator(gaussian_matrix(rows, cols, rng));
    }
    return Operator::zero(rows, cols);
}

PairTrial run_pair_trial(const FredholmPair& p, const PairAnalysis& base, const Operator& dS, const Operator& dT,
                         const Tolerance& tol) {
    const FredholmPair perturbed(add(p.S(), dS), add(p.T(), dT));
    PairTrial t;
    t.norm_dS = operator_norm(dS);
    t.norm_dT = operator_norm(dT);
    t.analysis = analyze_pair(perturbed, tol);
    t.index_preserved = t.analysis.index == base.index;
    t.dims_jumped = !t.analysis.same_dimensions(base);
    return t;
}

ChainTrial run_chain_trial(const Chain& ch, const ChainAnalysis& base, const std::vector<Operator>& perturbations,
                           const Tolerance& tol) {
    if (perturbations.size() != ch.deltas().size()) {
        throw DimensionError("chain perturbation needs one operator per differential");
    }
    std::vector<Operator> deltas;
    ChainTrial t;
    double even_sum = 0.0;
    double odd_sum = 0.0;
    for (std::size_t k = 0; k < perturbations.size(); ++k) {
        deltas.push_back(add(ch.deltas()[k], perturbations[k]));
        const double n = operator_norm(perturbations[k]);
        t.delta_norms.push_back(n);
        ((k + 1) % 2 == 0 ? even_sum : odd_sum) += n;
    }
    const Chain perturbed(ch.dims(), std::move(deltas));
    t.analysis = analyze_chain(perturbed, tol);
    t.index_preserved = t.analysis.index == base.index;
    t.dims_jumped = !t.analysis.same_dimensions(base);

    const FredholmPair before = chain_to_pair(ch);
    const FredholmPair after = chain_to_pair(perturbed);
    t.pair_gap_S = distance(before.S(), after.S());
    t.pair_gap_T = distance(before.T(), after.T());
    // Rounding slack on the triangle inequality.
    const double slack = 1e-12 * (1.0 + even_sum + odd_sum);
    t.pair_gap_bounded = t.pair_gap_S <= even_sum + slack && t.pair_gap_T <= odd_sum + slack;
    return t;
}

namespace {

PairExperimentLog run_pair_experiment(const FredholmPair& p, const PerturbationPlan& plan, const Tolerance& tol) {
    plan.validate();
    PairExperimentLog log;
    log.plan = plan;
    log.base = analyze_pair(p, tol);
    for (int k = 0; k < plan.trials; ++k) {
        auto rng = trial_engine(plan.seed, k);
        const Operator dS = draw_perturbation(p.S().rows(), p.S().cols(), plan, rng);
        const Operator dT = draw_perturbation(p.T().rows(), p.T().cols(), plan, rng);
        log.trials.push_back(run_pair_trial(p, log.base, dS, dT, tol));
    }
    return log;
}

ChainExperimentLog run_chain_experiment(const Chain& ch, const PerturbationPlan& plan, const Tolerance& tol) {
    plan.validate();
    ChainExperimentLog log;
    log.plan = plan;
    log.base = analyze_chain(ch, tol);
    for (int k = 0; k < plan.trials; ++k) {
        auto rng = trial_engine(plan.seed, k);
        std::vector<Operator> perturbations;
        for (const auto& d : ch.deltas()) perturbations.push_back(draw_perturbation(d.rows(), d.cols(), plan, rng));
        log.trials.push_back(run_chain_trial(ch, log.base, perturbations, tol));
    }
    return log;
}

void require_small_norm(const PerturbationPlan& plan) {
    if (plan.mode != PerturbationMode::DenseSmallNorm) {
        throw ValidationError("small-norm experiments need mode dense-small-norm, got " + to_string(plan.mode));
    }
}

void require_compact(const PerturbationPlan& plan) {
    if (plan.mode == PerturbationMode::DenseSmallNorm) {
        throw ValidationError("compact experiments need mode finite-rank or compact-analog");
    }
}

template <typename Log>
bool all_preserved(const Log& log) {
    return std::all_of(log.trials.begin(), log.trials.end(), [](const auto& t) { return t.index_preserved; });
}

template <typename Log>
std::size_t jumps(const Log& log) {
    return static_cast<std::size_t>(
        std::count_if(log.trials.begin(), log.trials.end(), [](const auto& t) { return t.dims_jumped; }));
}

}  // namespace

PairExperimentLog perturb_pair(const FredholmPair& p, const PerturbationPlan& plan, const Tolerance& tol) {
    require_small_norm(plan);
    return run_pair_experiment(p, plan, tol);
}

PairExperimentLog compact_perturb_pair(const FredholmPair& p, const PerturbationPlan& plan, const Tolerance& tol) {
    require_compact(plan);
    return run_pair_experiment(p, plan, tol);
}

ChainExperimentLog perturb_chain(const Chain& ch, const PerturbationPlan& plan, const Tolerance& tol) {
    require_small_norm(plan);
    return run_chain_experiment(ch, plan, tol);
}

ChainExperimentLog compact_perturb_chain(const Chain& ch, const PerturbationPlan& plan, const Tolerance& tol) {
    require_compact(plan);
    return run_chain_experiment(ch, plan, tol);
}

bool PairExperimentLog::all_index_preserved() const { return all_preserved(*this); }
std::size_t PairExperimentLog::jump_count() const { return jumps(*this); }
double PairExperimentLog::max_perturbation_norm() const {
    double m = 0.0;
    for (const auto& t : trials) m = std::max({m, t.norm_dS, t.norm_dT});
    return m;
}

bool ChainExperimentLog::all_index_preserved() const { return all_preserved(*this); }
std::size_t ChainExperimentLog::jump_count() const { return jumps(*this); }
double ChainExperimentLog::max_perturbation_norm() const {
    double m = 0.0;
    for (const auto& t : trials) {
        for (double n : t.delta_norms) m = std::max(m, n);
    }
    return m;
}

namespace {

template <typename Log>
CheckList common_checks(const Log& log) {
    CheckList checks;
    long long broken = 0;
    for (const auto& t : log.trials) broken += t.index_preserved ? 0 : 1;
    checks.push_back(exact_check("stability.index_invariance", broken, 0));
    if (log.plan.mode == PerturbationMode::DenseSmallNorm) {
        const double worst = log.max_perturbation_norm();
        checks.push_back({"stability.norm_bound", worst, worst < log.plan.epsilon});
    }
    return checks;
}

}  // namespace

CheckList verify_experiment(const PairExperimentLog& log, const Tolerance&) { return common_checks(log); }

CheckList verify_experiment(const ChainExperimentLog& log, const Tolerance&) {
    CheckList checks = common_checks(log);
    long long unbounded = 0;
    for (const auto& t : log.trials) unbounded += t.pair_gap_bounded ? 0 : 1;
    checks.push_back(exact_check("stability.reduced_pair_gap", unbounded, 0));
    return checks;
}

}  // namespace fredholm

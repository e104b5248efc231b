/**
 * @file perturbation.hpp
 * @brief Seeded stability experiments for pairs and chains.
 *
 * Small-norm mode draws complex Gaussian perturbations rescaled to an
 * operator norm uniform in (0, epsilon). Finite-rank mode draws outer
 * products of rank at most rank_cap with no bound on the norm;
 * compact-analog mode draws unrestricted Gaussian matrices. Every trial
 * re-analyzes the perturbed object and records whether the index survived and
 * whether any of the defining dimensions jumped.
 *
 * Trial k uses its own generator seeded from (seed, k), so logs are
 * bit-reproducible and independent of evaluation order.
 */

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fredholm/chain.hpp"
#include "fredholm/pair.hpp"

namespace fredholm {

enum class PerturbationMode { DenseSmallNorm, FiniteRank, CompactAnalog };

std::string to_string(PerturbationMode mode);
/// Accepts "dense-small-norm", "finite-rank", "compact-analog".
PerturbationMode parse_perturbation_mode(const std::string& name);

struct PerturbationPlan {
    double epsilon = 0.1;
    int trials = 1;
    std::uint64_t seed = 0;
    PerturbationMode mode = PerturbationMode::DenseSmallNorm;
    Index rank_cap = 1;

    /// epsilon > 0 and finite, trials >= 1, rank_cap >= 0.
    void validate() const;
};

struct PairTrial {
    double norm_dS = 0.0;
    double norm_dT = 0.0;
    PairAnalysis analysis;
    bool index_preserved = true;
    bool dims_jumped = false;
};

struct PairExperimentLog {
    PerturbationPlan plan;
    PairAnalysis base;
    std::vector<PairTrial> trials;

    bool all_index_preserved() const;
    std::size_t jump_count() const;
    /// Largest recorded perturbation norm (both operators, all trials).
    double max_perturbation_norm() const;
};

struct ChainTrial {
    std::vector<double> delta_norms;  ///< |δ'_p - δ_p| for p = 1..n
    ChainAnalysis analysis;
    bool index_preserved = true;
    bool dims_jumped = false;
    double pair_gap_S = 0.0;  ///< |S - S'| of the reduced pairs
    double pair_gap_T = 0.0;
    bool pair_gap_bounded = true;  ///< |S - S'| <= Σ_even |δ_p - δ'_p| and likewise for T
};

struct ChainExperimentLog {
    PerturbationPlan plan;
    ChainAnalysis base;
    std::vector<ChainTrial> trials;

    bool all_index_preserved() const;
    std::size_t jump_count() const;
    double max_perturbation_norm() const;
};

/// Generator for trial @p trial of a plan seeded with @p seed.
std::mt19937_64 trial_engine(std::uint64_t seed, int trial);

/// Complex Gaussian matrix, unit variance per real component.
Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng);
/// Draw one perturbation of the given shape under @p plan.
Operator draw_perturbation(Index rows, Index cols, const PerturbationPlan& plan, std::mt19937_64& rng);

/// One trial with explicit perturbations.
PairTrial run_pair_trial(const FredholmPair& p, const PairAnalysis& base, const Operator& dS, const Operator& dT,
                         const Tolerance& tol = {});
ChainTrial run_chain_trial(const Chain& ch, const ChainAnalysis& base, const std::vector<Operator>& perturbations,
                           const Tolerance& tol = {});

/// Small-norm experiment (plan.mode must be DenseSmallNorm).
PairExperimentLog perturb_pair(const FredholmPair& p, const PerturbationPlan& plan, const Tolerance& tol = {});
/// Finite-rank or compact-analog experiment.
PairExperimentLog compact_perturb_pair(const FredholmPair& p, const PerturbationPlan& plan, const Tolerance& tol = {});

ChainExperimentLog perturb_chain(const Chain& ch, const PerturbationPlan& plan, const Tolerance& tol = {});
ChainExperimentLog compact_perturb_chain(const Chain& ch, const PerturbationPlan& plan, const Tolerance& tol = {});

/// Index invariance over all trials, plus the norm bound in small-norm mode.
CheckList verify_experiment(const PairExperimentLog& log, const Tolerance& tol = {});
CheckList verify_experiment(const ChainExperimentLog& log, const Tolerance& tol = {});

}  // namespace fredholm

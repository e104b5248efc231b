#include <doctest.h>

#include "fredholm/perturbation.hpp"
#include "oracles.hpp"
#include "random_fixtures.hpp"

using namespace fredholm;

namespace {

PerturbationPlan plan_for(PerturbationMode mode, int trials, std::uint64_t seed, double epsilon = 0.1, Index rank_cap = 1) {
    PerturbationPlan plan;
    plan.mode = mode;
    plan.trials = trials;
    plan.seed = seed;
    plan.epsilon = epsilon;
    plan.rank_cap = rank_cap;
    return plan;
}

FredholmPair zero_pair(Index n1, Index n2) { return {Operator::zero(n2, n1), Operator::zero(n1, n2)}; }

FredholmPair nilpotent_pair() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return {Operator(m), Operator(m)};
}

FredholmPair projection_pair() {
    Matrix s = Matrix::Zero(2, 3);
    s(0, 0) = 1.0;
    s(1, 1) = 1.0;
    return {Operator(s), Operator::zero(3, 2)};
}

bool same_analysis(const PairAnalysis& x, const PairAnalysis& y) {
    return x.same_dimensions(y) && x.index == y.index && x.rank_ST == y.rank_ST && x.rank_TS == y.rank_TS;
}

}  // namespace

TEST_CASE("plan validation and mode names") {
    PerturbationPlan plan;
    CHECK_NOTHROW(plan.validate());
    plan.epsilon = 0.0;
    CHECK_THROWS_AS(plan.validate(), ValidationError);
    plan.epsilon = 0.1;
    plan.trials = 0;
    CHECK_THROWS_AS(plan.validate(), ValidationError);
    for (auto m : {PerturbationMode::DenseSmallNorm, PerturbationMode::FiniteRank, PerturbationMode::CompactAnalog}) {
        CHECK(parse_perturbation_mode(to_string(m)) == m);
    }
    CHECK_THROWS_AS(parse_perturbation_mode("huge"), ValidationError);
    CHECK_THROWS_AS(perturb_pair(zero_pair(1, 1), plan_for(PerturbationMode::FiniteRank, 1, 0)), ValidationError);
    CHECK_THROWS_AS(compact_perturb_pair(zero_pair(1, 1), plan_for(PerturbationMode::DenseSmallNorm, 1, 0)),
                    ValidationError);
}

TEST_CASE("small-norm perturbations of pairs") {
    SUBCASE("zero pair on C^2") {
        const auto log = perturb_pair(zero_pair(2, 2), plan_for(PerturbationMode::DenseSmallNorm, 50, 11));
        CHECK(log.base.a == 2);
        CHECK(log.base.c == 2);
        CHECK(log.all_index_preserved());
        CHECK(log.max_perturbation_norm() < 0.1);
        CHECK(log.jump_count() > 0);
        for (const auto& t : log.trials) {
            CHECK(t.analysis.index == 0);
            // a and c never grow beyond the base values under generic draws
            CHECK(t.analysis.a <= log.base.a);
            CHECK(t.analysis.c <= log.base.c);
        }
        CHECK(all_passed(verify_experiment(log)));
    }
    SUBCASE("zero perturbation leaves the analysis unchanged") {
        const FredholmPair p = nilpotent_pair();
        const PairAnalysis base = analyze_pair(p);
        const PairTrial t = run_pair_trial(p, base, Operator::zero(2, 2), Operator::zero(2, 2));
        CHECK(same_analysis(t.analysis, base));
        CHECK_FALSE(t.dims_jumped);
        CHECK(t.norm_dS == 0.0);
    }
    SUBCASE("(S, 0) keeps index 1") {
        const auto log = perturb_pair(projection_pair(), plan_for(PerturbationMode::DenseSmallNorm, 50, 3));
        CHECK(log.base.index == 1);
        for (const auto& t : log.trials) CHECK(t.analysis.index == 1);
    }
}

TEST_CASE("compact perturbations of pairs") {
    SUBCASE("rank one, large norm, zero pair") {
        const auto log = compact_perturb_pair(zero_pair(2, 2), plan_for(PerturbationMode::FiniteRank, 50, 5, 0.1, 1));
        CHECK(log.all_index_preserved());
        CHECK(log.max_perturbation_norm() > 0.1);
        for (const auto& t : log.trials) {
            CHECK(t.analysis.rank_ST <= 1);
            CHECK(t.analysis.rank_TS <= 1);
        }
    }
    SUBCASE("rank cap zero draws nothing") {
        const FredholmPair p = nilpotent_pair();
        const auto log = compact_perturb_pair(p, plan_for(PerturbationMode::FiniteRank, 5, 5, 0.1, 0));
        for (const auto& t : log.trials) {
            CHECK(same_analysis(t.analysis, log.base));
            CHECK(t.norm_dT == 0.0);
        }
    }
    SUBCASE("nilpotent pair, rank cap 2") {
        const auto log = compact_perturb_pair(nilpotent_pair(), plan_for(PerturbationMode::FiniteRank, 50, 9, 0.1, 2));
        CHECK(log.all_index_preserved());
        for (const auto& t : log.trials) CHECK(t.analysis.index == 0);
    }
    SUBCASE("compact-analog on random pairs") {
        fixtures::Rng rng(31);
        for (int k = 0; k < 10; ++k) {
            const FredholmPair p = fixtures::random_pair(rng);
            const auto log = compact_perturb_pair(p, plan_for(PerturbationMode::CompactAnalog, 10, 100 + k));
            CHECK(log.all_index_preserved());
            CHECK(log.base.index == oracle::fredholm_index(p.S().matrix()));
        }
    }
}

TEST_CASE("finite-rank draws respect the rank cap") {
    auto rng = trial_engine(1, 0);
    const auto plan = plan_for(PerturbationMode::FiniteRank, 1, 1, 0.1, 2);
    for (int k = 0; k < 20; ++k) {
        const Operator d = draw_perturbation(6, 5, plan, rng);
        CHECK(oracle::gauss_rank(d.matrix()) <= 2);
        CHECK(oracle::gauss_rank(d.matrix()) >= 1);
    }
    CHECK(draw_perturbation(0, 4, plan, rng).empty());
}

TEST_CASE("experiments are deterministic in the seed") {
    fixtures::Rng rng(17);
    const FredholmPair p = fixtures::random_pair(rng, 6);
    const auto plan = plan_for(PerturbationMode::DenseSmallNorm, 8, 123);
    const auto x = perturb_pair(p, plan);
    const auto y = perturb_pair(p, plan);
    REQUIRE(x.trials.size() == y.trials.size());
    for (std::size_t k = 0; k < x.trials.size(); ++k) {
        CHECK(x.trials[k].norm_dS == y.trials[k].norm_dS);
        CHECK(x.trials[k].norm_dT == y.trials[k].norm_dT);
        CHECK(same_analysis(x.trials[k].analysis, y.trials[k].analysis));
    }
    auto e1 = trial_engine(123, 4);
    auto e2 = trial_engine(123, 4);
    CHECK(gaussian_matrix(3, 3, e1) == gaussian_matrix(3, 3, e2));
    auto e3 = trial_engine(123, 5);
    auto e4 = trial_engine(123, 4);
    CHECK(gaussian_matrix(3, 3, e3) != gaussian_matrix(3, 3, e4));
}

TEST_CASE("chain perturbations") {
    const Chain exact({1, 1}, {Operator(Matrix::Ones(1, 1))});
    SUBCASE("exact 1x1 complex stays exact under eps = 0.05") {
        const auto log = perturb_chain(exact, plan_for(PerturbationMode::DenseSmallNorm, 50, 2, 0.05));
        CHECK(log.all_index_preserved());
        CHECK(log.jump_count() == 0);
        for (const auto& t : log.trials) {
            CHECK(t.analysis.per_degree[0].kernel_quotient == 0);
            CHECK(t.analysis.per_degree[1].kernel_quotient == 0);
            CHECK(t.pair_gap_bounded);
        }
        CHECK(all_passed(verify_experiment(log)));
    }
    SUBCASE("zero chain keeps index -1 in every mode") {
        const Chain z = Chain::zero({2, 3});
        const auto small = perturb_chain(z, plan_for(PerturbationMode::DenseSmallNorm, 20, 4));
        const auto finite = compact_perturb_chain(z, plan_for(PerturbationMode::FiniteRank, 20, 4));
        const auto dense = compact_perturb_chain(z, plan_for(PerturbationMode::CompactAnalog, 20, 4));
        for (const auto* log : {&small, &finite, &dense}) {
            CHECK(log->base.index == -1);
            for (const auto& t : log->trials) CHECK(t.analysis.index == -1);
        }
    }
    SUBCASE("zero perturbation") {
        const Chain z = Chain::zero({1, 2, 1});
        const ChainAnalysis base = analyze_chain(z);
        const ChainTrial t = run_chain_trial(z, base, {Operator::zero(1, 2), Operator::zero(2, 1)});
        CHECK(t.analysis.same_dimensions(base));
        CHECK(t.pair_gap_S == 0.0);
        CHECK(t.pair_gap_T == 0.0);
        CHECK_THROWS_AS(run_chain_trial(z, base, {}), DimensionError);
    }
    SUBCASE("random chains") {
        fixtures::Rng rng(61);
        for (int k = 0; k < 10; ++k) {
            const Chain ch = fixtures::random_chain(rng, k % 2 == 0);
            const auto log = perturb_chain(ch, plan_for(PerturbationMode::DenseSmallNorm, 10, 700 + k));
            for (const auto& c : verify_experiment(log)) {
                INFO(c.name);
                CHECK(c.passed);
            }
        }
    }
}

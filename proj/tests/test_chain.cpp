#include <doctest.h>

#include "fredholm/chain.hpp"
#include "oracles.hpp"
#include "random_fixtures.hpp"

using namespace fredholm;

namespace {

Operator one() { return Operator(Matrix::Ones(1, 1)); }

Operator nilpotent() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return Operator(m);
}

Chain exact_chain() { return {{1, 1}, {one()}}; }  // 0 -> C -> C -> 0

long oracle_euler(const Chain& ch) {
    return oracle::euler_characteristic(std::vector<long>(ch.dims().begin(), ch.dims().end()));
}

}  // namespace

TEST_CASE("chain construction") {
    CHECK_THROWS_AS(Chain({}, {}), DimensionError);
    CHECK_THROWS_AS(Chain({1, 1}, {}), DimensionError);
    CHECK_THROWS_AS(Chain({1, 2}, {Operator::zero(2, 1)}), DimensionError);
    CHECK_THROWS_AS(Chain({-1}, {}), DimensionError);
    const Chain ch = Chain::zero({2, 3, 0, 0});
    CHECK(ch.top_degree() == 3);
    CHECK(ch.minimal_top_degree() == 1);
    CHECK(ch.stripped().dims() == std::vector<Index>{2, 3});
    CHECK(ch.dim(-1) == 0);
    CHECK(ch.dim(7) == 0);
    CHECK(ch.delta(0).rows() == 0);
    CHECK(ch.delta(0).cols() == 2);
}

TEST_CASE("validate_chain") {
    const ChainPrecheck single = validate_chain(exact_chain());
    CHECK(single.consecutive_ranks.empty());
    CHECK(single.is_complex());

    const ChainPrecheck nil = validate_chain(Chain({2, 2, 2}, {nilpotent(), nilpotent()}));
    CHECK(nil.consecutive_ranks == std::vector<Index>{0});
    CHECK(nil.is_complex());

    const ChainPrecheck ones = validate_chain(Chain({1, 1, 1}, {one(), one()}));
    CHECK(ones.consecutive_ranks == std::vector<Index>{1});
    CHECK(ones.non_complex_degrees == std::vector<int>{1});
}

TEST_CASE("analyze_chain") {
    const ChainAnalysis exact = analyze_chain(exact_chain());
    REQUIRE(exact.per_degree.size() == 2);
    for (const auto& q : exact.per_degree) {
        CHECK(q.kernel_quotient == 0);
        CHECK(q.range_quotient == 0);
    }
    CHECK(exact.index == 0);

    CHECK(analyze_chain(Chain::zero({2, 3})).index == -1);
    CHECK(analyze_chain(Chain::zero({1, 1, 1})).index == 1);
    CHECK(analyze_chain(Chain::zero({3})).index == 3);

    // not a complex: δ1 δ2 = 1, yet the index is still the Euler characteristic
    const ChainAnalysis ones = analyze_chain(Chain({1, 1, 1}, {one(), one()}));
    CHECK(ones.index == 1);
    CHECK(ones.per_degree[1].kernel_quotient == 0);
    CHECK(ones.per_degree[1].range_quotient == 1);
}

TEST_CASE("chain_to_pair") {
    const FredholmPair exact = chain_to_pair(exact_chain());
    CHECK(exact.dim_h1() == 1);
    CHECK(exact.dim_h2() == 1);
    CHECK(analyze_pair(exact).index == 0);

    const FredholmPair single = chain_to_pair(Chain::zero({3}));
    CHECK(single.dim_h1() == 3);
    CHECK(single.dim_h2() == 0);
    const PairAnalysis an = analyze_pair(single);
    CHECK(an.a == 3);
    CHECK(an.b + an.c + an.d == 0);
    CHECK(an.index == 3);

    CHECK(analyze_pair(chain_to_pair(Chain::zero({2, 3}))).index == -1);

    SUBCASE("ascending degree layout") {
        fixtures::Rng rng(5);
        const Chain ch({2, 3, 1, 2}, {fixtures::random_operator(2, 3, 2, rng), fixtures::random_operator(3, 1, 1, rng),
                                      fixtures::random_operator(1, 2, 1, rng)});
        const FredholmPair p = chain_to_pair(ch);
        // H1 = H0 ⊕ H2 (dims 2,1), H2 = H1 ⊕ H3 (dims 3,2)
        CHECK(p.dim_h1() == 3);
        CHECK(p.dim_h2() == 5);
        CHECK(extract_block(p.S(), 0, 2, 3, 1) == ch.delta(2));
        CHECK(extract_block(p.T(), 0, 0, 2, 3) == ch.delta(1));
        CHECK(extract_block(p.T(), 2, 3, 1, 2) == ch.delta(3));
    }
}

TEST_CASE("chain_laplacians") {
    const auto laps = chain_laplacians(exact_chain());
    REQUIRE(laps.size() == 2);
    CHECK(laps[0] == one());
    CHECK(laps[1] == one());
    for (const auto& l : laps) CHECK(oracle::nullity(l.matrix()) == 0);
}

TEST_CASE("stitched_euler_operators") {
    const StitchedOperators exact = stitched_euler_operators(exact_chain());
    CHECK(exact.index_even == 0);
    CHECK(exact.index_odd == 0);

    const StitchedOperators zero23 = stitched_euler_operators(Chain::zero({2, 3}));
    CHECK(zero23.index_even == -1);
    CHECK(zero23.index_odd == 1);

    CHECK(stitched_euler_operators(Chain::zero({1, 1, 1})).index_even == 1);
}

TEST_CASE("dual_chain") {
    const Chain d1 = dual_chain(exact_chain());
    CHECK(d1.dims() == std::vector<Index>{1, 1});
    CHECK(d1.delta(1) == adjoint(one()));
    CHECK(analyze_chain(d1).index == 0);

    const Chain d23 = dual_chain(Chain::zero({2, 3}));
    CHECK(d23.dims() == std::vector<Index>{3, 2});
    CHECK(analyze_chain(d23).index == 1);
    CHECK(analyze_chain(Chain::zero({2, 3})).index == -1 * analyze_chain(d23).index);

    const Chain d111 = dual_chain(Chain::zero({1, 1, 1}));
    CHECK(analyze_chain(d111).index == 1);

    // trailing zero spaces are stripped before dualizing: n = 1, not 3
    const Chain padded = Chain::zero({2, 3, 0, 0});
    CHECK(dual_chain(padded).dims() == std::vector<Index>{3, 2});
    CHECK(analyze_chain(padded).index == -analyze_chain(dual_chain(padded)).index);
}

TEST_CASE("random chain properties") {
    fixtures::Rng rng(2024);
    for (int k = 0; k < 80; ++k) {
        const bool complex = k % 2 == 0;
        const Chain ch = fixtures::random_chain(rng, complex);
        INFO("chain " << k << " top degree " << ch.top_degree());
        const ChainAnalysis an = analyze_chain(ch);
        CHECK(an.index == oracle_euler(ch));
        CHECK(analyze_pair(chain_to_pair(ch)).index == an.index);
        const StitchedOperators st = stitched_euler_operators(ch);
        CHECK(st.index_even == an.index);
        CHECK(st.index_odd == -an.index);
        const int n = ch.minimal_top_degree();
        CHECK(an.index == (n % 2 == 0 ? 1 : -1) * analyze_chain(dual_chain(ch)).index);
        if (complex) {
            CHECK(validate_chain(ch).is_complex());
            const auto laps = chain_laplacians(ch);
            for (std::size_t p = 0; p < laps.size(); ++p) {
                CHECK(oracle::nullity(laps[p].matrix()) == an.per_degree[p].kernel_quotient);
            }
        }
        for (const auto& c : verify_chain(ch)) {
            INFO(c.name << " residual " << c.residual);
            CHECK(c.passed);
        }
    }
}

TEST_CASE("dual is an involution on minimal chains") {
    fixtures::Rng rng(77);
    for (int k = 0; k < 30; ++k) {
        const Chain ch = fixtures::random_minimal_chain(rng, k % 2 == 0);
        CHECK(dual_chain(dual_chain(ch)) == ch);
    }
}

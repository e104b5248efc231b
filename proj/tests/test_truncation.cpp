#include <doctest.h>

#include "fredholm/truncation.hpp"
#include "oracles.hpp"

using namespace fredholm;

namespace {

OperatorFamily family(FamilyKind kind, ShapeRule shape = ShapeRule::Square, WeightRule weights = WeightRule::Constant) {
    OperatorFamily f;
    f.kind = kind;
    f.shape = shape;
    f.weights = weights;
    return f;
}

const OperatorFamily kZero{};

}  // namespace

TEST_CASE("names round-trip") {
    for (auto k : {FamilyKind::Zero, FamilyKind::RightShift, FamilyKind::LeftShift, FamilyKind::WeightedShift,
                   FamilyKind::Diagonal, FamilyKind::FiniteRankCoupling}) {
        CHECK(parse_family_kind(to_string(k)) == k);
    }
    for (auto r : {ShapeRule::Square, ShapeRule::RectUp, ShapeRule::RectDown}) CHECK(parse_shape_rule(to_string(r)) == r);
    for (auto w : {WeightRule::Reciprocal, WeightRule::ReciprocalSquare, WeightRule::Constant}) {
        CHECK(parse_weight_rule(to_string(w)) == w);
    }
    CHECK_THROWS_AS(parse_family_kind("bilateral-shift"), ValidationError);
    CHECK_THROWS_AS(parse_shape_rule("round"), ValidationError);
}

TEST_CASE("realize") {
    SUBCASE("square right shift, n = 3") {
        const Operator s = realize_operator(family(FamilyKind::RightShift), 3);
        Matrix expected = Matrix::Zero(3, 3);
        expected(1, 0) = 1.0;
        expected(2, 1) = 1.0;
        CHECK(s == Operator(expected));
    }
    SUBCASE("rectangular right shift, n = 2") {
        const FredholmPair p = realize(family(FamilyKind::RightShift, ShapeRule::RectUp), 2);
        CHECK(p.S().rows() == 3);
        CHECK(p.S().cols() == 2);
        CHECK(oracle::nullity(p.S().matrix()) == 0);
        CHECK(p.T() == Operator::zero(2, 3));
    }
    SUBCASE("diagonal 1/k, n = 4") {
        const Operator s = realize_operator(family(FamilyKind::Diagonal, ShapeRule::Square, WeightRule::Reciprocal), 4);
        const std::vector<double> d{1.0, 0.5, 1.0 / 3.0, 0.25};
        CHECK(s == Operator::diagonal(d));
    }
    SUBCASE("left shift and weighted shift") {
        const Operator l = realize_operator(family(FamilyKind::LeftShift, ShapeRule::RectDown), 2);
        CHECK(l.rows() == 2);
        CHECK(l.cols() == 3);
        CHECK(l(0, 1) == Scalar(1.0));
        CHECK(l(1, 2) == Scalar(1.0));
        const Operator w =
            realize_operator(family(FamilyKind::WeightedShift, ShapeRule::Square, WeightRule::ReciprocalSquare), 3);
        CHECK(w(1, 0) == Scalar(1.0));
        CHECK(w(2, 1) == Scalar(0.25));
    }
    SUBCASE("finite-rank coupling block sits in the leading corner") {
        OperatorFamily f = family(FamilyKind::FiniteRankCoupling);
        Matrix b(2, 2);
        b << 1.0, 2.0, 3.0, 4.0;
        f.block = Operator(b);
        const Operator s1 = realize_operator(f, 1);
        CHECK(s1 == Operator(Matrix::Ones(1, 1)));
        const Operator s3 = realize_operator(f, 3);
        CHECK(extract_block(s3, 0, 0, 2, 2) == f.block);
        CHECK(s3(2, 2) == Scalar(0.0));
    }
    CHECK_THROWS_AS(realize_operator(family(FamilyKind::RightShift), 0), ValidationError);
    CHECK_THROWS_AS(realize(family(FamilyKind::RightShift, ShapeRule::RectUp), family(FamilyKind::LeftShift), 2),
                    DimensionError);
    CHECK_NOTHROW(realize(family(FamilyKind::RightShift, ShapeRule::RectUp),
                          family(FamilyKind::LeftShift, ShapeRule::RectDown), 2));
}

TEST_CASE("stabilization scans") {
    SUBCASE("square right shift against zero") {
        const auto r = stabilization_scan(family(FamilyKind::RightShift), kZero, n_range(1, 40), 5);
        for (const auto& e : r.per_n) {
            CHECK(e.a == 1);
            CHECK(e.b == 0);
            CHECK(e.c == 1);
            CHECK(e.d == 0);
            CHECK(e.index == 0);
        }
        REQUIRE(r.stabilized);
        CHECK(r.limits->same_outcome(ScanEntry{0, 0, 0, 1, 0, 1, 0, 0}));
        CHECK(r.square_caveat);
        CHECK_FALSE(r.caveat.empty());
        CHECK(all_passed(verify_scan(r)));
    }
    SUBCASE("rectangular right shift against zero") {
        const auto r = stabilization_scan(family(FamilyKind::RightShift, ShapeRule::RectUp), kZero, n_range(1, 40), 5);
        for (const auto& e : r.per_n) {
            CHECK(e.a == 0);
            CHECK(e.b == 0);
            CHECK(e.c == 1);
            CHECK(e.d == 0);
            CHECK(e.index == -1);
            CHECK(e.index == oracle::fredholm_index(realize_operator(family(FamilyKind::RightShift, ShapeRule::RectUp), e.n).matrix()));
        }
        CHECK(r.stabilized);
        CHECK(r.limits->index == -1);
        CHECK_FALSE(r.square_caveat);
        CHECK(r.shape_rule == "rect-up");
    }
    SUBCASE("diagonal 1/k against zero") {
        const auto r = stabilization_scan(family(FamilyKind::Diagonal, ShapeRule::Square, WeightRule::Reciprocal), kZero,
                                          n_range(1, 40), 5);
        for (const auto& e : r.per_n) {
            CHECK(e.a == 0);
            CHECK(e.index == 0);
        }
        CHECK(r.stabilized);
    }
    SUBCASE("window longer than the scan never stabilizes") {
        const auto r = stabilization_scan(family(FamilyKind::RightShift), kZero, n_range(1, 3), 4);
        CHECK_FALSE(r.stabilized);
        CHECK_FALSE(r.limits.has_value());
    }
    SUBCASE("changing outcomes inside the window") {
        // square diagonal 1/k^2 drops below the rank threshold only for large n
        Tolerance loose;
        loose.rank_rtol = 1e-4;
        const auto r = stabilization_scan(family(FamilyKind::Diagonal, ShapeRule::Square, WeightRule::ReciprocalSquare),
                                          kZero, n_range(1, 40), 5, loose);
        CHECK(r.per_n.front().a == 0);
        CHECK(r.per_n.back().a > 0);
        for (const auto& e : r.per_n) CHECK(e.index == 0);
    }
    CHECK_THROWS_AS(stabilization_scan(family(FamilyKind::RightShift), kZero, {1, 3, 2}, 2), ValidationError);
    CHECK_THROWS_AS(stabilization_scan(family(FamilyKind::RightShift), kZero, n_range(1, 4), 1), ValidationError);
    CHECK_THROWS_AS(stabilization_scan(family(FamilyKind::RightShift), kZero, {0, 1}, 2), ValidationError);
}

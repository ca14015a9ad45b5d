#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "amm/analysis.hpp"
#include "amm/table1.hpp"

using namespace amm;

namespace {

MarketProfile profile_at(const CurveSpec& spec, double x, double y) {
    return profile(create_market(spec, std::vector<double>{x, y}));
}

}  // namespace

TEST(Profile, LsLmsr) {
    const auto p = profile_at(CurveSpec::ls_lmsr(1.0), 1000, 1000);
    EXPECT_NEAR(p.market_cost, 2386.294362, 1e-6);
    ASSERT_TRUE(p.ratio_interval.low.is_finite());
    EXPECT_NEAR(p.ratio_interval.low.value, 0.6481149479, 1e-9);
    EXPECT_NEAR(p.ratio_interval.high.value, 1 / 0.6481149479, 1e-8);
    EXPECT_NEAR(p.slope_interval.low.value, -1 / 0.6481149479, 1e-8);
}

TEST(Profile, ProductIsUnbounded) {
    const auto p = profile_at(CurveSpec::constant_product(), 1000, 1000);
    EXPECT_EQ(p.ratio_interval.low, Endpoint::zero_plus());
    EXPECT_EQ(p.ratio_interval.high, Endpoint::plus_infinity());
    EXPECT_EQ(to_string(p.slope_interval.low), "-inf");
    EXPECT_EQ(to_string(p.slope_interval.high), "0-");
}

TEST(Profile, ConstantSumIsAPoint) {
    const auto p = profile_at(CurveSpec::constant_sum(), 1000, 1000);
    EXPECT_TRUE(p.slope_interval.degenerate());
    EXPECT_EQ(p.slope_interval.low, Endpoint::finite(-1.0));
}

TEST(Profile, Circle) {
    const auto p = profile_at(CurveSpec::circle(6000), 1000, 1000);
    EXPECT_DOUBLE_EQ(p.market_cost, 5e7);
    EXPECT_NEAR(p.ratio_interval.low.value, 0.6236, 5e-5);
    EXPECT_NEAR(p.ratio_interval.high.value, 1.6036, 5e-5);
    EXPECT_NEAR(p.ratio_interval.low.value * p.ratio_interval.high.value, 1.0, 1e-12);
}

TEST(Profile, ProductsAndMeansShareMarkers) {
    const auto p = profile_at(CurveSpec::constant_mean({0.25, 0.75}), 100, 300);
    EXPECT_EQ(p.ratio_interval.low.marker, Endpoint::Marker::ZERO_PLUS);
    EXPECT_EQ(p.ratio_interval.high.marker, Endpoint::Marker::PLUS_INFINITY);
}

TEST(Profile, NeedsTwoTokens) {
    EXPECT_THROW(profile(create_market(CurveSpec::constant_sum(), std::vector<double>{1, 1, 1})), DomainError);
}

TEST(Table1, CellsAgainstReference) {
    const auto rows = table1::compute();
    const auto refs = table1::reference();
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_TRUE(table1::mismatches(rows[1], refs[1]).empty());
    EXPECT_TRUE(table1::mismatches(rows[2], refs[2]).empty());
    EXPECT_TRUE(table1::mismatches(rows[3], refs[3]).empty());
    // The reference's upper LS-LMSR ratio is the reciprocal of 0.6481149479
    // rounded the wrong way; the computed value sits 6.4e-5 below it.
    const auto bad = table1::mismatches(rows[0], refs[0]);
    EXPECT_EQ(bad, (std::vector<std::string>{"ratio high", "slope low"}));
    EXPECT_NEAR(rows[0].profile.ratio_interval.high.value, 1.542936177, 1e-9);
}

TEST(SampleCurve, ProductThroughUnitState) {
    const auto s = sample_curve(CurveSpec::constant_product(), 1e6, 500, 2000, 4);
    ASSERT_EQ(s.points.size(), 4u);
    EXPECT_DOUBLE_EQ(s.points[1].x, 1000);
    EXPECT_NEAR(s.points[1].y, 1000, 1e-9);
    EXPECT_NEAR(s.points[0].y, 2000, 1e-9);
}

TEST(SampleCurve, LsLmsrReachesTheAxis) {
    const auto spec = CurveSpec::ls_lmsr(1.0);
    const auto s = sample_curve(spec, cost(spec, Quantities{1000, 1000}), 0, 1000, 3);
    EXPECT_NEAR(s.points[0].y, 1817.07452949, 1e-5);
    EXPECT_NEAR(s.points[2].y, 1000, 1e-9);
}

TEST(SampleCurve, PointsLieOnTheLevelSet) {
    for (const auto& l : comparison_loci()) {
        const auto s = sample_curve(l.spec, l.cost_value, 200, 1600, 29);
        for (const auto& p : s.points)
            EXPECT_NEAR(cost(l.spec, Quantities{p.x, p.y}), l.cost_value, 1e-9 * std::abs(l.cost_value)) << l.label;
    }
}

TEST(SampleCurve, CircleOnConvexArc) {
    const auto s = sample_curve(CurveSpec::circle(6000), 5e7, 0, 2000, 3);
    EXPECT_NEAR(s.points[1].y, 1000, 1e-9);
}

TEST(SampleCurve, Errors) {
    EXPECT_THROW(sample_curve(CurveSpec::constant_product(), 1e6, 10, 5, 3), DomainError);
    EXPECT_THROW(sample_curve(CurveSpec::constant_product(), 1e6, 0, 5, 1), DomainError);
    EXPECT_THROW(sample_curve(CurveSpec::constant_sum(), 2000, 0, 3000, 3), DomainError);
}

TEST(SampleCurve, Csv) {
    std::ostringstream os;
    write_csv(os, {{{1, 2}, {0.1, 1.0 / 3}}, 2});
    EXPECT_EQ(os.str(), "x,y\n1,2\n0.1,0.333333333333\n");
}

TEST(ComparisonLoci, StackingAwayFromTheCommonPoint) {
    const auto loci = comparison_loci();
    ASSERT_EQ(loci.size(), 5u);
    for (const auto& l : loci)
        EXPECT_NEAR(solve_coordinate(l.spec, Quantities{1000, 1.0}, 1, l.cost_value), 1000, 1e-9) << l.label;
    // Every locus passes through (1000, 1000), so the order is checked off it.
    for (double x : {0.0, 500.0, 1500.0}) {
        double below = -1.0;
        for (const auto& l : loci) {
            double y;
            try {
                y = solve_coordinate(l.spec, Quantities{x, 1.0}, 1, l.cost_value);
            } catch (const InsufficientLiquidity&) {
                y = std::numeric_limits<double>::infinity();
            }
            EXPECT_GT(y, below) << l.label << " at x=" << x;
            below = y;
        }
    }
}

TEST(Scoring, RewardAndExpectedProfit) {
    EXPECT_NEAR(scoring_reward({{0.75, 0.25}}, 0, 1.0), std::log(1.5), 1e-15);
    EXPECT_NEAR(scoring_reward({{0.75, 0.25}}, 0, 2.0), 0.8109302162163288, 1e-15);
    EXPECT_NEAR(expected_profit({{0.5, 0.5}}, {{0.75, 0.25}}, 1.0), 0.1308120359411370, 1e-15);
    EXPECT_NEAR(expected_profit({{0.5, 0.5}}, {{0.5, 0.5}}, 3.0), 0.0, 1e-15);
    const ProbabilityEstimate p1{{0.2, 0.3, 0.5}}, p2{{0.6, 0.1, 0.3}};
    EXPECT_NEAR(expected_profit(p1, p2, 7.5), 7.5 * expected_profit(p1, p2, 1.0), 1e-13);
    EXPECT_GE(expected_profit(p2, p1, 1.0), 0.0);
    EXPECT_THROW(expected_profit({{1.0, 0.0}}, {{0.5, 0.5}}, 1.0), DomainError);
    EXPECT_THROW(validate(ProbabilityEstimate{{0.5, 0.6}}), DomainError);
    EXPECT_THROW(scoring_reward({{1.0, 0.0}}, 1, 1.0), DomainError);
}

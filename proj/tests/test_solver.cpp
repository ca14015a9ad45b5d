#include <gtest/gtest.h>

#include <cmath>

#include "amm/solver.hpp"
#include "property_checks.hpp"

using namespace amm;

namespace {

double in_out(const CurveSpec& spec, Quantities q, std::size_t in, std::size_t out, double amount) {
    return swap_exact_in({spec, std::move(q), in, out, amount, {}});
}

}  // namespace

TEST(SwapExactIn, LsLmsrPublishedTrades) {
    const auto spec = CurveSpec::ls_lmsr(1.0);
    EXPECT_NEAR(in_out(spec, {1000, 1000}, 0, 1, 10), 10.020996, 1e-5);
    EXPECT_NEAR(in_out(spec, {1000, 1000}, 0, 1, 500), 559.926783, 1e-5);
    EXPECT_NEAR(in_out(spec, {1000, 1000}, 1, 0, 817.07452949), 1000, 1e-5);
}

TEST(SwapExactIn, LsLmsrFollowOnTrade) {
    // Marginal ratio at the state is 1.260346709; a unit trade gets a bit more.
    const Quantities q{1500, 440.073217};
    EXPECT_NEAR(price_ratio(CurveSpec::ls_lmsr(1.0), q), 1.2603467096738444, 1e-6);
    EXPECT_NEAR(in_out(CurveSpec::ls_lmsr(1.0), q, 0, 1, 1), 1.260684291025087, 1e-6);
}

TEST(SwapExactIn, ProductAndCircle) {
    EXPECT_NEAR(in_out(CurveSpec::constant_product(), {1000, 1000}, 0, 1, 10), 1000.0 - 1e6 / 1010, 1e-9);
    EXPECT_NEAR(in_out(CurveSpec::constant_product(), {1000, 1000}, 0, 1, 500), 1000.0 / 3, 1e-9);
    EXPECT_NEAR(in_out(CurveSpec::circle(6000), {1000, 1000}, 1, 0, 1258.342613), 1000, 1e-5);
    EXPECT_DOUBLE_EQ(in_out(CurveSpec::constant_sum(), {1000, 1000}, 0, 1, 250), 250);
}

TEST(SwapExactIn, ZeroAmountIsFree) {
    EXPECT_EQ(in_out(CurveSpec::ls_lmsr(0.5), {3, 7}, 0, 1, 0), 0.0);
}

TEST(SwapExactIn, LmsrClosedForm) {
    const double out = in_out(CurveSpec::lmsr(1.0), {1000, 1000}, 1, 0, 0.6897725192910);
    EXPECT_NEAR(out, 5.0, 1e-9);
    EXPECT_NEAR(in_out(CurveSpec::lmsr(1.0), {995, 1000.6897725192910}, 1, 0, 0.0033746612690), 995, 1e-6);
}

TEST(SwapExactIn, Errors) {
    EXPECT_THROW(in_out(CurveSpec::constant_sum(), {10, 10}, 0, 1, 11), InsufficientLiquidity);
    EXPECT_THROW(in_out(CurveSpec::ls_lmsr(1.0), {1000, 1000}, 1, 0, 900), InsufficientLiquidity);
    EXPECT_THROW(in_out(CurveSpec::constant_product(), {10, 10}, 0, 0, 1), DomainError);
    EXPECT_THROW(in_out(CurveSpec::constant_product(), {10, 10}, 0, 1, -1), DomainError);
    EXPECT_THROW(in_out(CurveSpec::constant_product(), {10, 10}, 0, 5, 1), DomainError);
}

TEST(SwapExactIn, ProductNeverDrains) {
    const double out = in_out(CurveSpec::constant_product(), {1000, 1000}, 0, 1, 1e12);
    EXPECT_LT(out, 1000.0);
    EXPECT_GT(out, 999.99);
}

TEST(SwapExactOut, InvertsExactIn) {
    const auto spec = CurveSpec::ls_lmsr(1.0);
    const double paid = swap_exact_out({spec, {1000, 1000}, 0, 1, 559.926783, {}});
    EXPECT_NEAR(paid, 500, 1e-5);
    EXPECT_NEAR(swap_exact_out({CurveSpec::lmsr(1.0), {1000, 1000}, 1, 0, 5, {}}), 0.6897725192910, 1e-9);
    EXPECT_THROW(swap_exact_out({spec, {1000, 1000}, 0, 1, 1000.5, {}}), InsufficientLiquidity);
}

TEST(SwapExactOut, AgainstOracle) {
    amm_test::Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        const double alpha = rng.uniform(0.2, 2.0), x = rng.uniform(50, 2000), y = rng.uniform(50, 2000);
        const double take = rng.uniform(0.0, 0.5) * x;
        const double lib = swap_exact_out({CurveSpec::ls_lmsr(alpha), {x, y}, 1, 0, take, {}});
        const double ref = static_cast<double>(amm_test::ls_lmsr_exact_out_oracle(x, y, take, alpha));
        EXPECT_NEAR(lib, ref, 1e-8 * std::max(1.0, ref));
    }
}

TEST(SolveCoordinate, EllipseBranches) {
    const auto lower = CurveSpec::circle(6000, Branch::CONVEX_LOWER);
    const auto upper = CurveSpec::circle(6000, Branch::CONCAVE_UPPER);
    const Quantities q{1000, 1000};
    EXPECT_NEAR(solve_coordinate(lower, q, 1, 5e7), 1000, 1e-9);
    EXPECT_NEAR(solve_coordinate(upper, q, 1, 5e7), 11000, 1e-9);
    EXPECT_TRUE(lies_on_branch(lower, q));
    EXPECT_FALSE(lies_on_branch(upper, q));
    // Level set entirely outside the reachable disc on this axis.
    EXPECT_THROW(solve_coordinate(lower, q, 1, 1.0), InsufficientLiquidity);
}

TEST(SolveCoordinate, QuadraticDoubleRoot) {
    const auto roots = detail::solve_monic_quadratic(-2.0, 1.0 + 1e-12);
    ASSERT_TRUE(roots);
    EXPECT_NEAR(roots->lower, 1.0, 1e-5);
    EXPECT_FALSE(detail::solve_monic_quadratic(0.0, 1.0));
}

TEST(SolveCoordinate, DrainSnapsWithinTolerance) {
    const auto spec = CurveSpec::ls_lmsr(1.0);
    const double k = cost(spec, Quantities{1000, 1000});
    // The published drain input overshoots the exact one by about 1.4e-6.
    EXPECT_EQ(solve_coordinate(spec, Quantities{0, 1817.07452949}, 0, k, {}, 1000.0), 0.0);
    SolverConfig strict;
    strict.drain_tol = 1e-15;
    EXPECT_THROW(solve_coordinate(spec, Quantities{0, 1817.07452949}, 0, k, strict, 1000.0), InsufficientLiquidity);
}

TEST(Properties, ConservationAndPathIndependence) {
    for (auto f : amm_test::all_families()) {
        const auto r = amm_test::check_conservation_and_path(f);
        EXPECT_TRUE(r.ok) << amm_test::label(f) << ": " << r.detail << " worst " << r.worst;
    }
}

TEST(Properties, RoundTrip) {
    for (auto f : amm_test::all_families()) {
        const auto r = amm_test::check_round_trip(f);
        EXPECT_TRUE(r.ok) << amm_test::label(f) << ": " << r.detail << " worst " << r.worst;
    }
}

TEST(Properties, LsLmsrAgainstBisectionOracle) {
    const auto r = amm_test::check_ls_lmsr_oracle();
    EXPECT_TRUE(r.ok) << r.detail << " worst " << r.worst;
    EXPECT_EQ(r.cases, 1000u);
}

#pragma once

// The four-row price comparison from (1000, 1000): market cost, attainable
// P_x/P_y range, and tangent slope range, with the published reference cells.

#include <cmath>
#include <string>
#include <vector>

#include "amm/analysis.hpp"
#include "amm/curves.hpp"
#include "amm/engine.hpp"

namespace amm::table1 {

/// Published cells are rounded to four decimals for intervals.
inline constexpr double kCellTolerance = 5e-5;

struct Row {
    std::string name;
    CurveSpec spec;
    MarketProfile profile;
};

struct ReferenceRow {
    std::string name;
    double market_cost;
    Interval ratio;
};

inline std::vector<Row> compute() {
    const std::vector<double> deposits{1000.0, 1000.0};
    std::vector<Row> rows;
    for (auto [name, spec] : std::vector<std::pair<std::string, CurveSpec>>{
             {"LS-LMSR", CurveSpec::ls_lmsr(1.0)},
             {"constant product", CurveSpec::constant_product()},
             {"constant sum", CurveSpec::constant_sum()},
             {"constant circle", CurveSpec::circle(6000.0)},
         }) {
        rows.push_back({name, spec, profile(create_market(spec, deposits))});
    }
    return rows;
}

inline std::vector<ReferenceRow> reference() {
    return {
        {"LS-LMSR", 2386.294362, {Endpoint::finite(0.6481), Endpoint::finite(1.5430)}},
        {"constant product", 1000000.0, {Endpoint::zero_plus(), Endpoint::plus_infinity()}},
        {"constant sum", 2000.0, {Endpoint::finite(1.0), Endpoint::finite(1.0)}},
        {"constant circle", 50000000.0, {Endpoint::finite(0.6236), Endpoint::finite(1.6036)}},
    };
}

inline bool cell_matches(const Endpoint& got, const Endpoint& want) {
    if (got.marker != want.marker) return false;
    return !got.is_finite() || std::abs(got.value - want.value) <= kCellTolerance;
}

/// Names of cells of `row` that disagree with `ref`; empty when it matches.
inline std::vector<std::string> mismatches(const Row& row, const ReferenceRow& ref) {
    std::vector<std::string> bad;
    if (std::abs(row.profile.market_cost - ref.market_cost) > kCellTolerance) bad.push_back("market cost");
    if (!cell_matches(row.profile.ratio_interval.low, ref.ratio.low)) bad.push_back("ratio low");
    if (!cell_matches(row.profile.ratio_interval.high, ref.ratio.high)) bad.push_back("ratio high");
    const Interval slope = ref.ratio.negated();
    if (!cell_matches(row.profile.slope_interval.low, slope.low)) bad.push_back("slope low");
    if (!cell_matches(row.profile.slope_interval.high, slope.high)) bad.push_back("slope high");
    return bad;
}

}  // namespace amm::table1

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amm/curves.hpp"
#include "amm/engine.hpp"
#include "amm/errors.hpp"
#include "amm/solver.hpp"

namespace amm {

/// Interval endpoint that may be an explicit limit marker instead of a number.
struct Endpoint {
    enum class Marker { NONE, ZERO_PLUS, ZERO_MINUS, PLUS_INFINITY, MINUS_INFINITY };

    double value = 0.0;
    Marker marker = Marker::NONE;

    static Endpoint finite(double v) { return {v, Marker::NONE}; }
    static Endpoint zero_plus() { return {0.0, Marker::ZERO_PLUS}; }
    static Endpoint plus_infinity() { return {0.0, Marker::PLUS_INFINITY}; }

    bool is_finite() const { return marker == Marker::NONE; }

    Endpoint negated() const {
        switch (marker) {
            case Marker::NONE: return finite(-value);
            case Marker::ZERO_PLUS: return {0.0, Marker::ZERO_MINUS};
            case Marker::ZERO_MINUS: return {0.0, Marker::ZERO_PLUS};
            case Marker::PLUS_INFINITY: return {0.0, Marker::MINUS_INFINITY};
            case Marker::MINUS_INFINITY: return {0.0, Marker::PLUS_INFINITY};
        }
        return *this;
    }

    // Position on the extended line; markers sit just past the finite values they bound.
    double order_key() const {
        switch (marker) {
            case Marker::NONE: return value;
            case Marker::ZERO_PLUS:
            case Marker::ZERO_MINUS: return 0.0;
            case Marker::PLUS_INFINITY: return INFINITY;
            case Marker::MINUS_INFINITY: return -INFINITY;
        }
        return value;
    }

    friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

inline std::string to_string(const Endpoint& e) {
    switch (e.marker) {
        case Endpoint::Marker::ZERO_PLUS: return "0+";
        case Endpoint::Marker::ZERO_MINUS: return "0-";
        case Endpoint::Marker::PLUS_INFINITY: return "inf";
        case Endpoint::Marker::MINUS_INFINITY: return "-inf";
        case Endpoint::Marker::NONE: break;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", e.value);
    return buf;
}

struct Interval {
    Endpoint low;
    Endpoint high;

    bool degenerate() const { return low == high; }
    /// {-high, -low}
    Interval negated() const { return {high.negated(), low.negated()}; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct MarketProfile {
    double market_cost = 0.0;
    Interval ratio_interval;
    Interval slope_interval;
};

struct CurvePoint {
    double x;
    double y;
};

struct CurveSample {
    std::vector<CurvePoint> points;
    double cost_value = 0.0;
};

struct ProbabilityEstimate {
    std::vector<double> p;
};

namespace detail {

inline Endpoint ratio_endpoint(const CurveSpec& spec, const Quantities& q) {
    try {
        const double r = price_ratio(spec, q);
        if (r == 0.0) return Endpoint::zero_plus();
        if (std::isinf(r)) return Endpoint::plus_infinity();
        return Endpoint::finite(r);
    } catch (const SingularSlope&) {
        return Endpoint::plus_infinity();
    }
}

}  // namespace detail

/// Price-ratio and slope ranges of the level set through a two-token market.
/// The ratio is taken at the two axis intersections of the locus; an axis the
/// locus never reaches contributes the limit marker (0+ or inf).
inline MarketProfile profile(const MarketState& m, const SolverConfig& cfg = {}) {
    if (m.shares.size() != 2) throw DomainError("profile needs a two-token market");
    const double k = m.cost_value;

    // Placeholder 1.0 for the coordinate being solved; only its neighbours matter.
    Endpoint at_x_axis_end;  // x drained
    try {
        const double y = solve_coordinate(m.spec, Quantities{0.0, 1.0}, 1, k, cfg);
        at_x_axis_end = detail::ratio_endpoint(m.spec, {0.0, y});
    } catch (const InsufficientLiquidity&) {
        at_x_axis_end = Endpoint::plus_infinity();
    }
    Endpoint at_y_axis_end;  // y drained
    try {
        const double x = solve_coordinate(m.spec, Quantities{1.0, 0.0}, 0, k, cfg);
        at_y_axis_end = detail::ratio_endpoint(m.spec, {x, 0.0});
    } catch (const InsufficientLiquidity&) {
        at_y_axis_end = Endpoint::zero_plus();
    }

    MarketProfile out;
    out.market_cost = k;
    if (at_x_axis_end.order_key() <= at_y_axis_end.order_key())
        out.ratio_interval = {at_x_axis_end, at_y_axis_end};
    else
        out.ratio_interval = {at_y_axis_end, at_x_axis_end};
    out.slope_interval = out.ratio_interval.negated();
    return out;
}

/// Points (x, y) on the level set C = cost_value for a uniform grid of x.
inline CurveSample sample_curve(const CurveSpec& spec, double cost_value, double x_min, double x_max,
                                std::size_t n_points, const SolverConfig& cfg = {}) {
    if (n_points < 2) throw DomainError("need at least two sample points");
    if (!(x_min >= 0.0) || !(x_max > x_min) || !std::isfinite(x_max))
        throw DomainError("sample range must satisfy 0 <= x_min < x_max");
    CurveSample out;
    out.cost_value = cost_value;
    out.points.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double x = i + 1 == n_points ? x_max
                                           : x_min + (x_max - x_min) * static_cast<double>(i) /
                                                         static_cast<double>(n_points - 1);
        try {
            out.points.push_back({x, solve_coordinate(spec, Quantities{x, 1.0}, 1, cost_value, cfg)});
        } catch (const InsufficientLiquidity&) {
            throw DomainError("x = " + std::to_string(x) + " is outside the locus");
        }
    }
    return out;
}

inline void write_csv(std::ostream& os, const CurveSample& sample) {
    os << "x,y\n";
    char buf[64];
    for (const auto& p : sample.points) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", p.x, p.y);
        os << buf;
    }
}

inline void validate(const ProbabilityEstimate& est) {
    if (est.p.empty()) throw DomainError("empty probability vector");
    double total = 0.0;
    for (double v : est.p) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("probabilities must be finite and >= 0");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("probabilities must sum to 1");
}

/// Logarithmic scoring rule: b ln(2 p(outcome)).
inline double scoring_reward(const ProbabilityEstimate& est, std::size_t outcome, double b) {
    validate(est);
    if (outcome >= est.p.size()) throw DomainError("outcome index out of range");
    if (!(b > 0.0)) throw DomainError("b must be > 0");
    if (est.p[outcome] == 0.0) throw DomainError("zero-probability outcome has unbounded penalty");
    return b * std::log(2.0 * est.p[outcome]);
}

/// Expected gain of moving the market estimate from p1 to p2 when p2 is the
/// truth: b * KL(p2 || p1).
inline double expected_profit(const ProbabilityEstimate& p1, const ProbabilityEstimate& p2, double b) {
    validate(p1);
    validate(p2);
    if (p1.p.size() != p2.p.size()) throw DomainError("estimates have different outcome spaces");
    if (!(b > 0.0)) throw DomainError("b must be > 0");
    double d = 0.0;
    for (std::size_t i = 0; i < p1.p.size(); ++i) {
        if (p2.p[i] == 0.0) continue;
        if (p1.p[i] == 0.0) throw DomainError("p2 is not absolutely continuous with respect to p1");
        d += p2.p[i] * std::log(p2.p[i] / p1.p[i]);
    }
    return b * d;
}

/// One labelled level set for side-by-side comparison plots.
struct NamedLocus {
    std::string label;
    CurveSpec spec;
    double cost_value;
};

/// The five comparison loci through (1000, 1000), listed bottom-up as they
/// stack away from the common point.
inline std::vector<NamedLocus> comparison_loci() {
    const Quantities q0{1000.0, 1000.0};
    std::vector<NamedLocus> out;
    for (auto [label, spec] : std::vector<std::pair<std::string, CurveSpec>>{
             {"ls_lmsr", CurveSpec::ls_lmsr(1.0)},
             {"concave_circle", CurveSpec::circle(-6000.0, Branch::CONCAVE_UPPER)},
             {"constant_sum", CurveSpec::constant_sum()},
             {"convex_circle", CurveSpec::circle(6000.0, Branch::CONVEX_LOWER)},
             {"constant_product", CurveSpec::constant_product()},
         }) {
        out.push_back({label, spec, cost(spec, q0)});
    }
    return out;
}

}  // namespace amm

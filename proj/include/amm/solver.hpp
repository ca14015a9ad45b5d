#pragma once

// Swap quoting on a constant-cost locus: given an exact input (or output)
// amount, find the counter amount that leaves C(q) unchanged.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amm/curves.hpp"
#include "amm/errors.hpp"

namespace amm {

struct SolverConfig {
    double abs_tol = 1e-12;  // relative to max(1, |C|)
    int max_iter = 200;
    /// A trade that empties the out-reserve is accepted when the drained
    /// state's cost is within drain_tol * max(1, |C|) of the target.
    double drain_tol = 1e-9;
};

struct SwapProblem {
    CurveSpec spec;
    Quantities q;
    std::size_t token_in = 0;
    std::size_t token_out = 1;
    double amount = 0.0;  // amount_in for swap_exact_in, amount_out for swap_exact_out
    /// Level set to stay on; defaults to cost(spec, q).
    std::optional<double> target_cost;
};

namespace detail {

struct QuadraticRoots {
    double lower;
    double upper;
};

// Roots of v^2 + B v + C = 0; nullopt when the discriminant is negative
// beyond a 1e-9 relative slack (which is read as a double root).
inline std::optional<QuadraticRoots> solve_monic_quadratic(double B, double C) {
    double disc = B * B - 4.0 * C;
    if (disc < 0.0) {
        if (disc >= -1e-9 * std::max(1.0, B * B)) {
            disc = 0.0;
        } else {
            return std::nullopt;
        }
    }
    const double sq = std::sqrt(disc);
    const double t = -0.5 * (B + std::copysign(sq, B));
    if (t == 0.0) return QuadraticRoots{0.0, 0.0};
    const double r1 = t;
    const double r2 = C / t;
    return QuadraticRoots{std::min(r1, r2), std::max(r1, r2)};
}

// Coefficients of the ellipse equation viewed as a monic quadratic in q[idx].
inline std::pair<double, double> ellipse_coefficients(const CurveSpec& spec, std::span<const double> q,
                                                      std::size_t idx, double target) {
    const double a = spec.center_a;
    double others = 0.0;
    double rest = 0.0;
    double cross = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (k == idx) continue;
        others += q[k];
        rest += (q[k] - a) * (q[k] - a);
        for (std::size_t l = k + 1; l < q.size(); ++l)
            if (l != idx) cross += q[k] * q[l];
    }
    rest += spec.cross_b * cross;
    return {spec.cross_b * others - 2.0 * a, a * a + rest - target};
}

inline double with_coordinate_cost(const CurveSpec& spec, std::vector<double>& work, std::size_t idx, double v) {
    work[idx] = v;
    return cost(spec, work);
}

// Increasing-in-v bisection used for LS-LMSR.
inline double bisect_coordinate(const CurveSpec& spec, std::span<const double> q, std::size_t idx, double target,
                                const SolverConfig& cfg, std::optional<double> upper) {
    std::vector<double> work(q.begin(), q.end());
    double others = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k)
        if (k != idx) others += q[k];
    auto f = [&](double v) {
        if (v == 0.0 && others == 0.0) return -target;
        return with_coordinate_cost(spec, work, idx, v) - target;
    };

    double lo = 0.0;
    const double f_lo = f(lo);
    if (f_lo > 0.0) return std::nan("");  // every nonnegative v overshoots
    if (f_lo == 0.0) return 0.0;

    double hi = upper.value_or(std::max({1.0, 2.0 * q[idx], std::abs(target)}));
    int expansions = 0;
    while (f(hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++expansions > 1100 || !std::isfinite(hi)) throw NoConvergence("could not bracket the locus");
    }

    double f_lower = f(lo);
    double f_upper = f(hi);
    int iter = 0;
    for (; iter < cfg.max_iter; ++iter) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (fm < 0.0) {
            lo = mid;
            f_lower = fm;
        } else {
            hi = mid;
            f_upper = fm;
        }
    }
    const double best = std::abs(f_lower) <= std::abs(f_upper) ? lo : hi;
    const double residual = std::min(std::abs(f_lower), std::abs(f_upper));
    if (iter == cfg.max_iter && residual > cfg.abs_tol * std::max(1.0, std::abs(target)))
        throw NoConvergence("bisection exhausted " + std::to_string(cfg.max_iter) + " iterations");
    return best;
}

}  // namespace detail

/// Value of q[idx] that puts q on the level set C = target with every other
/// coordinate fixed. For ELLIPSE the root on spec.branch is taken. `upper`
/// is an optional known bracket end for the bisection path. Throws
/// InsufficientLiquidity when no nonnegative solution exists.
inline double solve_coordinate(const CurveSpec& spec, std::span<const double> q, std::size_t idx, double target,
                               const SolverConfig& cfg = {}, std::optional<double> upper = std::nullopt) {
    detail::check_domain(spec, q);
    if (idx >= q.size()) throw DomainError("token index out of range");
    const std::size_t n = q.size();
    double v = std::nan("");

    switch (spec.family) {
        case Family::LMSR: {
            // v = b ln(e^{K/b} - sum_k e^{q_k/b}), written so e^{K/b} never materialises.
            const double b = spec.b_liquidity;
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != idx) s += std::exp((q[k] - target) / b);
            if (s < 1.0) v = target + b * std::log1p(-s);
            break;
        }
        case Family::LS_LMSR:
            v = detail::bisect_coordinate(spec, q, idx, target, cfg, upper);
            break;
        case Family::CONSTANT_PRODUCT: {
            double p = 1.0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != idx) p *= q[k];
            if (p > 0.0) v = target / p;
            break;
        }
        case Family::CONSTANT_MEAN: {
            double p = 1.0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != idx) p *= std::pow(q[k], spec.weights[k]);
            if (p > 0.0) v = std::pow(target / p, 1.0 / spec.weights[idx]);
            break;
        }
        case Family::CONSTANT_SUM: {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                if (k != idx) s += q[k];
            v = target - s;
            break;
        }
        case Family::ELLIPSE: {
            const auto [B, C] = detail::ellipse_coefficients(spec, q, idx, target);
            if (const auto roots = detail::solve_monic_quadratic(B, C))
                v = spec.branch == Branch::CONVEX_LOWER ? roots->lower : roots->upper;
            break;
        }
    }

    if (std::isinf(v)) throw InsufficientLiquidity("locus has no finite point on this axis");
    if (!(v >= 0.0)) {
        // Draining: accept v = 0 if the drained state sits on the level set.
        std::vector<double> probe(q.begin(), q.end());
        probe[idx] = 0.0;
        try {
            if (std::abs(cost(spec, probe) - target) <= cfg.drain_tol * std::max(1.0, std::abs(target))) return 0.0;
        } catch (const DomainError&) {
        }
        throw InsufficientLiquidity("no nonnegative reserve keeps the cost constant");
    }
    return v;
}

/// True when q sits on spec.branch of an ELLIPSE level set, checked one
/// coordinate at a time. Non-ellipse families have a single branch.
inline bool lies_on_branch(const CurveSpec& spec, std::span<const double> q) {
    if (spec.family != Family::ELLIPSE) return true;
    const double target = cost(spec, q);
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto [B, C] = detail::ellipse_coefficients(spec, q, i, target);
        const auto roots = detail::solve_monic_quadratic(B, C);
        if (!roots) return false;
        const double root = spec.branch == Branch::CONVEX_LOWER ? roots->lower : roots->upper;
        if (std::abs(root - q[i]) > 1e-6 * std::max({1.0, std::abs(q[i]), std::abs(B)})) return false;
    }
    return true;
}

namespace detail {

inline void check_problem(const SwapProblem& p) {
    if (p.token_in >= p.q.size() || p.token_out >= p.q.size()) throw DomainError("token index out of range");
    if (p.token_in == p.token_out) throw DomainError("token_in and token_out must differ");
    if (!(p.amount >= 0.0) || !std::isfinite(p.amount)) throw DomainError("swap amount must be finite and >= 0");
}

inline void check_conservation(const CurveSpec& spec, std::span<const double> after, double target,
                               const SolverConfig& cfg, bool drained) {
    const double scale = std::max(1.0, std::abs(target));
    const double tol = (drained ? std::max(cfg.abs_tol, cfg.drain_tol) : cfg.abs_tol) * scale;
    const double err = std::abs(cost(spec, after) - target);
    if (!(err <= tol)) throw NoConvergence("cost drift " + std::to_string(err) + " exceeds tolerance");
}

// Slack for counter amounts that land a hair on the wrong side of zero.
inline double clamp_counter(double amount, double reference) {
    if (amount >= 0.0) return amount;
    if (amount >= -1e-9 * std::max(1.0, reference)) return 0.0;
    throw DomainError("trade would move against the locus");
}

}  // namespace detail

/// Amount of token_out released for exactly `p.amount` of token_in.
inline double swap_exact_in(const SwapProblem& p, const SolverConfig& cfg = {}) {
    detail::check_problem(p);
    const double target = p.target_cost.value_or(cost(p.spec, p.q));
    if (p.amount == 0.0) return 0.0;

    std::vector<double> after = p.q;
    after[p.token_in] += p.amount;
    if (!std::isfinite(after[p.token_in])) throw DomainError("input reserve overflows");
    const double reserve = p.q[p.token_out];
    const double new_out = solve_coordinate(p.spec, after, p.token_out, target, cfg, reserve);
    after[p.token_out] = new_out;
    detail::check_conservation(p.spec, after, target, cfg, new_out == 0.0);
    return detail::clamp_counter(reserve - new_out, reserve);
}

/// Amount of token_in needed to receive exactly `p.amount` of token_out.
inline double swap_exact_out(const SwapProblem& p, const SolverConfig& cfg = {}) {
    detail::check_problem(p);
    const double target = p.target_cost.value_or(cost(p.spec, p.q));
    if (p.amount == 0.0) return 0.0;
    if (p.amount > p.q[p.token_out]) throw InsufficientLiquidity("requested output exceeds the reserve");

    std::vector<double> after = p.q;
    after[p.token_out] -= p.amount;
    const double new_in = solve_coordinate(p.spec, after, p.token_in, target, cfg);
    after[p.token_in] = new_in;
    detail::check_conservation(p.spec, after, target, cfg, false);
    return detail::clamp_counter(new_in - p.q[p.token_in], p.q[p.token_in]);
}

}  // namespace amm

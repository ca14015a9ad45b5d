#pragma once

// Cost, marginal price and tangent slope for the six supported cost-function
// families. Everything here is pure; a CurveSpec is a plain value.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amm/errors.hpp"

namespace amm {

enum class Family { LMSR, LS_LMSR, CONSTANT_PRODUCT, CONSTANT_MEAN, CONSTANT_SUM, ELLIPSE };

/// Which arc of an ellipse/circle is the trading locus. CONVEX_LOWER is the
/// arc nearer the origin (smaller root), CONCAVE_UPPER the one further away.
enum class Branch { CONVEX_LOWER, CONCAVE_UPPER };

using Quantities = std::vector<double>;

inline constexpr std::string_view to_string(Family f) {
    switch (f) {
        case Family::LMSR: return "LMSR";
        case Family::LS_LMSR: return "LS_LMSR";
        case Family::CONSTANT_PRODUCT: return "CONSTANT_PRODUCT";
        case Family::CONSTANT_MEAN: return "CONSTANT_MEAN";
        case Family::CONSTANT_SUM: return "CONSTANT_SUM";
        case Family::ELLIPSE: return "ELLIPSE";
    }
    return "?";
}

inline constexpr std::string_view to_string(Branch b) {
    return b == Branch::CONVEX_LOWER ? "CONVEX_LOWER" : "CONCAVE_UPPER";
}

inline std::optional<Family> parse_family(std::string_view s) {
    for (auto f : {Family::LMSR, Family::LS_LMSR, Family::CONSTANT_PRODUCT, Family::CONSTANT_MEAN,
                   Family::CONSTANT_SUM, Family::ELLIPSE}) {
        if (to_string(f) == s) return f;
    }
    return std::nullopt;
}

inline std::optional<Branch> parse_branch(std::string_view s) {
    if (s == "CONVEX_LOWER") return Branch::CONVEX_LOWER;
    if (s == "CONCAVE_UPPER") return Branch::CONCAVE_UPPER;
    return std::nullopt;
}

/// Tagged description of one cost-function family. Only the parameters of
/// `family` are meaningful; build instances through the named constructors.
struct CurveSpec {
    Family family = Family::CONSTANT_PRODUCT;
    double b_liquidity = 1.0;  // LMSR b
    double alpha = 1.0;        // LS-LMSR b(q) = alpha * sum(q)
    std::vector<double> weights;  // CONSTANT_MEAN exponents
    double center_a = 0.0;     // ELLIPSE a
    double cross_b = 0.0;      // ELLIPSE cross-term coefficient
    Branch branch = Branch::CONVEX_LOWER;

    static CurveSpec lmsr(double b) {
        CurveSpec s;
        s.family = Family::LMSR;
        s.b_liquidity = b;
        return s;
    }
    static CurveSpec ls_lmsr(double alpha) {
        CurveSpec s;
        s.family = Family::LS_LMSR;
        s.alpha = alpha;
        return s;
    }
    static CurveSpec constant_product() { return CurveSpec{}; }
    static CurveSpec constant_mean(std::vector<double> w) {
        CurveSpec s;
        s.family = Family::CONSTANT_MEAN;
        s.weights = std::move(w);
        return s;
    }
    static CurveSpec constant_sum() {
        CurveSpec s;
        s.family = Family::CONSTANT_SUM;
        return s;
    }
    static CurveSpec ellipse(double a, double b, Branch br = Branch::CONVEX_LOWER) {
        CurveSpec s;
        s.family = Family::ELLIPSE;
        s.center_a = a;
        s.cross_b = b;
        s.branch = br;
        return s;
    }
    /// (q_i - a)^2 summed, no cross term.
    static CurveSpec circle(double a, Branch br = Branch::CONVEX_LOWER) { return ellipse(a, 0.0, br); }

    friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

inline void validate(const CurveSpec& spec) {
    switch (spec.family) {
        case Family::LMSR:
            if (!(spec.b_liquidity > 0.0) || !std::isfinite(spec.b_liquidity))
                throw DomainError("LMSR requires b_liquidity > 0");
            break;
        case Family::LS_LMSR:
            if (!(spec.alpha > 0.0) || !std::isfinite(spec.alpha)) throw DomainError("LS_LMSR requires alpha > 0");
            break;
        case Family::CONSTANT_MEAN:
            if (spec.weights.empty()) throw DomainError("CONSTANT_MEAN requires weights");
            for (double w : spec.weights)
                if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("CONSTANT_MEAN weights must be > 0");
            break;
        case Family::ELLIPSE:
            if (!std::isfinite(spec.center_a) || !std::isfinite(spec.cross_b))
                throw DomainError("ELLIPSE parameters must be finite");
            break;
        case Family::CONSTANT_PRODUCT:
        case Family::CONSTANT_SUM:
            break;
    }
}

namespace detail {

inline void check_domain(const CurveSpec& spec, std::span<const double> q) {
    validate(spec);
    if (q.size() < 2) throw DomainError("quantity vector needs at least two tokens");
    for (double v : q) {
        if (!std::isfinite(v)) throw DomainError("quantity is not finite");
        if (v < 0.0) throw DomainError("quantity is negative");
    }
    if (spec.family == Family::CONSTANT_MEAN && spec.weights.size() != q.size())
        throw DomainError("CONSTANT_MEAN weight count does not match token count");
    if (spec.family == Family::LS_LMSR && std::accumulate(q.begin(), q.end(), 0.0) <= 0.0)
        throw DomainError("LS_LMSR is singular at sum(q) = 0");
}

// b * ln(sum exp(q_i / b)), shifted by max(q).
inline double log_sum_exp(std::span<const double> q, double b) {
    const double m = *std::max_element(q.begin(), q.end());
    double acc = 0.0;
    for (double v : q) acc += std::exp((v - m) / b);
    return m + b * std::log(acc);
}

inline std::vector<double> softmax(std::span<const double> q, double b) {
    const double m = *std::max_element(q.begin(), q.end());
    std::vector<double> w(q.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        w[i] = std::exp((q[i] - m) / b);
        acc += w[i];
    }
    for (double& v : w) v /= acc;
    return w;
}

inline double sum(std::span<const double> q) { return std::accumulate(q.begin(), q.end(), 0.0); }

}  // namespace detail

/// C(q) for the family described by `spec`.
inline double cost(const CurveSpec& spec, std::span<const double> q) {
    detail::check_domain(spec, q);
    switch (spec.family) {
        case Family::LMSR:
            return detail::log_sum_exp(q, spec.b_liquidity);
        case Family::LS_LMSR:
            return detail::log_sum_exp(q, spec.alpha * detail::sum(q));
        case Family::CONSTANT_PRODUCT: {
            double p = 1.0;
            for (double v : q) p *= v;
            return p;
        }
        case Family::CONSTANT_MEAN: {
            double p = 1.0;
            for (std::size_t i = 0; i < q.size(); ++i) p *= std::pow(q[i], spec.weights[i]);
            return p;
        }
        case Family::CONSTANT_SUM:
            return detail::sum(q);
        case Family::ELLIPSE: {
            const double a = spec.center_a;
            double sq = 0.0;
            for (double v : q) sq += (v - a) * (v - a);
            // Each unordered pair counted once.
            double cross = 0.0;
            for (std::size_t i = 0; i < q.size(); ++i)
                for (std::size_t j = i + 1; j < q.size(); ++j) cross += q[i] * q[j];
            return sq + spec.cross_b * cross;
        }
    }
    return 0.0;
}

/// Full gradient of C at q.
inline std::vector<double> gradient(const CurveSpec& spec, std::span<const double> q) {
    detail::check_domain(spec, q);
    const std::size_t n = q.size();
    std::vector<double> g(n);
    switch (spec.family) {
        case Family::LMSR:
            return detail::softmax(q, spec.b_liquidity);
        case Family::LS_LMSR: {
            // dC/dq_i = C/s + w_i - sum_j q_j w_j / s, with w the softmax at b = alpha*s.
            const double s = detail::sum(q);
            const double b = spec.alpha * s;
            const double c = detail::log_sum_exp(q, b);
            const auto w = detail::softmax(q, b);
            double qw = 0.0;
            for (std::size_t j = 0; j < n; ++j) qw += q[j] * w[j];
            for (std::size_t i = 0; i < n; ++i) g[i] = c / s + w[i] - qw / s;
            return g;
        }
        case Family::CONSTANT_PRODUCT:
            for (std::size_t i = 0; i < n; ++i) {
                double p = 1.0;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) p *= q[j];
                g[i] = p;
            }
            return g;
        case Family::CONSTANT_MEAN:
            for (std::size_t i = 0; i < n; ++i) {
                double p = spec.weights[i] * std::pow(q[i], spec.weights[i] - 1.0);
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) p *= std::pow(q[j], spec.weights[j]);
                g[i] = p;
            }
            return g;
        case Family::CONSTANT_SUM:
            std::fill(g.begin(), g.end(), 1.0);
            return g;
        case Family::ELLIPSE: {
            const double total = detail::sum(q);
            for (std::size_t i = 0; i < n; ++i)
                g[i] = 2.0 * (q[i] - spec.center_a) + spec.cross_b * (total - q[i]);
            return g;
        }
    }
    return g;
}

/// Raw signed partial derivative dC/dq_i.
inline double price(const CurveSpec& spec, std::span<const double> q, std::size_t i) {
    if (i >= q.size()) throw DomainError("token index out of range");
    return gradient(spec, q)[i];
}

inline double price_magnitude(const CurveSpec& spec, std::span<const double> q, std::size_t i) {
    return std::abs(price(spec, q, i));
}

/// ln|P_i|. For LMSR this is (q_i - C)/b, finite even where P_i underflows.
inline double log_price(const CurveSpec& spec, std::span<const double> q, std::size_t i) {
    if (i >= q.size()) throw DomainError("token index out of range");
    if (spec.family == Family::LMSR) return (q[i] - cost(spec, q)) / spec.b_liquidity;
    return std::log(price_magnitude(spec, q, i));
}

/// P_x / P_y on a two-token state.
inline double price_ratio(const CurveSpec& spec, std::span<const double> q) {
    if (q.size() != 2) throw DomainError("price ratio is defined for two-token states only");
    const auto g = gradient(spec, q);
    if (g[1] == 0.0) throw SingularSlope("P_y vanishes: vertical tangent");
    return g[0] / g[1];
}

/// dy/dx along the constant-cost locus through a two-token state.
inline double tangent_slope(const CurveSpec& spec, std::span<const double> q) { return -price_ratio(spec, q); }

}  // namespace amm

#pragma once

// Reference computations that deliberately avoid the library's code paths:
// direct (unshifted) long-double formulas, grid scans and plain bisection.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace amm_test {

using Real = long double;

/// LS-LMSR cost straight from the definition, no max-shift.
inline Real ls_lmsr_cost(const std::vector<Real>& q, Real alpha) {
    Real s = 0;
    for (Real v : q) s += v;
    const Real b = alpha * s;
    Real acc = 0;
    for (Real v : q) acc += std::exp(v / b);
    return b * std::log(acc);
}

inline Real ls_lmsr_cost(Real x, Real y, Real alpha) { return ls_lmsr_cost(std::vector<Real>{x, y}, alpha); }

/// Root of a continuous g on [lo, hi]: scan `cells` equal cells for a sign
/// change, then bisect that cell until it is narrower than `width`.
inline Real grid_bisect(const std::function<Real(Real)>& g, Real lo, Real hi, int cells = 1000,
                        Real width = 1e-10L) {
    Real a = lo;
    Real ga = g(a);
    if (ga == 0) return a;
    for (int c = 1; c <= cells; ++c) {
        const Real b = lo + (hi - lo) * c / cells;
        const Real gb = g(b);
        if (gb == 0) return b;
        if ((ga < 0) != (gb < 0)) {
            Real left = a;
            Real right = b;
            while (right - left > width) {
                const Real m = (left + right) / 2;
                if ((g(m) < 0) == (ga < 0))
                    left = m;
                else
                    right = m;
            }
            return (left + right) / 2;
        }
        a = b;
        ga = gb;
    }
    throw std::runtime_error("grid_bisect: no sign change");
}

/// Output of token 1 for `dx` of token 0 on an LS-LMSR market at (x, y).
inline Real ls_lmsr_exact_in_oracle(Real x, Real y, Real dx, Real alpha) {
    const Real k = ls_lmsr_cost(x, y, alpha);
    const Real y_new = grid_bisect([&](Real v) { return ls_lmsr_cost(x + dx, v, alpha) - k; }, 0, y);
    return y - y_new;
}

/// Token-1 input needed to take `dx_out` of token 0 from an LS-LMSR market.
inline Real ls_lmsr_exact_out_oracle(Real x, Real y, Real dx_out, Real alpha) {
    const Real k = ls_lmsr_cost(x, y, alpha);
    Real hi = 2 * y + 1;
    while (ls_lmsr_cost(x - dx_out, hi, alpha) < k) hi *= 2;
    const Real y_new = grid_bisect([&](Real v) { return ls_lmsr_cost(x - dx_out, v, alpha) - k; }, y, hi);
    return y_new - y;
}

/// Central difference of f along coordinate i with step h.
inline double central_difference(const std::function<double(const std::vector<double>&)>& f,
                                 std::vector<double> q, std::size_t i, double h) {
    const double x = q[i];
    q[i] = x + h;
    const double up = f(q);
    q[i] = x - h;
    const double down = f(q);
    return (up - down) / (2.0 * h);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }

private:
    std::mt19937_64 gen_;
};

}  // namespace amm_test

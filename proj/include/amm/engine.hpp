#pragma once

// Market lifecycle. The engine keeps reserves as internal shares; coins only
// appear at the boundary, via one coins-per-share scale per token.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "amm/curves.hpp"
#include "amm/errors.hpp"
#include "amm/solver.hpp"

namespace amm {

/// Relative tolerance for the cached-cost invariant.
inline constexpr double kCostInvariantTol = 1e-9;

struct MarketState {
    CurveSpec spec;
    Quantities shares;
    std::vector<double> scales;  // coins per share
    double cost_value = 0.0;

    std::vector<double> coins() const {
        std::vector<double> c(shares.size());
        for (std::size_t i = 0; i < shares.size(); ++i) c[i] = shares[i] * scales[i];
        return c;
    }

    friend bool operator==(const MarketState&, const MarketState&) = default;
};

struct TradeReceipt {
    std::size_t token_in = 0;
    std::size_t token_out = 1;
    double coins_in = 0.0;
    double coins_out = 0.0;
    double shares_in = 0.0;
    double shares_out = 0.0;
    double cost_before = 0.0;
    double cost_after = 0.0;
    double average_price = 0.0;  // coins_in / coins_out; 0 for an empty trade
};

struct Execution {
    MarketState market;
    TradeReceipt receipt;
};

struct RebasePlan {
    std::size_t token = 0;
    Quantities target_shares;
    std::vector<double> new_scales;
    std::vector<double> deposit_coins;
    // Snapshot of the market the plan was computed against.
    Quantities source_shares;
    std::vector<double> source_scales;
};

/// Throws InvariantViolation if the market breaks any stored invariant.
inline void check_invariants(const MarketState& m) {
    if (m.shares.size() != m.scales.size()) throw InvariantViolation("shares/scales length mismatch");
    for (double s : m.shares)
        if (!(s >= 0.0)) throw InvariantViolation("negative share reserve");
    for (double s : m.scales)
        if (!(s > 0.0)) throw InvariantViolation("non-positive scale");
    const double drift = std::abs(cost(m.spec, m.shares) - m.cost_value);
    if (!(drift <= kCostInvariantTol * std::max(1.0, std::abs(m.cost_value))))
        throw InvariantViolation("cost drifted from cached value by " + std::to_string(drift));
}

inline MarketState create_market(const CurveSpec& spec, std::span<const double> coin_deposits,
                                 std::span<const double> scales) {
    validate(spec);
    if (coin_deposits.size() < 2) throw DomainError("a market needs at least two tokens");
    if (coin_deposits.size() != scales.size()) throw DomainError("deposits and scales differ in length");
    MarketState m;
    m.spec = spec;
    m.scales.assign(scales.begin(), scales.end());
    m.shares.resize(coin_deposits.size());
    for (std::size_t i = 0; i < coin_deposits.size(); ++i) {
        if (!(scales[i] > 0.0) || !std::isfinite(scales[i])) throw DomainError("scales must be finite and > 0");
        if (!(coin_deposits[i] > 0.0) || !std::isfinite(coin_deposits[i]))
            throw DomainError("deposits must be finite and > 0");
        m.shares[i] = coin_deposits[i] / scales[i];
    }
    m.cost_value = cost(spec, m.shares);
    if (!lies_on_branch(spec, m.shares))
        throw GeometryError("initial state is not on the selected " + std::string(to_string(spec.branch)) + " arc");
    return m;
}

inline MarketState create_market(const CurveSpec& spec, std::span<const double> coin_deposits) {
    const std::vector<double> ones(coin_deposits.size(), 1.0);
    return create_market(spec, coin_deposits, ones);
}

namespace detail {

inline std::size_t other_token(const MarketState& m, std::size_t token) {
    if (m.shares.size() != 2) throw DomainError("implicit counter token needs a two-token market");
    if (token > 1) throw DomainError("token index out of range");
    return 1 - token;
}

inline Execution settle(const MarketState& m, std::size_t token_in, std::size_t token_out, double shares_in,
                        double shares_out) {
    Execution ex{m, {}};
    ex.market.shares[token_in] += shares_in;
    ex.market.shares[token_out] -= shares_out;
    for (double s : ex.market.shares)
        if (s < 0.0) throw NegativeReserveRejected("trade would leave a negative reserve");
    auto& r = ex.receipt;
    r.token_in = token_in;
    r.token_out = token_out;
    r.shares_in = shares_in;
    r.shares_out = shares_out;
    r.coins_in = shares_in * m.scales[token_in];
    r.coins_out = shares_out * m.scales[token_out];
    r.cost_before = m.cost_value;
    r.cost_after = cost(m.spec, ex.market.shares);
    r.average_price = r.coins_out > 0.0 ? r.coins_in / r.coins_out : 0.0;
    check_invariants(ex.market);
    return ex;
}

inline SwapProblem problem(const MarketState& m, std::size_t token_in, std::size_t token_out, double shares) {
    return SwapProblem{m.spec, m.shares, token_in, token_out, shares, m.cost_value};
}

inline void check_coins(double coins) {
    if (!(coins >= 0.0) || !std::isfinite(coins)) throw DomainError("coin amount must be finite and >= 0");
}

}  // namespace detail

/// Trade exactly `coins_in` of token_in for token_out; returns the new market.
inline Execution execute(const MarketState& m, std::size_t token_in, std::size_t token_out, double coins_in,
                         const SolverConfig& cfg = {}) {
    detail::check_coins(coins_in);
    if (token_in >= m.shares.size()) throw DomainError("token index out of range");
    const double shares_in = coins_in / m.scales[token_in];
    const double shares_out = swap_exact_in(detail::problem(m, token_in, token_out, shares_in), cfg);
    return detail::settle(m, token_in, token_out, shares_in, shares_out);
}

inline Execution execute(const MarketState& m, std::size_t token_in, double coins_in, const SolverConfig& cfg = {}) {
    return execute(m, token_in, detail::other_token(m, token_in), coins_in, cfg);
}

/// Pay whatever token_in is needed to receive exactly `coins_out` of token_out.
inline Execution execute_exact_out(const MarketState& m, std::size_t token_in, std::size_t token_out,
                                   double coins_out, const SolverConfig& cfg = {}) {
    detail::check_coins(coins_out);
    if (token_out >= m.shares.size()) throw DomainError("token index out of range");
    const double shares_out = coins_out / m.scales[token_out];
    const double shares_in = swap_exact_out(detail::problem(m, token_in, token_out, shares_out), cfg);
    return detail::settle(m, token_in, token_out, shares_in, shares_out);
}

/// Read-only preview of execute().
inline TradeReceipt quote(const MarketState& m, std::size_t token_in, std::size_t token_out, double coins_in,
                          const SolverConfig& cfg = {}) {
    return execute(m, token_in, token_out, coins_in, cfg).receipt;
}

inline TradeReceipt quote(const MarketState& m, std::size_t token_in, double coins_in, const SolverConfig& cfg = {}) {
    return execute(m, token_in, coins_in, cfg).receipt;
}

inline TradeReceipt quote_exact_out(const MarketState& m, std::size_t token_in, std::size_t token_out,
                                    double coins_out, const SolverConfig& cfg = {}) {
    return execute_exact_out(m, token_in, token_out, coins_out, cfg).receipt;
}

/// Plan a liquidity rebase of `token` in a two-token market: lift its shares
/// to match the other token's, and re-scale it so that one coin of the other
/// token is worth P_other / (R * P_token) coins of it, where R is the external
/// price of one `token` coin in coins of the other token.
inline RebasePlan plan_rebase(const MarketState& m, std::size_t token, double reference_price_ratio) {
    const std::size_t other = detail::other_token(m, token);
    if (!(reference_price_ratio > 0.0) || !std::isfinite(reference_price_ratio))
        throw DomainError("reference price ratio must be finite and > 0");

    const auto g = gradient(m.spec, m.shares);
    const double new_scale = g[other] / (reference_price_ratio * g[token]);
    if (!(new_scale > 0.0) || !std::isfinite(new_scale))
        throw DomainError("prices do not define a positive share scale");

    RebasePlan plan;
    plan.token = token;
    plan.source_shares = m.shares;
    plan.source_scales = m.scales;
    plan.target_shares = m.shares;
    plan.target_shares[token] = m.shares[other];
    plan.new_scales = m.scales;
    plan.new_scales[token] = new_scale;
    plan.deposit_coins.assign(m.shares.size(), 0.0);

    const double held = m.shares[token] * m.scales[token];
    const double needed = new_scale * plan.target_shares[token];
    double deposit = needed - held;
    if (deposit < 0.0) {
        if (deposit < -1e-12 * std::max(1.0, held))
            throw DomainError("rebase would withdraw " + std::to_string(-deposit) + " coins from the pool");
        deposit = 0.0;
    }
    plan.deposit_coins[token] = deposit;
    return plan;
}

inline MarketState apply_rebase(const MarketState& m, const RebasePlan& plan) {
    if (plan.source_shares != m.shares || plan.source_scales != m.scales)
        throw StalePlan("market changed since the rebase was planned");
    for (double d : plan.deposit_coins)
        if (d < 0.0) throw DomainError("rebase plans may not extract funds");
    MarketState next = m;
    next.shares = plan.target_shares;
    next.scales = plan.new_scales;
    next.cost_value = cost(m.spec, next.shares);
    check_invariants(next);
    return next;
}

}  // namespace amm

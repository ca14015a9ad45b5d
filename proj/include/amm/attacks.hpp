#pragma once

// Sandwich (front-running) simulation: attacker buys ahead of a victim's
// order, lets it execute at the worse price, then sells back just enough to
// recover the budget. Profit stays in the victim's out-token.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amm/curves.hpp"
#include "amm/engine.hpp"
#include "amm/errors.hpp"

namespace amm {

struct VictimOrder {
    std::size_t token_in = 0;
    double coins_in = 0.0;
};

struct FrontRunReport {
    double attacker_budget = 0.0;
    double attacker_bought = 0.0;
    double attacker_sold = 0.0;
    double attacker_profit = 0.0;
    double victim_received = 0.0;
    double victim_baseline = 0.0;
    double victim_slippage = 0.0;
};

/// Runs the three legs on a copy of `m`; `m` itself is never touched.
inline FrontRunReport simulate_frontrun(const MarketState& m, const VictimOrder& victim, double budget,
                                        const SolverConfig& cfg = {}) {
    if (m.shares.size() != 2) throw InfeasibleAttack("front-running is simulated on two-token markets");
    if (victim.token_in > 1) throw InfeasibleAttack("victim token index out of range");
    if (!(victim.coins_in >= 0.0) || !(budget >= 0.0)) throw InfeasibleAttack("amounts must be >= 0");
    const std::size_t in = victim.token_in;
    const std::size_t out = 1 - in;

    auto leg = [&](const char* name, auto&& fn) {
        try {
            return fn();
        } catch (const AmmError& e) {
            throw InfeasibleAttack(std::string(name) + " leg failed: " + e.kind() + ": " + e.what());
        }
    };

    FrontRunReport r;
    r.attacker_budget = budget;
    r.victim_baseline = leg("baseline", [&] { return quote(m, in, out, victim.coins_in, cfg).coins_out; });

    const Execution front = leg("front-run", [&] { return execute(m, in, out, budget, cfg); });
    const Execution middle = leg("victim", [&] { return execute(front.market, in, out, victim.coins_in, cfg); });
    const Execution back = leg("back-run", [&] { return execute_exact_out(middle.market, out, in, budget, cfg); });

    r.attacker_bought = front.receipt.coins_out;
    r.victim_received = middle.receipt.coins_out;
    r.attacker_sold = back.receipt.coins_in;
    r.attacker_profit = r.attacker_bought - r.attacker_sold;
    r.victim_slippage = r.victim_baseline - r.victim_received;
    return r;
}

struct FamilyOutcome {
    CurveSpec spec;
    std::optional<FrontRunReport> report;
    std::string error;  // kind and message when the scenario was infeasible
};

/// Same deposits, victim and budget against each curve; failures are recorded
/// per family rather than aborting the comparison.
inline std::vector<FamilyOutcome> compare_families(std::span<const CurveSpec> specs,
                                                   std::span<const double> deposits, const VictimOrder& victim,
                                                   double budget, const SolverConfig& cfg = {}) {
    std::vector<FamilyOutcome> out;
    out.reserve(specs.size());
    for (const auto& spec : specs) {
        FamilyOutcome o{spec, std::nullopt, {}};
        try {
            o.report = simulate_frontrun(create_market(spec, deposits), victim, budget, cfg);
        } catch (const AmmError& e) {
            o.error = std::string(e.kind()) + ": " + e.what();
        }
        out.push_back(std::move(o));
    }
    return out;
}

}  // namespace amm

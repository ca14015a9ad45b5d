#pragma once

// Scenario files: one market, an ordered list of actions, one JSON object per
// action written to the output stream (JSON Lines).

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "amm/analysis.hpp"
#include "amm/attacks.hpp"
#include "amm/engine.hpp"
#include "amm/errors.hpp"
#include "amm/io.hpp"

namespace amm::scenario {

using io::json;

struct SwapAction {
    std::size_t token_in = 0;
    std::optional<std::size_t> token_out;
    double coins_in = 0.0;
    bool preview = false;  // quote rather than swap
};

struct FrontRunAction {
    VictimOrder victim;
    double budget = 0.0;
};

struct RebaseAction {
    std::size_t token = 0;
    double reference_price_ratio = 1.0;
};

struct ProfileAction {};

struct SampleAction {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t points = 2;
    std::string out;
};

using Action = std::variant<SwapAction, FrontRunAction, RebaseAction, ProfileAction, SampleAction>;

struct Scenario {
    CurveSpec curve;
    std::vector<double> deposits;
    std::vector<double> scales;
    std::vector<Action> actions;
};

enum ExitCode : int {
    kOk = 0,
    kParseError = 2,
    kDomainError = 3,
    kInsufficientLiquidity = 4,
    kNoConvergence = 5,
};

inline int exit_code_for(const AmmError& e) {
    if (dynamic_cast<const ParseError*>(&e)) return kParseError;
    if (dynamic_cast<const InsufficientLiquidity*>(&e) || dynamic_cast<const NegativeReserveRejected*>(&e) ||
        dynamic_cast<const InfeasibleAttack*>(&e))
        return kInsufficientLiquidity;
    if (dynamic_cast<const NoConvergence*>(&e)) return kNoConvergence;
    return kDomainError;
}

inline Action parse_action(const json& j, std::size_t index) {
    const std::string where = "actions[" + std::to_string(index) + "]";
    if (!j.is_object()) throw ParseError(where + " must be a JSON object");
    const std::string type = io::get_string(j, "type", where);
    if (type == "swap" || type == "quote") {
        io::reject_unknown(j, {"type", "token_in", "token_out", "coins_in"}, where);
        SwapAction a;
        a.token_in = io::get_index(j, "token_in", where);
        if (j.contains("token_out")) a.token_out = io::get_index(j, "token_out", where);
        a.coins_in = io::get_number(j, "coins_in", where);
        a.preview = type == "quote";
        return a;
    }
    if (type == "frontrun") {
        io::reject_unknown(j, {"type", "victim", "budget"}, where);
        const json& v = io::require(j, "victim", where);
        const std::string vwhere = where + ".victim";
        io::reject_unknown(v, {"token_in", "coins_in"}, vwhere);
        FrontRunAction a;
        a.victim.token_in = io::get_index(v, "token_in", vwhere);
        a.victim.coins_in = io::get_number(v, "coins_in", vwhere);
        a.budget = io::get_number(j, "budget", where);
        return a;
    }
    if (type == "rebase") {
        io::reject_unknown(j, {"type", "token", "reference_price_ratio"}, where);
        return RebaseAction{io::get_index(j, "token", where), io::get_number(j, "reference_price_ratio", where)};
    }
    if (type == "profile") {
        io::reject_unknown(j, {"type"}, where);
        return ProfileAction{};
    }
    if (type == "sample") {
        io::reject_unknown(j, {"type", "x_min", "x_max", "points", "out"}, where);
        SampleAction a;
        a.x_min = io::get_number(j, "x_min", where);
        a.x_max = io::get_number(j, "x_max", where);
        a.points = io::get_index(j, "points", where);
        a.out = io::get_string(j, "out", where);
        return a;
    }
    throw ParseError("unknown action type '" + type + "' in " + where);
}

inline Scenario parse(const json& j) {
    io::reject_unknown(j, {"curve", "deposits", "scales", "actions"}, "scenario");
    Scenario s;
    s.curve = io::curve_from_json(io::require(j, "curve", "scenario"));
    s.deposits = io::get_number_array(j, "deposits", "scenario");
    s.scales = j.contains("scales") ? io::get_number_array(j, "scales", "scenario")
                                    : std::vector<double>(s.deposits.size(), 1.0);
    if (s.scales.size() != s.deposits.size()) throw ParseError("'scales' and 'deposits' differ in length");
    if (s.curve.family == Family::CONSTANT_MEAN && s.curve.weights.size() != s.deposits.size())
        throw ParseError("'weights' and 'deposits' differ in length");
    const json& actions = io::require(j, "actions", "scenario");
    if (!actions.is_array()) throw ParseError("'actions' must be an array");
    for (std::size_t i = 0; i < actions.size(); ++i) s.actions.push_back(parse_action(actions[i], i));
    return s;
}

inline Scenario load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file " + path.string());
    try {
        return parse(json::parse(in));
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

namespace detail {

struct Runner {
    MarketState market;

    std::size_t counter(std::size_t token_in, std::optional<std::size_t> token_out) const {
        if (token_out) return *token_out;
        if (market.shares.size() != 2) throw DomainError("token_out is required for markets with more than two tokens");
        if (token_in > 1) throw DomainError("token index out of range");
        return 1 - token_in;
    }

    json operator()(const SwapAction& a) {
        const auto ex = execute(market, a.token_in, counter(a.token_in, a.token_out), a.coins_in);
        json j{{"action", a.preview ? "quote" : "swap"}, {"receipt", io::to_json(ex.receipt)}};
        if (!a.preview) {
            market = ex.market;
            j["state"] = io::to_json(market);
        }
        return j;
    }
    json operator()(const FrontRunAction& a) {
        return {{"action", "frontrun"}, {"report", io::to_json(simulate_frontrun(market, a.victim, a.budget))}};
    }
    json operator()(const RebaseAction& a) {
        const auto plan = plan_rebase(market, a.token, a.reference_price_ratio);
        market = apply_rebase(market, plan);
        return {{"action", "rebase"}, {"plan", io::to_json(plan)}, {"state", io::to_json(market)}};
    }
    json operator()(const ProfileAction&) { return {{"action", "profile"}, {"profile", io::to_json(profile(market))}}; }
    json operator()(const SampleAction& a) {
        if (market.shares.size() != 2) throw DomainError("sampling needs a two-token market");
        const auto sample = sample_curve(market.spec, market.cost_value, a.x_min, a.x_max, a.points);
        std::ofstream f(a.out);
        if (!f) throw DomainError("cannot write " + a.out);
        write_csv(f, sample);
        return {{"action", "sample"},
                {"path", a.out},
                {"points", sample.points.size()},
                {"cost_value", io::round12(sample.cost_value)}};
    }
};

inline json error_object(const AmmError& e, std::optional<std::size_t> action) {
    json err{{"kind", e.kind()}, {"message", e.what()}};
    if (action) err["action"] = *action;
    return {{"error", err}};
}

}  // namespace detail

/// Executes the scenario, writing one line per action. Returns the process
/// exit code; on failure the last line is {"error": {...}}.
inline int run(const Scenario& s, std::ostream& out) {
    std::optional<detail::Runner> runner;
    try {
        runner.emplace(detail::Runner{create_market(s.curve, s.deposits, s.scales)});
    } catch (const AmmError& e) {
        out << detail::error_object(e, std::nullopt).dump() << '\n';
        return exit_code_for(e);
    }
    for (std::size_t i = 0; i < s.actions.size(); ++i) {
        try {
            out << std::visit(*runner, s.actions[i]).dump() << '\n';
        } catch (const AmmError& e) {
            out << detail::error_object(e, i).dump() << '\n';
            return exit_code_for(e);
        }
    }
    return kOk;
}

inline int run_file(const std::filesystem::path& path, std::ostream& out) {
    Scenario s;
    try {
        s = load(path);
    } catch (const ParseError& e) {
        out << detail::error_object(e, std::nullopt).dump() << '\n';
        return kParseError;
    }
    return run(s, out);
}

}  // namespace amm::scenario

#pragma once

// JSON encoding of the public types. Parsing is strict: unknown keys and
// missing required fields raise ParseError naming the field.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "amm/analysis.hpp"
#include "amm/attacks.hpp"
#include "amm/curves.hpp"
#include "amm/engine.hpp"
#include "amm/errors.hpp"

namespace amm::io {

using nlohmann::json;

/// Rounds to 12 significant digits so the emitted text is stable and short.
inline double round12(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline json number_array(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(round12(x));
    return a;
}

// --- strict field access ----------------------------------------------------

inline void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                           std::string_view where) {
    if (!obj.is_object()) throw ParseError(std::string(where) + " must be a JSON object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw ParseError("unknown key '" + key + "' in " + std::string(where));
    }
}

inline const json& require(const json& obj, const char* key, std::string_view where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError("missing required key '" + std::string(key) + "' in " + std::string(where));
    return *it;
}

inline double get_number(const json& obj, const char* key, std::string_view where) {
    const json& v = require(obj, key, where);
    if (!v.is_number()) throw ParseError("'" + std::string(key) + "' in " + std::string(where) + " must be a number");
    return v.get<double>();
}

inline double get_number_or(const json& obj, const char* key, std::string_view where, double fallback) {
    return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

inline std::size_t get_index(const json& obj, const char* key, std::string_view where) {
    const json& v = require(obj, key, where);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw ParseError("'" + std::string(key) + "' in " + std::string(where) + " must be a nonnegative integer");
    return v.get<std::size_t>();
}

inline std::vector<double> get_number_array(const json& obj, const char* key, std::string_view where) {
    const json& v = require(obj, key, where);
    if (!v.is_array()) throw ParseError("'" + std::string(key) + "' in " + std::string(where) + " must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ParseError("'" + std::string(key) + "' must contain only numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

inline std::string get_string(const json& obj, const char* key, std::string_view where) {
    const json& v = require(obj, key, where);
    if (!v.is_string()) throw ParseError("'" + std::string(key) + "' in " + std::string(where) + " must be a string");
    return v.get<std::string>();
}

// --- curves -----------------------------------------------------------------

/// {"family": "...", <that family's parameters>}. ELLIPSE takes center_a
/// (required), cross_b (default 0) and branch (default CONVEX_LOWER).
inline CurveSpec curve_from_json(const json& j) {
    constexpr std::string_view where = "curve";
    if (!j.is_object()) throw ParseError("curve must be a JSON object");
    const std::string name = get_string(j, "family", where);
    const auto family = parse_family(name);
    if (!family) throw ParseError("unknown curve family '" + name + "'");
    CurveSpec spec;
    switch (*family) {
        case Family::LMSR:
            reject_unknown(j, {"family", "b_liquidity"}, where);
            spec = CurveSpec::lmsr(get_number(j, "b_liquidity", where));
            break;
        case Family::LS_LMSR:
            reject_unknown(j, {"family", "alpha"}, where);
            spec = CurveSpec::ls_lmsr(get_number(j, "alpha", where));
            break;
        case Family::CONSTANT_PRODUCT:
            reject_unknown(j, {"family"}, where);
            spec = CurveSpec::constant_product();
            break;
        case Family::CONSTANT_MEAN:
            reject_unknown(j, {"family", "weights"}, where);
            spec = CurveSpec::constant_mean(get_number_array(j, "weights", where));
            break;
        case Family::CONSTANT_SUM:
            reject_unknown(j, {"family"}, where);
            spec = CurveSpec::constant_sum();
            break;
        case Family::ELLIPSE: {
            reject_unknown(j, {"family", "center_a", "cross_b", "branch"}, where);
            Branch branch = Branch::CONVEX_LOWER;
            if (j.contains("branch")) {
                const std::string b = get_string(j, "branch", where);
                const auto parsed = parse_branch(b);
                if (!parsed) throw ParseError("unknown branch '" + b + "'");
                branch = *parsed;
            }
            spec = CurveSpec::ellipse(get_number(j, "center_a", where), get_number_or(j, "cross_b", where, 0.0),
                                      branch);
            break;
        }
    }
    return spec;
}

inline json to_json(const CurveSpec& s) {
    json j{{"family", std::string(to_string(s.family))}};
    switch (s.family) {
        case Family::LMSR: j["b_liquidity"] = s.b_liquidity; break;
        case Family::LS_LMSR: j["alpha"] = s.alpha; break;
        case Family::CONSTANT_MEAN: j["weights"] = s.weights; break;
        case Family::ELLIPSE:
            j["center_a"] = s.center_a;
            j["cross_b"] = s.cross_b;
            j["branch"] = std::string(to_string(s.branch));
            break;
        case Family::CONSTANT_PRODUCT:
        case Family::CONSTANT_SUM: break;
    }
    return j;
}

// --- results ----------------------------------------------------------------

inline json to_json(const TradeReceipt& r) {
    return {{"token_in", r.token_in},
            {"token_out", r.token_out},
            {"coins_in", round12(r.coins_in)},
            {"coins_out", round12(r.coins_out)},
            {"shares_in", round12(r.shares_in)},
            {"shares_out", round12(r.shares_out)},
            {"cost_before", round12(r.cost_before)},
            {"cost_after", round12(r.cost_after)},
            {"average_price", round12(r.average_price)}};
}

inline json to_json(const MarketState& m) {
    return {{"shares", number_array(m.shares)},
            {"scales", number_array(m.scales)},
            {"coins", number_array(m.coins())},
            {"cost_value", round12(m.cost_value)}};
}

inline json to_json(const Endpoint& e) {
    if (e.is_finite()) return round12(e.value);
    return to_string(e);
}

inline json to_json(const Interval& i) { return json::array({to_json(i.low), to_json(i.high)}); }

inline json to_json(const MarketProfile& p) {
    return {{"market_cost", round12(p.market_cost)},
            {"ratio_interval", to_json(p.ratio_interval)},
            {"slope_interval", to_json(p.slope_interval)}};
}

inline json to_json(const FrontRunReport& r) {
    return {{"attacker_budget", round12(r.attacker_budget)},
            {"attacker_bought", round12(r.attacker_bought)},
            {"attacker_sold", round12(r.attacker_sold)},
            {"attacker_profit", round12(r.attacker_profit)},
            {"victim_received", round12(r.victim_received)},
            {"victim_baseline", round12(r.victim_baseline)},
            {"victim_slippage", round12(r.victim_slippage)}};
}

inline json to_json(const RebasePlan& p) {
    return {{"token", p.token},
            {"target_shares", number_array(p.target_shares)},
            {"new_scales", number_array(p.new_scales)},
            {"deposit_coins", number_array(p.deposit_coins)}};
}

inline json to_json(const FamilyOutcome& o) {
    json j{{"curve", to_json(o.spec)}};
    if (o.report)
        j["report"] = to_json(*o.report);
    else
        j["error"] = o.error;
    return j;
}

}  // namespace amm::io

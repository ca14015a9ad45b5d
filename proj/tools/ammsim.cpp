// ammsim: scenario runner and reproduction harness for the amm library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "amm/amm.hpp"
#include "amm/io.hpp"
#include "amm/scenario.hpp"
#include "amm/table1.hpp"

using namespace amm;
using amm::io::json;

namespace {

std::string interval_text(const Interval& i) {
    const char open = i.low.is_finite() ? '[' : '(';
    const char close = i.high.is_finite() ? ']' : ')';
    return open + to_string(i.low) + ", " + to_string(i.high) + close;
}

int cmd_table1(bool as_json) {
    const auto rows = table1::compute();
    const auto refs = table1::reference();
    json doc = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto bad = table1::mismatches(rows[i], refs[i]);
        if (as_json) {
            json r{{"name", rows[i].name}, {"curve", io::to_json(rows[i].spec)}, {"profile", io::to_json(rows[i].profile)}};
            r["mismatches"] = bad;
            doc.push_back(r);
            continue;
        }
        std::printf("%-17s cost %-14s ratio %-34s slope %-34s", rows[i].name.c_str(),
                    to_string(Endpoint::finite(rows[i].profile.market_cost)).c_str(),
                    interval_text(rows[i].profile.ratio_interval).c_str(),
                    interval_text(rows[i].profile.slope_interval).c_str());
        if (bad.empty()) {
            std::printf(" ok\n");
        } else {
            std::printf(" MISMATCH vs reference %s:", interval_text(refs[i].ratio).c_str());
            for (const auto& b : bad) std::printf(" [%s]", b.c_str());
            std::printf("\n");
        }
    }
    if (as_json) std::cout << doc.dump(2) << '\n';
    return 0;
}

struct CurveFlags {
    std::string family;
    std::optional<double> b_liquidity, alpha, center_a, cross_b;
    std::vector<double> weights;
    std::string branch;

    void attach(CLI::App* app) {
        app->add_option("--family", family, "LMSR, LS_LMSR, CONSTANT_PRODUCT, CONSTANT_MEAN, CONSTANT_SUM, ELLIPSE")
            ->required();
        app->add_option("--b-liquidity", b_liquidity);
        app->add_option("--alpha", alpha);
        app->add_option("--weights", weights)->delimiter(',');
        app->add_option("--center-a", center_a);
        app->add_option("--cross-b", cross_b);
        app->add_option("--branch", branch, "CONVEX_LOWER or CONCAVE_UPPER");
    }

    // Routed through the scenario parser so flag and file validation agree.
    CurveSpec spec() const {
        json j{{"family", family}};
        if (b_liquidity) j["b_liquidity"] = *b_liquidity;
        if (alpha) j["alpha"] = *alpha;
        if (!weights.empty()) j["weights"] = weights;
        if (center_a) j["center_a"] = *center_a;
        if (cross_b) j["cross_b"] = *cross_b;
        if (!branch.empty()) j["branch"] = branch;
        return io::curve_from_json(j);
    }
};

int report_error(const AmmError& e) {
    std::cout << scenario::detail::error_object(e, std::nullopt).dump() << '\n';
    return scenario::exit_code_for(e);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ammsim - cost-function market maker simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute a scenario file, JSON Lines on stdout");
    std::string scenario_path;
    run->add_option("scenario", scenario_path)->required();

    auto* t1 = app.add_subcommand("table1", "recompute the four-row price comparison");
    bool t1_json = false;
    t1->add_flag("--json", t1_json);

    auto* sample = app.add_subcommand("sample", "write a level-set sample as CSV");
    CurveFlags sample_curve_flags;
    sample_curve_flags.attach(sample);
    std::optional<double> level;
    std::vector<double> through;
    double xmin = 0, xmax = 0;
    std::size_t points = 0;
    std::string out_path;
    auto* cost_opt = sample->add_option("--cost", level, "level-set value K");
    sample->add_option("--through", through, "x,y point fixing K")->delimiter(',')->expected(2)->excludes(cost_opt);
    sample->add_option("--xmin", xmin)->required();
    sample->add_option("--xmax", xmax)->required();
    sample->add_option("--points", points)->required();
    sample->add_option("--out", out_path)->required();

    auto* fc = app.add_subcommand("frontrun-compare", "sandwich one victim order across several families");
    std::string curves_path;
    std::vector<double> deposits{1000, 1000};
    std::size_t victim_token = 0;
    double victim_coins = 50, budget = 200;
    fc->add_option("--curves", curves_path, "JSON array of curve objects");
    fc->add_option("--deposits", deposits)->delimiter(',');
    fc->add_option("--victim-token", victim_token);
    fc->add_option("--victim", victim_coins, "victim coins in");
    fc->add_option("--budget", budget, "attacker coins in");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : scenario::kParseError;
    }

    try {
        if (*run) return scenario::run_file(scenario_path, std::cout);
        if (*t1) return cmd_table1(t1_json);
        if (*sample) {
            const CurveSpec spec = sample_curve_flags.spec();
            double k = 0;
            if (level) {
                k = *level;
            } else if (through.size() == 2) {
                k = cost(spec, through);
            } else {
                throw ParseError("sample needs --cost or --through");
            }
            const auto s = sample_curve(spec, k, xmin, xmax, points);
            std::ofstream f(out_path);
            if (!f) throw DomainError("cannot write " + out_path);
            write_csv(f, s);
            std::cout << json{{"path", out_path}, {"points", s.points.size()}, {"cost_value", io::round12(k)}}.dump()
                      << '\n';
            return 0;
        }
        if (*fc) {
            std::vector<CurveSpec> specs;
            if (curves_path.empty()) {
                specs = {CurveSpec::lmsr(1000), CurveSpec::ls_lmsr(1.0),  CurveSpec::constant_product(),
                         CurveSpec::constant_mean({0.5, 0.5}), CurveSpec::constant_sum(), CurveSpec::circle(6000.0)};
            } else {
                std::ifstream in(curves_path);
                if (!in) throw ParseError("cannot open " + curves_path);
                json arr;
                try {
                    arr = json::parse(in);
                } catch (const json::exception& e) {
                    throw ParseError(std::string("malformed JSON: ") + e.what());
                }
                if (!arr.is_array()) throw ParseError("--curves must hold a JSON array");
                for (const auto& c : arr) specs.push_back(io::curve_from_json(c));
            }
            for (const auto& o : compare_families(specs, deposits, {victim_token, victim_coins}, budget))
                std::cout << io::to_json(o).dump() << '\n';
            return 0;
        }
    } catch (const AmmError& e) {
        return report_error(e);
    }
    return 0;
}

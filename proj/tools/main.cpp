// Command-line front end for the entanglement-criteria toolkit.
//
// Units: angles are radians, entropies are nats, quadratures use hbar = 1
// with vacuum variance 1/2.

#include <CLI11.hpp>

#include "cvent/commands.hpp"

namespace {

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(std::stod(tok));
    return out;
}

std::vector<std::pair<int, int>> parse_rows(const std::string& s) {
    // "2:6000,3:1600" -> {(2,6000),(3,1600)}
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw CLI::ValidationError("rows", "expected D:count");
        out.emplace_back(std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1)));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropic and second-order entanglement criteria for two-mode "
                 "continuous-variable states.\nAngles in radians, entropies in nats "
                 "(hbar = 1, vacuum quadrature variance 1/2)."};
    app.require_subcommand(1);

    cvent::CommonOptions common;
    std::string a_values = "1";
    auto add_common = [&](CLI::App* sub, bool with_seed) {
        sub->add_option("--theta-step", common.theta_step,
                        "Angle scan step in radians; must divide pi (default pi/4)");
        sub->add_option("--a-values", a_values,
                        "Comma list of local squeezing weights (default 1)");
        sub->add_option("--grid-points", common.grid_points,
                        "Starting grid points per axis (default: automatic, 256)");
        sub->add_option("--grid-span", common.grid_span,
                        "Grid half-span in quadrature units (default: automatic)");
        sub->add_option("--jobs", common.jobs, "Worker threads (default: CVENT_JOBS or cores)");
        sub->add_option("--out", common.out, "Output file (default: stdout)");
        if (with_seed) sub->add_option("--seed", common.seed, "RNG seed for random states");
    };

    auto* test = app.add_subcommand("state-test", "Run criteria on one state");
    std::string state_spec, criteria_list = "strong,weak,mgvt,simon";
    test->add_option("--state", state_spec,
                     "State spec: noon:N=3 | phi | eta:sp=1,sm=0.5 | cat:alpha=1,p=0 | "
                     "tmsv:r=0.5 | random:D=2,seed=7")
        ->required();
    test->add_option("--criteria", criteria_list, "Comma list of strong,weak,mgvt,simon");
    add_common(test, true);

    auto* eta = app.add_subcommand("eta-scan", "Criteria thresholds for the eta state");
    double rmin = 0.3, rmax = 2.0;
    int steps = 35;
    eta->add_option("--ratio-min", rmin, "Smallest sigma-/sigma+ ratio");
    eta->add_option("--ratio-max", rmax, "Largest sigma-/sigma+ ratio");
    eta->add_option("--steps", steps, "Number of rows");
    add_common(eta, false);

    auto* table = app.add_subcommand("random-table", "Detection percentages for random states");
    std::string rows = "2:6000,3:1600,4:800,5:720,7:120";
    table->add_option("--rows", rows, "Comma list of D:count (D = per-mode dimension)");
    add_common(table, true);

    auto* cat = app.add_subcommand("cat-surface", "Weak-criterion surface for dephased cats");
    double amin = 0.0, amax = 2.5, pmin = 0.0, pmax = 1.0;
    int asteps = 26, psteps = 11;
    cat->add_option("--alpha-min", amin, "Smallest alpha");
    cat->add_option("--alpha-max", amax, "Largest alpha");
    cat->add_option("--alpha-steps", asteps, "Alpha grid points");
    cat->add_option("--p-min", pmin, "Smallest dephasing p");
    cat->add_option("--p-max", pmax, "Largest dephasing p");
    cat->add_option("--p-steps", psteps, "p grid points");
    add_common(cat, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cvent::kExitUsage;
    }

    try {
        common.a_values = parse_list(a_values);
        if (test->parsed()) {
            std::set<cvent::Criterion> crits;
            std::stringstream ss(criteria_list);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                const auto c = cvent::criterion_from_name(tok);
                if (!c) {
                    std::cerr << "unknown criterion: " << tok << '\n';
                    return cvent::kExitUsage;
                }
                crits.insert(*c);
            }
            return cvent::cmd_state_test(state_spec, crits, common);
        }
        if (eta->parsed()) return cvent::cmd_eta_scan(rmin, rmax, steps, common);
        if (table->parsed()) return cvent::cmd_random_table(parse_rows(rows), common);
        return cvent::cmd_cat_surface(amin, amax, asteps, pmin, pmax, psteps, common);
    } catch (const cvent::invalid_input& ex) {
        std::cerr << ex.what() << '\n';
        return cvent::kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << '\n';
        return cvent::kExitNumerical;
    }
}

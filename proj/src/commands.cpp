#include "cvent/commands.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "cvent/parallel.hpp"

namespace cvent {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

EvalOptions eval_options(const CommonOptions& o) {
    EvalOptions e;
    if (o.grid_points > 0) e.base_points = o.grid_points;
    e.span = o.grid_span;
    return e;
}

int write_output(const CommonOptions& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open output file: " << o.out << '\n';
        return kExitNumerical;
    }
    f << text;
    return f.good() ? kExitOk : kExitNumerical;
}

std::string csv_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

void metadata_footer(std::ostringstream& os, const char* format, const CommonOptions& o,
                     double wall_s, bool with_seed) {
    os << "# format = " << format << '\n';
    os << "# version = " << kLibraryVersion << '\n';
    if (with_seed) os << "# seed = " << o.seed << '\n';
    os << "# theta_step = " << csv_num(o.theta_step) << '\n';
    os << "# grid_points = " << (o.grid_points > 0 ? std::to_string(o.grid_points) : "auto")
       << '\n';
    os << "# grid_span = " << (o.grid_span > 0 ? csv_num(o.grid_span) : "auto") << '\n';
    os << "# wall_time_s = " << csv_num(wall_s) << '\n';
}

} // namespace

int cmd_state_test(const std::string& state_spec, const std::set<Criterion>& criteria,
                   const CommonOptions& opts) {
    const auto t0 = Clock::now();
    ParsedState ps;
    try {
        ps = parse_state_spec(state_spec);
    } catch (const std::exception& ex) {
        std::cerr << "bad state spec: " << ex.what() << '\n';
        return kExitUsage;
    }
    RunRecord rec;
    rec.state_spec = state_spec;
    rec.theta_step = opts.theta_step;
    rec.a_values = opts.a_values;
    rec.grid_points = opts.grid_points;
    rec.grid_span = opts.grid_span;
    rec.seed = ps.seed;
    try {
        const ScanResult scan =
            scan_settings(ps.state, criteria, opts.theta_step, opts.a_values, eval_options(opts));
        for (Criterion c :
             {Criterion::strong, Criterion::weak, Criterion::mgvt, Criterion::simon}) {
            const auto it = scan.best.find(c);
            if (it != scan.best.end()) rec.reports.push_back(it->second);
        }
        for (const auto& e : scan.errors) rec.errors.push_back(e.message);
    } catch (const invalid_input& ex) {
        std::cerr << ex.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << '\n';
        return kExitNumerical;
    }
    rec.wall_time_s = seconds_since(t0);
    const int wr = write_output(opts, to_text(rec));
    if (wr != kExitOk) return wr;
    return rec.any_violated() ? kExitEntangled : kExitOk;
}

int cmd_eta_scan(double ratio_min, double ratio_max, int steps, const CommonOptions& opts) {
    if (!(ratio_min > 0) || !(ratio_max >= ratio_min) || steps < 1) {
        std::cerr << "eta-scan: ratio bounds must be positive and ordered\n";
        return kExitUsage;
    }
    const auto t0 = Clock::now();
    struct Row {
        double ratio, lhs_m, lhs_p, mgvt_m, mgvt_p, simon_margin;
        bool entropic, mgvt, simon;
        std::string error;
    };
    std::vector<Row> rows(steps);
    const EvalOptions eo = eval_options(opts);
    parallel_for(steps, opts.jobs, [&](std::size_t i) {
        Row& row = rows[i];
        row.ratio = steps == 1 ? ratio_min
                               : ratio_min + (ratio_max - ratio_min) * i / (steps - 1.0);
        try {
            const State s = eta_state(1.0, row.ratio);
            MeasurementSettings st;
            st.sign = -1;
            const auto wm = weak_entropic_test(s, st, eo);
            const auto vm = mgvt_test(s, st, eo);
            st.sign = +1;
            const auto wp = weak_entropic_test(s, st, eo);
            const auto vp = mgvt_test(s, st, eo);
            const auto si = simon_ppt_test(s, eo);
            row.lhs_m = wm.lhs;
            row.lhs_p = wp.lhs;
            row.mgvt_m = vm.lhs;
            row.mgvt_p = vp.lhs;
            row.simon_margin = si.margin;
            row.entropic = wm.violated || wp.violated;
            row.mgvt = vm.violated || vp.violated;
            row.simon = si.violated;
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
    });
    std::ostringstream os;
    os << "ratio,lhs_rminus_splus,lhs_rplus_sminus,mgvt_rminus_splus,mgvt_rplus_sminus,"
          "simon_margin,entropic_detect,mgvt_detect,simon_detect\n";
    bool failed = false;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            os << csv_num(r.ratio) << ",error: " << r.error << '\n';
            failed = true;
            continue;
        }
        os << csv_num(r.ratio) << ',' << csv_num(r.lhs_m) << ',' << csv_num(r.lhs_p) << ','
           << csv_num(r.mgvt_m) << ',' << csv_num(r.mgvt_p) << ',' << csv_num(r.simon_margin)
           << ',' << (r.entropic ? 1 : 0) << ',' << (r.mgvt ? 1 : 0) << ',' << (r.simon ? 1 : 0)
           << '\n';
    }
    metadata_footer(os, "cvent-eta-scan-1", opts, seconds_since(t0), false);
    const int wr = write_output(opts, os.str());
    if (wr != kExitOk) return wr;
    return failed ? kExitNumerical : kExitOk;
}

int cmd_random_table(const std::vector<std::pair<int, int>>& rows, const CommonOptions& opts) {
    for (const auto& [d, count] : rows)
        if (d < 2 || count < 1) {
            std::cerr << "random-table: rows need D >= 2 and count >= 1\n";
            return kExitUsage;
        }
    const auto t0 = Clock::now();
    const EvalOptions eo = eval_options(opts);
    std::ostringstream os;
    os << "n_states,D,pct_strong,pct_weak,pct_mgvt\n";
    bool failed = false;
    for (const auto& [d, count] : rows) {
        std::atomic<int> ns{0}, nw{0}, nm{0}, nerr{0};
        parallel_for(count, opts.jobs, [&](std::size_t i) {
            // D in the table is the per-mode dimension; the Fock cutoff is D-1.
            const std::uint64_t stream = (static_cast<std::uint64_t>(d) << 32) + i;
            const State s = random_haar_state(d - 1, opts.seed, stream);
            try {
                const DetectionFlags f = classify_state(s, opts.theta_step, eo);
                if (f.strong) ++ns;
                if (f.weak) ++nw;
                if (f.mgvt) ++nm;
            } catch (const std::exception&) {
                ++nerr;
            }
        });
        if (nerr > 0) failed = true;
        os << count << ',' << d << ',' << csv_num(100.0 * ns / count) << ','
           << csv_num(100.0 * nw / count) << ',' << csv_num(100.0 * nm / count) << '\n';
    }
    metadata_footer(os, "cvent-random-table-1", opts, seconds_since(t0), true);
    const int wr = write_output(opts, os.str());
    if (wr != kExitOk) return wr;
    return failed ? kExitNumerical : kExitOk;
}

int cmd_cat_surface(double alpha_min, double alpha_max, int alpha_steps, double p_min,
                    double p_max, int p_steps, const CommonOptions& opts) {
    if (p_min < 0 || p_max > 1 || p_max < p_min || alpha_min < 0 || alpha_max < alpha_min ||
        alpha_steps < 1 || p_steps < 1) {
        std::cerr << "cat-surface: need 0 <= p range <= 1 and ordered alpha range\n";
        return kExitUsage;
    }
    const auto t0 = Clock::now();
    const EvalOptions eo = eval_options(opts);
    const std::size_t cells = static_cast<std::size_t>(alpha_steps) * p_steps;
    std::vector<std::string> lines(cells);
    std::atomic<bool> failed{false};
    parallel_for(cells, opts.jobs, [&](std::size_t idx) {
        const int ia = static_cast<int>(idx) / p_steps;
        const int ip = static_cast<int>(idx) % p_steps;
        const double a = alpha_steps == 1
                             ? alpha_min
                             : alpha_min + (alpha_max - alpha_min) * ia / (alpha_steps - 1.0);
        const double p =
            p_steps == 1 ? p_min : p_min + (p_max - p_min) * ip / (p_steps - 1.0);
        try {
            const State s = cat_ensemble(a, p);
            MeasurementSettings st;
            st.sign = -1; // pairing (R-, S+)
            const auto rep = weak_entropic_test(s, st, eo);
            lines[idx] = csv_num(a) + "," + csv_num(p) + "," + csv_num(rep.lhs - rep.rhs);
        } catch (const std::exception& ex) {
            lines[idx] = csv_num(a) + "," + csv_num(p) + ",error: " + ex.what();
            failed = true;
        }
    });
    std::ostringstream os;
    os << "alpha,p,lhs_minus_rhs\n";
    for (const auto& l : lines) os << l << '\n';
    metadata_footer(os, "cvent-cat-surface-1", opts, seconds_since(t0), false);
    const int wr = write_output(opts, os.str());
    if (wr != kExitOk) return wr;
    return failed ? kExitNumerical : kExitOk;
}

} // namespace cvent

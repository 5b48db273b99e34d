#pragma once

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cvent/report.hpp"

namespace cvent {

// Process exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;          // completed, no detection
inline constexpr int kExitUsage = 1;       // bad arguments / state spec
inline constexpr int kExitNumerical = 2;   // numerical failure
inline constexpr int kExitEntangled = 3;   // completed, entanglement certified

struct CommonOptions {
    double theta_step = M_PI / 4;
    std::vector<double> a_values{1.0};
    int grid_points = 0;  // 0 = automatic (resolution chosen by convergence)
    double grid_span = 0; // 0 = automatic from the state
    std::uint64_t seed = 1;
    int jobs = 0;         // 0 = CVENT_JOBS or hardware concurrency
    std::string out;      // empty = stdout
};

// Runs the requested criteria scan on one state and writes a RunRecord.
int cmd_state_test(const std::string& state_spec, const std::set<Criterion>& criteria,
                   const CommonOptions& opts);

// One CSV row per sigma-/sigma+ ratio: entropy sums (both pairings), MGVT
// products, Simon verdict, and per-criterion detection flags.
int cmd_eta_scan(double ratio_min, double ratio_max, int steps, const CommonOptions& opts);

// Detection percentages for Haar-random states; rows are (D, count) pairs
// where D is the per-mode dimension of the coefficient matrix.
int cmd_random_table(const std::vector<std::pair<int, int>>& rows, const CommonOptions& opts);

// Grid of (alpha, p) -> LHS - RHS of the weak criterion at theta1=theta2=0,
// pairing (R-, S+); negative values mark detection.
int cmd_cat_surface(double alpha_min, double alpha_max, int alpha_steps, double p_min,
                    double p_max, int p_steps, const CommonOptions& opts);

} // namespace cvent

#pragma once

#include <functional>

#include "cvent/grid.hpp"

namespace cvent {

inline constexpr double kEntropyConvergenceTol = 1e-4; // nats
inline constexpr int kResolutionCap = 8192;

// Differential entropy in nats with convergence bookkeeping.
struct EntropyEstimate {
    double value = 0.0;
    int grid_points = 0;
    double refinement_delta = 0.0; // |change on last grid doubling|
    bool has_delta = false;

    bool converged() const { return has_delta && refinement_delta < kEntropyConvergenceTol; }
};

// H = -sum w_i p_i ln p_i with 0 ln 0 := 0.  The companion, when given,
// must be the same density at doubled resolution.
EntropyEstimate differential_entropy(const Density1D& d, const Density1D* doubled = nullptr);

double variance(const Density1D& d);

// Doubles resolution until |dH| < 1e-4 nats or the 8192-point cap; throws
// convergence_error (carrying both estimates) if the cap is hit first.
EntropyEstimate converged_entropy(const std::function<Density1D(int)>& producer,
                                  int start_points);

} // namespace cvent

#include "cvent/entropy.hpp"

#include <cmath>

namespace cvent {

namespace {

double entropy_value(const Density1D& d) {
    const double h = d.grid.step();
    double s = 0.0;
    for (int i = 0; i < d.grid.n; ++i) {
        const double v = d.p[i];
        if (v > 0.0) s -= v * std::log(v) * trap_weight(i, d.grid.n);
    }
    return s * h;
}

} // namespace

EntropyEstimate differential_entropy(const Density1D& d, const Density1D* doubled) {
    if (d.renorm_defect > 1e-3)
        throw invalid_input("differential_entropy: input not normalized");
    EntropyEstimate e;
    e.grid_points = d.grid.n;
    e.value = entropy_value(d);
    if (doubled) {
        const double v2 = entropy_value(*doubled);
        e.refinement_delta = std::abs(v2 - e.value);
        e.value = v2;
        e.grid_points = doubled->grid.n;
        e.has_delta = true;
    }
    return e;
}

double variance(const Density1D& d) {
    const double h = d.grid.step();
    double m = 0.0, m2 = 0.0;
    for (int i = 0; i < d.grid.n; ++i) {
        const double w = d.p[i] * trap_weight(i, d.grid.n);
        const double x = d.grid.point(i);
        m += w * x;
        m2 += w * x * x;
    }
    m *= h;
    m2 *= h;
    return m2 - m * m;
}

EntropyEstimate converged_entropy(const std::function<Density1D(int)>& producer,
                                  int start_points) {
    int n = start_points;
    double prev = entropy_value(producer(n));
    while (true) {
        const int n2 = 2 * n;
        if (n2 > kResolutionCap)
            throw convergence_error("converged_entropy: resolution cap reached", prev, prev);
        const double cur = entropy_value(producer(n2));
        const double delta = std::abs(cur - prev);
        if (delta < kEntropyConvergenceTol) {
            EntropyEstimate e;
            e.value = cur;
            e.grid_points = n2;
            e.refinement_delta = delta;
            e.has_delta = true;
            return e;
        }
        if (n2 == kResolutionCap)
            throw convergence_error("converged_entropy: unconverged at cap", cur, prev);
        prev = cur;
        n = n2;
    }
}

} // namespace cvent

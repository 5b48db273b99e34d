#pragma once

#include <cstddef>
#include <vector>

#include "cvent/errors.hpp"

namespace cvent {

// Uniform 1D grid with inclusive endpoints.
struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;

    static Grid symmetric(double half_span, int points) {
        if (half_span <= 0 || points < 2) throw invalid_input("Grid: bad span/points");
        return Grid{-half_span, half_span, points};
    }

    double step() const { return (hi - lo) / (n - 1); }
    double point(int i) const { return lo + step() * i; }
    std::vector<double> points() const {
        std::vector<double> x(n);
        for (int i = 0; i < n; ++i) x[i] = point(i);
        return x;
    }
};

// Trapezoid weight for index i on an n-point uniform grid, in units of the step.
inline double trap_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

double trapezoid(const std::vector<double>& f, double h);

// Probability density sampled on a uniform grid.  Values are clamped
// nonnegative and renormalized at construction; the pre-normalization
// defect |1 - integral| is kept for coverage checks.
struct Density1D {
    Grid grid;
    std::vector<double> p;
    double renorm_defect = 0.0;

    Density1D() = default;
    Density1D(Grid g, std::vector<double> values);
};

struct Density2D {
    Grid g1, g2;
    std::vector<double> p; // row-major, [i1 * g2.n + i2]
    double renorm_defect = 0.0;

    Density2D() = default;
    Density2D(Grid a, Grid b, std::vector<double> values);

    double at(int i1, int i2) const { return p[static_cast<size_t>(i1) * g2.n + i2]; }
};

} // namespace cvent

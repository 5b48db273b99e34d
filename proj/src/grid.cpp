#include "cvent/grid.hpp"

#include <cmath>

namespace cvent {

namespace {
constexpr double kDensityFloor = 1e-300;
}

double trapezoid(const std::vector<double>& f, double h) {
    double s = 0.0;
    for (double v : f) s += v;
    s -= 0.5 * (f.front() + f.back());
    return s * h;
}

Density1D::Density1D(Grid g, std::vector<double> values) : grid(g), p(std::move(values)) {
    if (static_cast<int>(p.size()) != grid.n) throw invalid_input("Density1D: size mismatch");
    for (double& v : p)
        if (!(v > kDensityFloor)) v = 0.0;
    const double z = trapezoid(p, grid.step());
    if (!(z > 0.0)) throw invalid_input("Density1D: vanishing density");
    renorm_defect = std::abs(1.0 - z);
    for (double& v : p) v /= z;
}

Density2D::Density2D(Grid a, Grid b, std::vector<double> values)
    : g1(a), g2(b), p(std::move(values)) {
    if (p.size() != static_cast<size_t>(g1.n) * g2.n) throw invalid_input("Density2D: size mismatch");
    for (double& v : p)
        if (!(v > kDensityFloor)) v = 0.0;
    const double h1 = g1.step(), h2 = g2.step();
    double z = 0.0;
    for (int i = 0; i < g1.n; ++i) {
        double row = 0.0;
        const double* r = p.data() + static_cast<size_t>(i) * g2.n;
        for (int j = 0; j < g2.n; ++j) row += r[j] * trap_weight(j, g2.n);
        z += row * trap_weight(i, g1.n);
    }
    z *= h1 * h2;
    if (!(z > 0.0)) throw invalid_input("Density2D: vanishing density");
    renorm_defect = std::abs(1.0 - z);
    for (double& v : p) v /= z;
}

} // namespace cvent

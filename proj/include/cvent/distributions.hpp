#pragma once

#include <utility>

#include "cvent/grid.hpp"
#include "cvent/states.hpp"

namespace cvent {

// One evaluation setting: local rotation angles, local squeezing weights,
// and the sign selecting the (R+,S-) or (R-,S+) pairing.
struct MeasurementSettings {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double a1 = 1.0;
    double a2 = 1.0;
    int sign = +1;
};

// Joint quadrature density at local angles (theta1, theta2).  Pure Fock
// states rotate coefficients; analytic states use their closed-form fields
// at multiples of pi/2 and a fractional-Fourier quadrature elsewhere;
// ensembles are the weight-convex sum of member densities.
Density2D joint_density(const State& s, double theta1, double theta2, const Grid& g1,
                        const Grid& g2);

// Trapezoid marginals over the opposite axis, each renormalized.
std::pair<Density1D, Density1D> mode_marginals(const Density2D& joint);

// Distribution of u = a1 r1 + sign a2 r2, evaluated as a line integral with
// linear interpolation along axis 2.  Throws coverage_error when the output
// normalization defect exceeds 1e-3.
Density1D combo_marginal(const Density2D& joint, double a1, double a2, int sign);

// Mean and second moments of a 2D density (used for covariance tomography).
struct Moments2D {
    double m1, m2;   // means
    double v1, v2;   // variances
    double cov;      // cross covariance
};
Moments2D moments(const Density2D& joint);

double mean(const Density1D& d);

} // namespace cvent

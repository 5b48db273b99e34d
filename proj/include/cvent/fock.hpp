#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cvent/errors.hpp"

namespace cvent {

using cplx = std::complex<double>;

// Hard cap on photon-number cutoffs for constructed states.
inline constexpr int kFockCap = 512;

// Harmonic-oscillator eigenfunctions phi_n tabulated on a grid.
struct HermiteTable {
    std::vector<double> grid;
    int n_max = 0;
    std::vector<double> values; // [n * grid.size() + i]

    double value(int n, std::size_t i) const { return values[n * grid.size() + i]; }
    const double* row(int n) const { return values.data() + n * grid.size(); }
};

// Stable recurrence phi_0 = pi^{-1/4} e^{-x^2/2},
// phi_{n+1} = sqrt(2/(n+1)) x phi_n - sqrt(n/(n+1)) phi_{n-1}.
HermiteTable hermite_basis(int n_max, const std::vector<double>& grid);

// Single-mode coefficient vector c_n, n = 0..cutoff.
struct ModeCoefficients {
    std::vector<cplx> c;
    int cutoff() const { return static_cast<int>(c.size()) - 1; }
};

ModeCoefficients coherent_coefficients(cplx alpha, double tail_tol);

// Truncated two-mode pure state |psi> = sum C_nm |n,m>.
// Coefficients are normalized to unit two-norm at construction.
struct FockState2 {
    std::vector<cplx> c; // row-major, [n * n2 + m]
    int n1 = 1, n2 = 1;  // dims (cutoff + 1 per mode)

    static FockState2 from_coeffs(std::vector<cplx> coeffs, int dim1, int dim2);

    cplx at(int n, int m) const { return c[static_cast<size_t>(n) * n2 + m]; }
    cplx& at(int n, int m) { return c[static_cast<size_t>(n) * n2 + m]; }
    double norm2() const;
    int max_cutoff() const { return (n1 > n2 ? n1 : n2) - 1; }
};

FockState2 product_state(const ModeCoefficients& m1, const ModeCoefficients& m2);

// C_nm -> C_nm e^{-i n theta1} e^{-i m theta2}; realizes the quadrature
// r_theta = cos(theta) x + sin(theta) p in the position representation.
FockState2 rotate_modes(const FockState2& s, double theta1, double theta2);

// Global complex conjugation of the coefficient matrix (partial transpose
// on a pure state; mode argument is validated but conjugation is global).
FockState2 conjugate_mode(const FockState2& s, int mode);

// Psi(r1,r2) = sum C_nm phi_n(r1) phi_m(r2) on the table grid product.
// Row-major [i1 * grid2.size() + i2].  Throws coverage_error when the
// grids fail the normalization check.
std::vector<cplx> position_wavefunction(const FockState2& s, const HermiteTable& t1,
                                        const HermiteTable& t2);

// Haar-uniform pure state on the (D+1)^2-dimensional truncated space.
// Deterministic in (seed, stream); independent substreams are safe to
// draw from concurrent workers in any order.
FockState2 random_haar_state(int D, std::uint64_t seed, std::uint64_t stream = 0);

// Counter-based substream RNG used for all sampling in the library.
class SubstreamRng {
  public:
    SubstreamRng(std::uint64_t seed, std::uint64_t stream);
    double normal();        // standard normal, Box-Muller
    double uniform();       // [0,1)
    std::uint64_t next_u64();

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace cvent

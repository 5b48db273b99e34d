#include "cvent/fock.hpp"

#include <cmath>

#include "cvent/grid.hpp"

namespace cvent {

HermiteTable hermite_basis(int n_max, const std::vector<double>& grid) {
    if (n_max < 0) throw invalid_input("hermite_basis: n_max < 0");
    if (grid.size() < 2) throw invalid_input("hermite_basis: grid too small");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw invalid_input("hermite_basis: grid not increasing");

    HermiteTable t;
    t.grid = grid;
    t.n_max = n_max;
    const std::size_t n = grid.size();
    t.values.resize(static_cast<std::size_t>(n_max + 1) * n);

    const double c0 = std::pow(M_PI, -0.25);
    for (std::size_t i = 0; i < n; ++i)
        t.values[i] = c0 * std::exp(-grid[i] * grid[i] / 2.0);
    if (n_max >= 1)
        for (std::size_t i = 0; i < n; ++i)
            t.values[n + i] = std::sqrt(2.0) * grid[i] * t.values[i];
    for (int k = 1; k < n_max; ++k) {
        const double a = std::sqrt(2.0 / (k + 1));
        const double b = std::sqrt(static_cast<double>(k) / (k + 1));
        const double* prev = t.values.data() + static_cast<std::size_t>(k) * n;
        const double* prev2 = t.values.data() + static_cast<std::size_t>(k - 1) * n;
        double* out = t.values.data() + static_cast<std::size_t>(k + 1) * n;
        for (std::size_t i = 0; i < n; ++i)
            out[i] = a * grid[i] * prev[i] - b * prev2[i];
    }
    return t;
}

ModeCoefficients coherent_coefficients(cplx alpha, double tail_tol) {
    if (!(tail_tol > 0.0) || tail_tol > 1e-4)
        throw invalid_input("coherent_coefficients: tail_tol out of (0, 1e-4]");
    const double mean = std::norm(alpha);
    ModeCoefficients m;
    if (mean == 0.0) {
        m.c = {cplx(1.0, 0.0)};
        return m;
    }
    // Poisson weights p_n = e^{-|a|^2} |a|^{2n} / n!; cutoff where the tail drops
    // below tail_tol.
    std::vector<double> logp;
    double lp = -mean; // log p_0
    double cum = std::exp(lp);
    logp.push_back(lp);
    int cutoff = 0;
    while (1.0 - cum >= tail_tol) {
        ++cutoff;
        if (cutoff > kFockCap) throw capacity_error("coherent_coefficients: cutoff cap exceeded");
        lp += std::log(mean) - std::log(static_cast<double>(cutoff));
        logp.push_back(lp);
        cum += std::exp(lp);
    }
    m.c.resize(cutoff + 1);
    const double phase = std::arg(alpha);
    double norm2 = 0.0;
    for (int n = 0; n <= cutoff; ++n) {
        const double mag = std::exp(0.5 * logp[n]);
        m.c[n] = std::polar(mag, phase * n);
        norm2 += mag * mag;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : m.c) v *= inv;
    return m;
}

FockState2 FockState2::from_coeffs(std::vector<cplx> coeffs, int dim1, int dim2) {
    if (dim1 < 1 || dim2 < 1 || coeffs.size() != static_cast<std::size_t>(dim1) * dim2)
        throw invalid_input("FockState2: bad dimensions");
    double n2sum = 0.0;
    for (const auto& v : coeffs) n2sum += std::norm(v);
    if (!(n2sum > 0.0)) throw invalid_input("FockState2: zero state");
    const double inv = 1.0 / std::sqrt(n2sum);
    for (auto& v : coeffs) v *= inv;
    FockState2 s;
    s.c = std::move(coeffs);
    s.n1 = dim1;
    s.n2 = dim2;
    return s;
}

double FockState2::norm2() const {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    return s;
}

FockState2 product_state(const ModeCoefficients& m1, const ModeCoefficients& m2) {
    const int d1 = m1.cutoff() + 1, d2 = m2.cutoff() + 1;
    std::vector<cplx> c(static_cast<std::size_t>(d1) * d2);
    for (int n = 0; n < d1; ++n)
        for (int m = 0; m < d2; ++m)
            c[static_cast<std::size_t>(n) * d2 + m] = m1.c[n] * m2.c[m];
    return FockState2::from_coeffs(std::move(c), d1, d2);
}

FockState2 rotate_modes(const FockState2& s, double theta1, double theta2) {
    FockState2 out = s;
    for (int n = 0; n < s.n1; ++n) {
        const cplx ph1 = std::polar(1.0, -theta1 * n);
        for (int m = 0; m < s.n2; ++m)
            out.at(n, m) = s.at(n, m) * ph1 * std::polar(1.0, -theta2 * m);
    }
    return out;
}

FockState2 conjugate_mode(const FockState2& s, int mode) {
    if (mode != 1 && mode != 2) throw invalid_input("conjugate_mode: mode must be 1 or 2");
    FockState2 out = s;
    for (auto& v : out.c) v = std::conj(v);
    return out;
}

std::vector<cplx> position_wavefunction(const FockState2& s, const HermiteTable& t1,
                                        const HermiteTable& t2) {
    if (t1.n_max < s.n1 - 1 || t2.n_max < s.n2 - 1)
        throw invalid_input("position_wavefunction: table does not cover state cutoff");
    const std::size_t g1 = t1.grid.size(), g2 = t2.grid.size();
    // Psi = Phi1^T C Phi2: contract mode 2 first.
    std::vector<cplx> tmp(static_cast<std::size_t>(s.n1) * g2, cplx{});
    for (int n = 0; n < s.n1; ++n) {
        cplx* dst = tmp.data() + static_cast<std::size_t>(n) * g2;
        for (int m = 0; m < s.n2; ++m) {
            const cplx cc = s.at(n, m);
            if (cc == cplx{}) continue;
            const double* phi = t2.row(m);
            for (std::size_t j = 0; j < g2; ++j) dst[j] += cc * phi[j];
        }
    }
    std::vector<cplx> psi(g1 * g2, cplx{});
    for (int n = 0; n < s.n1; ++n) {
        const double* phi = t1.row(n);
        const cplx* src = tmp.data() + static_cast<std::size_t>(n) * g2;
        for (std::size_t i = 0; i < g1; ++i) {
            const double w = phi[i];
            if (w == 0.0) continue;
            cplx* dst = psi.data() + i * g2;
            for (std::size_t j = 0; j < g2; ++j) dst[j] += w * src[j];
        }
    }
    // Coverage check: the grid must hold the full norm.
    const double h1 = t1.grid[1] - t1.grid[0];
    const double h2 = t2.grid[1] - t2.grid[0];
    double z = 0.0;
    for (std::size_t i = 0; i < g1; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < g2; ++j)
            row += std::norm(psi[i * g2 + j]) * trap_weight(static_cast<int>(j), static_cast<int>(g2));
        z += row * trap_weight(static_cast<int>(i), static_cast<int>(g1));
    }
    z *= h1 * h2;
    if (std::abs(z - 1.0) > 1e-5)
        throw coverage_error("position_wavefunction: grid does not cover state, norm defect " +
                             std::to_string(std::abs(z - 1.0)));
    return psi;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

SubstreamRng::SubstreamRng(std::uint64_t seed, std::uint64_t stream) {
    // Mix seed and stream so adjacent streams are uncorrelated.
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (stream * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL);
    state_ = splitmix64(s);
}

std::uint64_t SubstreamRng::next_u64() { return splitmix64(state_); }

double SubstreamRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SubstreamRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    have_spare_ = true;
    spare_ = r * std::sin(2.0 * M_PI * u2);
    return r * std::cos(2.0 * M_PI * u2);
}

FockState2 random_haar_state(int D, std::uint64_t seed, std::uint64_t stream) {
    if (D < 1) throw invalid_input("random_haar_state: D < 1");
    SubstreamRng rng(seed, stream);
    const int d = D + 1;
    std::vector<cplx> c(static_cast<std::size_t>(d) * d);
    for (auto& v : c) v = cplx(rng.normal(), rng.normal());
    return FockState2::from_coeffs(std::move(c), d, d);
}

} // namespace cvent

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cvent/distributions.hpp"
#include "cvent/fock.hpp"
#include "cvent/states.hpp"

using namespace cvent;

namespace {

std::vector<double> symmetric_grid(double half, int n) { return Grid::symmetric(half, n).points(); }

// Independent oracle: phi_n from the explicit physicists' Hermite polynomial,
// evaluated in long double to keep rounding below the recurrence under test.
long double hermite_poly(int n, long double x) {
    long double h0 = 1.0L, h1 = 2.0L * x;
    if (n == 0) return h0;
    for (int k = 1; k < n; ++k) {
        const long double h2 = 2.0L * x * h1 - 2.0L * k * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

long double phi_oracle(int n, long double x) {
    long double norm = std::pow(std::numbers::pi_v<long double>, -0.25L);
    for (int k = 1; k <= n; ++k) norm /= std::sqrt(2.0L * k);
    return norm * hermite_poly(n, x) * std::exp(-x * x / 2.0L);
}

FockState2 coherent_product(cplx a1, cplx a2) {
    return product_state(coherent_coefficients(a1, 1e-10), coherent_coefficients(a2, 1e-10));
}

double mode1_mean(const FockState2& s, double theta) {
    const Grid g = Grid::symmetric(10.0, 513);
    const auto joint = joint_density(s, theta, 0.0, g, g);
    return mean(mode_marginals(joint).first);
}

} // namespace

TEST_SUITE("fock") {

TEST_CASE("hermite basis closed-form anchors") {
    const auto grid = symmetric_grid(8.0, 1601); // contains 0 and 1.3 exactly? step 0.01
    const auto table = hermite_basis(4, grid);
    const auto at = [&](double x) {
        return static_cast<std::size_t>(
            std::lower_bound(grid.begin(), grid.end(), x - 1e-12) - grid.begin());
    };
    CHECK(table.value(0, at(0.0)) == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-12));
    CHECK(std::abs(table.value(1, at(0.0))) < 1e-15);
    const std::size_t i13 = at(1.3);
    const double oracle = static_cast<double>(phi_oracle(4, static_cast<long double>(grid[i13])));
    CHECK(std::abs(table.value(4, i13) - oracle) < 1e-10);
}

TEST_CASE("hermite basis normalization and parity") {
    const auto grid = symmetric_grid(12.0, 1025);
    const int n_max = 20;
    const auto table = hermite_basis(n_max, grid);
    const double h = grid[1] - grid[0];
    for (int n = 0; n <= n_max; ++n) {
        std::vector<double> sq(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) sq[i] = table.value(n, i) * table.value(n, i);
        CHECK(trapezoid(sq, h) == doctest::Approx(1.0).epsilon(1e-6));
        // parity phi_n(-x) = (-1)^n phi_n(x), exact on a symmetric grid
        const std::size_t m = grid.size() - 1;
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(table.value(n, m - i) == (n % 2 ? -table.value(n, i) : table.value(n, i)));
    }
}

TEST_CASE("hermite basis rejects non-monotone grids") {
    CHECK_THROWS_AS(hermite_basis(2, {0.0, 1.0, 0.5}), invalid_input);
}

TEST_CASE("coherent coefficients Poisson structure") {
    const auto vac = coherent_coefficients(0.0, 1e-10);
    CHECK(vac.cutoff() == 0);
    CHECK(std::abs(vac.c[0] - cplx{1.0, 0.0}) < 1e-15);

    const auto one = coherent_coefficients(1.0, 1e-10);
    CHECK(std::norm(one.c[1]) / std::norm(one.c[0]) == doctest::Approx(1.0).epsilon(1e-12));

    const auto two = coherent_coefficients(2.0, 1e-10);
    double mean_n = 0.0;
    for (int n = 0; n <= two.cutoff(); ++n) mean_n += n * std::norm(two.c[n]);
    CHECK(mean_n == doctest::Approx(4.0).epsilon(1e-8));

    CHECK_THROWS_AS(coherent_coefficients(1.0, 1e-3), invalid_input);
    CHECK_THROWS_AS(coherent_coefficients(30.0, 1e-10), capacity_error);
}

TEST_CASE("rotation leaves number states invariant") {
    FockState2 s = FockState2::from_coeffs({0, 0, 1, 0}, 2, 2); // |1,0>
    const Grid g = Grid::symmetric(8.0, 257);
    const auto base = joint_density(s, 0.0, 0.0, g, g);
    const auto rot = joint_density(rotate_modes(s, 1.1, -0.4), 0.0, 0.0, g, g);
    for (std::size_t i = 0; i < base.p.size(); ++i) CHECK(std::abs(base.p[i] - rot.p[i]) < 1e-12);
}

TEST_CASE("rotation sign convention: coherent quadrature mean") {
    // <r_theta> = sqrt(2) Re(alpha e^{-i theta}); alpha real gives sqrt2 cos(theta)
    const auto s = coherent_product(1.0, 0.0);
    for (double theta : {0.0, M_PI / 4, M_PI / 2}) {
        const double got = mode1_mean(rotate_modes(s, theta, 0.0), 0.0);
        CHECK(got == doctest::Approx(std::sqrt(2.0) * std::cos(theta)).epsilon(1e-6).scale(1));
    }
}

TEST_CASE("rotation identity, composition, and norm preservation") {
    const FockState2 s = random_haar_state(3, 42);
    const auto id = rotate_modes(s, 0.0, 0.0);
    for (std::size_t i = 0; i < s.c.size(); ++i) CHECK(s.c[i] == id.c[i]);

    const auto ab = rotate_modes(rotate_modes(s, 0.3, 0.7), 0.5, -0.2);
    const auto sum = rotate_modes(s, 0.8, 0.5);
    for (std::size_t i = 0; i < s.c.size(); ++i) CHECK(std::abs(ab.c[i] - sum.c[i]) < 1e-14);

    CHECK(std::abs(rotate_modes(s, 1.2, 2.1).norm2() - 1.0) < 1e-14);
    CHECK(std::abs(conjugate_mode(s, 2).norm2() - 1.0) < 1e-14);
}

TEST_CASE("conjugation fixes real states and flips coherent phases") {
    const auto real_state = phi_state();
    const auto conj = conjugate_mode(real_state, 1);
    for (std::size_t i = 0; i < real_state.c.size(); ++i) CHECK(real_state.c[i] == conj.c[i]);

    const auto lhs = conjugate_mode(coherent_product(cplx{0, 1}, 0.0), 1);
    const auto rhs = coherent_product(cplx{0, -1}, 0.0);
    REQUIRE(lhs.c.size() == rhs.c.size());
    for (std::size_t i = 0; i < lhs.c.size(); ++i) CHECK(std::abs(lhs.c[i] - rhs.c[i]) < 1e-12);
}

TEST_CASE("conjugation reflects the momentum marginal of a product state") {
    const auto s = coherent_product(cplx{0.7, 0.4}, cplx{-0.2, 0.9});
    const auto sc = conjugate_mode(s, 2);
    const Grid g = Grid::symmetric(10.0, 513);
    // r-marginal of mode 2 unchanged
    const auto r = mode_marginals(joint_density(s, 0.0, 0.0, g, g)).second;
    const auto rc = mode_marginals(joint_density(sc, 0.0, 0.0, g, g)).second;
    for (int i = 0; i < g.n; ++i) CHECK(std::abs(r.p[i] - rc.p[i]) < 1e-8);
    // s-marginal of mode 2 reflected: |psi~*(p)|^2 = |psi~(-p)|^2
    const auto p = mode_marginals(joint_density(s, 0.0, M_PI / 2, g, g)).second;
    const auto pc = mode_marginals(joint_density(sc, 0.0, M_PI / 2, g, g)).second;
    for (int i = 0; i < g.n; ++i) CHECK(std::abs(p.p[i] - pc.p[g.n - 1 - i]) < 1e-8);
}

TEST_CASE("position wavefunction closed forms") {
    const auto grid = symmetric_grid(8.0, 401);
    const auto table = hermite_basis(2, grid);

    FockState2 vac = FockState2::from_coeffs({1}, 1, 1);
    const auto psi = position_wavefunction(vac, table, table);
    for (std::size_t i = 0; i < grid.size(); i += 40)
        for (std::size_t j = 0; j < grid.size(); j += 40) {
            const double want =
                std::pow(M_PI, -0.5) * std::exp(-(grid[i] * grid[i] + grid[j] * grid[j]) / 2);
            CHECK(std::abs(psi[i * grid.size() + j] - want) < 1e-12);
        }

    // |phi> normalization through the table contraction
    const auto phi = position_wavefunction(phi_state(), table, table);
    const double h = grid[1] - grid[0];
    double z = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j)
            z += trap_weight(static_cast<int>(i), static_cast<int>(grid.size())) *
                 trap_weight(static_cast<int>(j), static_cast<int>(grid.size())) *
                 std::norm(phi[i * grid.size() + j]) * h * h;
    CHECK(z == doctest::Approx(1.0).epsilon(1e-6));

    // N00N N=2 at the origin: Psi(0,0) = sqrt2 phi_2(0) phi_0(0) = -1/sqrt(pi)
    const auto noon = position_wavefunction(noon_state(2), table, table);
    const std::size_t mid = grid.size() / 2;
    const double oracle =
        static_cast<double>(2.0L * phi_oracle(2, 0.0L) * phi_oracle(0, 0.0L) / std::sqrt(2.0L));
    CHECK(std::abs(std::norm(noon[mid * grid.size() + mid]) - oracle * oracle) < 1e-10);
}

TEST_CASE("position wavefunction coverage check") {
    const auto tiny = hermite_basis(6, symmetric_grid(1.5, 33));
    CHECK_THROWS_AS(position_wavefunction(noon_state(6), tiny, tiny), coverage_error);
}

TEST_CASE("haar states are deterministic per (seed, stream)") {
    const auto a = random_haar_state(2, 7, 3);
    const auto b = random_haar_state(2, 7, 3);
    REQUIRE(a.c.size() == b.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) CHECK(a.c[i] == b.c[i]);
    const auto c = random_haar_state(2, 7, 4);
    bool differs = false;
    for (std::size_t i = 0; i < a.c.size(); ++i) differs |= (a.c[i] != c.c[i]);
    CHECK(differs);
}

TEST_CASE("haar coefficient moments match the uniform-sphere oracle") {
    // E|C_00|^2 = 1/(D+1)^2 = 1/9; Var|C|^2 = 2/(d(d+1)) - 1/d^2 with d = 9.
    const int samples = 10000;
    double sum = 0.0;
    for (int i = 0; i < samples; ++i) sum += std::norm(random_haar_state(2, 11, i).c[0]);
    const double mean_c = sum / samples;
    const double d = 9.0;
    const double var = 2.0 / (d * (d + 1.0)) - 1.0 / (d * d);
    const double se = std::sqrt(var / samples);
    CHECK(std::abs(mean_c - 1.0 / d) < 3 * se);
}

TEST_CASE("D=1 entanglement entropy distribution matches an independent sampler") {
    // Entanglement entropy of a 2x2 coefficient matrix from the eigenvalues of
    // C C^dagger; the reference sampler uses the standard library generator.
    const auto ent_entropy = [](const std::vector<cplx>& c) {
        const double a = std::norm(c[0]) + std::norm(c[1]);
        const double b = std::norm(c[2]) + std::norm(c[3]);
        const cplx off = c[0] * std::conj(c[2]) + c[1] * std::conj(c[3]);
        const double tr = a + b;
        const double det = a * b - std::norm(off);
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
        const double lam = std::clamp(tr / 2 + disc, 0.0, 1.0);
        const auto xlnx = [](double x) { return x > 0 ? x * std::log(x) : 0.0; };
        return -xlnx(lam) - xlnx(1.0 - lam);
    };

    const int n = 10000;
    std::vector<double> ours(n), ref(n);
    for (int i = 0; i < n; ++i) ours[i] = ent_entropy(random_haar_state(1, 5, i).c);
    std::mt19937_64 eng(987654321);
    std::normal_distribution<double> normal;
    for (int i = 0; i < n; ++i) {
        std::vector<cplx> c(4);
        double norm2 = 0.0;
        for (auto& z : c) {
            z = cplx{normal(eng), normal(eng)};
            norm2 += std::norm(z);
        }
        for (auto& z : c) z /= std::sqrt(norm2);
        ref[i] = ent_entropy(c);
    }
    std::sort(ours.begin(), ours.end());
    std::sort(ref.begin(), ref.end());
    // two-sample KS statistic against the 1% critical value 1.628 sqrt(2/n)
    double ks = 0.0;
    std::size_t i = 0, j = 0;
    while (i < ours.size() && j < ref.size()) {
        if (ours[i] <= ref[j]) ++i;
        else ++j;
        ks = std::max(ks, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / n));
    }
    CHECK(ks < 1.628 * std::sqrt(2.0 / n));
}

} // TEST_SUITE

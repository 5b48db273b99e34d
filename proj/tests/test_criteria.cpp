#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "cvent/criteria.hpp"
#include "cvent/states.hpp"

using namespace cvent;

namespace {

const double kLn2PiE = std::log(2 * M_PI * std::exp(1.0));
const double kEulerGamma = 0.5772156649015329;

State vacuum_product() { return State{FockState2::from_coeffs({1}, 1, 1)}; }

State haar_product(std::uint64_t seed, std::uint64_t stream) {
    const auto m1 = random_haar_state(2, seed, 2 * stream);
    const auto m2 = random_haar_state(2, seed, 2 * stream + 1);
    // collapse each two-mode sample to its first column as a single-mode vector
    ModeCoefficients c1, c2;
    for (int n = 0; n < m1.n1; ++n) c1.c.push_back(m1.at(n, 0));
    for (int n = 0; n < m2.n1; ++n) c2.c.push_back(m2.at(n, 0));
    double z1 = 0.0, z2 = 0.0;
    for (auto& z : c1.c) z1 += std::norm(z);
    for (auto& z : c2.c) z2 += std::norm(z);
    for (auto& z : c1.c) z /= std::sqrt(z1);
    for (auto& z : c2.c) z /= std::sqrt(z2);
    return State{product_state(c1, c2)};
}

} // namespace

TEST_SUITE("criteria") {

TEST_CASE("criterion names round-trip") {
    for (Criterion c : {Criterion::strong, Criterion::weak, Criterion::mgvt, Criterion::simon})
        CHECK(criterion_from_name(criterion_name(c)) == c);
    CHECK(!criterion_from_name("bogus").has_value());
}

TEST_CASE("weak test: vacuum saturates, eta and TMSV violate") {
    MeasurementSettings st;
    for (int sign : {+1, -1}) {
        st.sign = sign;
        const auto rep = weak_entropic_test(vacuum_product(), st);
        CHECK(rep.lhs == doctest::Approx(kLn2PiE).epsilon(1e-3));
        CHECK(!rep.violated);
    }

    st.sign = -1; // pairing (R-, S+)
    const auto eta = weak_entropic_test(State{eta_state(1.0, 0.5)}, st);
    CHECK(eta.violated);
    CHECK(eta.lhs == doctest::Approx(std::log(4 * M_PI * 0.5) + kEulerGamma).epsilon(1e-3));

    const auto tmsv = weak_entropic_test(State{two_mode_squeezed(0.5)}, st);
    CHECK(tmsv.violated);
    CHECK(tmsv.lhs == doctest::Approx(kLn2PiE - 1.0).epsilon(1e-3));
    CHECK(tmsv.rhs == doctest::Approx(kLn2PiE).epsilon(1e-12));
}

TEST_CASE("strong test: phi and noon anchors") {
    MeasurementSettings st;
    st.theta1 = 3 * M_PI / 4; // -pi/4 mod pi
    st.theta2 = M_PI / 4;
    st.sign = -1;
    CHECK(strong_entropic_test(State{phi_state()}, st).violated);

    MeasurementSettings origin;
    origin.sign = +1;
    CHECK(strong_entropic_test(State{noon_state(5)}, origin).violated);

    MeasurementSettings n2;
    n2.theta1 = 0.0;
    n2.theta2 = M_PI / 2;
    n2.sign = +1;
    CHECK(strong_entropic_test(State{noon_state(2)}, n2).violated);

    const auto scan6 = scan_settings(State{noon_state(6)}, {Criterion::strong}, M_PI / 4, {1.0});
    REQUIRE(scan6.best.count(Criterion::strong) == 1);
    CHECK(!scan6.best.at(Criterion::strong).violated);
    CHECK(scan6.best.at(Criterion::strong).margin <= kViolationDeadband);
}

TEST_CASE("strong test rejects proper mixtures") {
    CHECK_THROWS_AS(strong_entropic_test(State{cat_ensemble(1.0, 0.5)}, MeasurementSettings{}),
                    unsupported_state);
    // single-member ensembles are fine
    Ensemble single;
    single.members.push_back({1.0, noon_state(1)});
    CHECK_NOTHROW(strong_entropic_test(State{single}, MeasurementSettings{}));
}

TEST_CASE("strong test never flags product states") {
    for (std::uint64_t i = 0; i < 4; ++i) {
        const auto s = haar_product(77, i);
        for (double t1 : {0.0, M_PI / 4})
            for (int sign : {+1, -1}) {
                MeasurementSettings st;
                st.theta1 = t1;
                st.theta2 = M_PI / 2;
                st.sign = sign;
                CHECK(!strong_entropic_test(s, st).violated);
            }
    }
}

TEST_CASE("mgvt test anchors") {
    MeasurementSettings st;
    st.sign = +1;
    const auto vac = mgvt_test(vacuum_product(), st);
    CHECK(vac.lhs == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(!vac.violated);

    st.sign = -1;
    const auto tmsv = mgvt_test(State{two_mode_squeezed(0.5)}, st);
    CHECK(tmsv.lhs == doctest::Approx(std::exp(-1.0)).epsilon(1e-4));
    CHECK(tmsv.violated);

    CHECK(mgvt_test(State{eta_state(1.0, 0.5)}, st).violated);
    CHECK(!mgvt_test(State{eta_state(1.0, 1.0)}, st).violated);
}

TEST_CASE("simon test anchors") {
    CHECK(!simon_ppt_test(vacuum_product()).violated);
    CHECK(simon_ppt_test(State{two_mode_squeezed(0.5)}).violated);
    CHECK(!simon_ppt_test(State{phi_state()}).violated);
    for (int n = 1; n <= 3; ++n) CHECK(!simon_ppt_test(State{noon_state(n)}).violated);
    CHECK(simon_ppt_test(State{eta_state(1.0, 0.4)}).violated);
    CHECK(!simon_ppt_test(State{eta_state(1.0, 0.8)}).violated);
}

TEST_CASE("covariance tomography matches the TMSV closed form") {
    const double r = 0.3;
    const auto cov = covariance_tomography(State{two_mode_squeezed(r)}, 1025, 10.0);
    const double c = std::cosh(2 * r) / 2, s = std::sinh(2 * r) / 2;
    const double want[4][4] = {{c, 0, s, 0}, {0, c, 0, -s}, {s, 0, c, 0}, {0, -s, 0, c}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(std::abs(cov.m[i][j] - want[i][j]) < 1e-6);
}

TEST_CASE("sandwich check: Gaussian equality and the eta gap") {
    // Gaussian states meet ln(2 pi e sigma delta) = H sum within grid error.
    MeasurementSettings st;
    st.sign = -1;
    const auto tmsv = mgvt_test(State{two_mode_squeezed(0.5)}, st);
    const auto weak = weak_entropic_test(State{two_mode_squeezed(0.5)}, st);
    const double sigma = tmsv.entropies.at("sigma");
    const double delta = tmsv.entropies.at("delta");
    CHECK(std::log(2 * M_PI * std::exp(1.0) * sigma * delta) ==
          doctest::Approx(weak.lhs).epsilon(1e-3));
    CHECK(sandwich_check(weak.lhs, sigma, delta));

    // eta at ratio 1: gap = ln(e^{1-gamma} sqrt(3) / 2), oracle by closed forms
    const auto eg = mgvt_test(State{eta_state(1.0, 1.0)}, st);
    const auto ew = weak_entropic_test(State{eta_state(1.0, 1.0)}, st);
    const double gap =
        std::log(2 * M_PI * std::exp(1.0) * eg.entropies.at("sigma") * eg.entropies.at("delta")) -
        ew.lhs;
    CHECK(gap == doctest::Approx(1 - kEulerGamma + 0.5 * std::log(3.0) - std::log(2.0))
                     .epsilon(1e-3));
    CHECK(sandwich_check(ew.lhs, eg.entropies.at("sigma"), eg.entropies.at("delta")));
    CHECK(!sandwich_check(10.0, 1.0, 1.0));
}

TEST_CASE("criterion implications at shared settings") {
    // MGVT violation implies weak violation; weak implies strong (pure states).
    const std::vector<State> states{State{two_mode_squeezed(0.5)}, State{eta_state(1.0, 0.5)},
                                    State{eta_state(1.0, 0.9)}, State{noon_state(2)}};
    for (const auto& s : states)
        for (int sign : {+1, -1}) {
            MeasurementSettings st;
            st.sign = sign;
            const auto m = mgvt_test(s, st);
            const auto w = weak_entropic_test(s, st);
            const auto g = strong_entropic_test(s, st);
            if (m.violated) CHECK(w.violated);
            if (w.violated) CHECK(g.violated);
            CHECK(g.rhs >= w.rhs - 1e-9); // strong bound dominates ln 2 pi e
        }
}

TEST_CASE("scan settings finds the pinned optima") {
    const auto phi = scan_settings(State{phi_state()}, {Criterion::strong}, M_PI / 4, {1.0});
    REQUIRE(phi.best.count(Criterion::strong) == 1);
    const auto& best = phi.best.at(Criterion::strong);
    CHECK(best.violated);
    const bool at_pinned = (std::abs(best.settings.theta1 - 3 * M_PI / 4) < 1e-12 &&
                            std::abs(best.settings.theta2 - M_PI / 4) < 1e-12) ||
                           (std::abs(best.settings.theta1 - M_PI / 4) < 1e-12 &&
                            std::abs(best.settings.theta2 - 3 * M_PI / 4) < 1e-12);
    CHECK(at_pinned);

    const auto noon2 = scan_settings(State{noon_state(2)}, {Criterion::strong}, M_PI / 4, {1.0});
    bool found_0_halfpi = false;
    for (const auto& rep : noon2.grid)
        if (rep.violated && std::abs(rep.settings.theta1) < 1e-12 &&
            std::abs(rep.settings.theta2 - M_PI / 2) < 1e-12)
            found_0_halfpi = true;
    CHECK(found_0_halfpi);

    CHECK_THROWS_AS(
        scan_settings(vacuum_product(), {Criterion::weak}, 1.0 /* does not divide pi */, {1.0}),
        invalid_input);
}

TEST_CASE("vacuum survives a squeezed full scan") {
    const auto scan = scan_settings(vacuum_product(),
                                    {Criterion::strong, Criterion::weak, Criterion::mgvt,
                                     Criterion::simon},
                                    M_PI / 4, {0.5, 1.0, 2.0});
    CHECK(scan.errors.empty());
    for (const auto& rep : scan.grid) CHECK(!rep.violated);
    for (const auto& [c, rep] : scan.best) CHECK(!rep.violated);
}

TEST_CASE("equal local squeezing leaves the entropic sum invariant") {
    for (std::uint64_t i = 0; i < 3; ++i) {
        const State s{random_haar_state(2, 13, i)};
        MeasurementSettings st;
        st.sign = +1;
        EvalOptions opts;
        opts.base_points = 512;
        const double base = weak_entropic_test(s, st, opts).lhs;
        for (double a : {0.5, 2.0}) {
            st.a1 = st.a2 = a;
            CHECK(std::abs(weak_entropic_test(s, st, opts).lhs - base) < 1e-5);
        }
        st.a1 = st.a2 = 1.0;
    }
}

TEST_CASE("classify_state agrees with the full scan") {
    for (std::uint64_t i = 0; i < 3; ++i) {
        const State s{random_haar_state(1, 3, i)};
        const auto flags = classify_state(s, M_PI / 4);
        const auto scan = scan_settings(
            s, {Criterion::strong, Criterion::weak, Criterion::mgvt}, M_PI / 4, {1.0});
        CHECK(flags.strong == scan.best.at(Criterion::strong).violated);
        CHECK(flags.weak == scan.best.at(Criterion::weak).violated);
        CHECK(flags.mgvt == scan.best.at(Criterion::mgvt).violated);
    }
}

TEST_CASE("violation verdicts carry converged refinement deltas") {
    MeasurementSettings st;
    st.sign = -1;
    for (const auto& rep :
         {weak_entropic_test(State{two_mode_squeezed(0.5)}, st),
          strong_entropic_test(State{noon_state(3)}, MeasurementSettings{})}) {
        if (rep.violated) {
            CHECK(rep.has_delta);
            CHECK(rep.refinement_delta < kEntropyConvergenceTol);
        }
    }
}

} // TEST_SUITE

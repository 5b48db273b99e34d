#include "cvent/states.hpp"

#include <algorithm>
#include <cmath>

namespace cvent {

double Ensemble::total_weight() const {
    double s = 0.0;
    for (const auto& m : members) s += m.weight;
    return s;
}

AnalyticPureState eta_state(double sigma_plus, double sigma_minus) {
    if (!(sigma_plus > 0.0) || !(sigma_minus > 0.0))
        throw invalid_input("eta_state: widths must be positive");
    const double sp = sigma_plus, sm = sigma_minus;
    const double apos = 1.0 / std::sqrt(M_PI * sm * sp * sp * sp);
    const double amom = std::sqrt(sp * sp * sp * sm / M_PI);
    AnalyticPureState s;
    s.position = [=](double r1, double r2) -> cplx {
        const double u = r1 + r2, v = r1 - r2;
        return cplx(u * apos * std::exp(-u * u / (4 * sp * sp) - v * v / (4 * sm * sm)), 0.0);
    };
    // FT of u e^{-u^2/4sp^2} is proportional to -i w e^{-sp^2 w^2}, w = (s1+s2)/2.
    s.momentum = [=](double s1, double s2) -> cplx {
        const double u = s1 + s2, v = s1 - s2;
        return cplx(0.0, -u * amom * std::exp(-sp * sp * u * u / 4 - sm * sm * v * v / 4));
    };
    const double wmax = std::max({sp, sm, 1.0 / sp, 1.0 / sm});
    s.span = std::max(10.0, 6.0 * wmax);
    return s;
}

FockState2 noon_state(int N) {
    if (N < 1) throw invalid_input("noon_state: N < 1");
    if (N > kFockCap) throw capacity_error("noon_state: N exceeds cutoff cap");
    const int d = N + 1;
    std::vector<cplx> c(static_cast<std::size_t>(d) * d, cplx{});
    const double a = 1.0 / std::sqrt(2.0);
    c[static_cast<std::size_t>(N) * d + 0] = a;
    c[0 * d + N] = a;
    return FockState2::from_coeffs(std::move(c), d, d);
}

FockState2 phi_state() {
    std::vector<cplx> c(9, cplx{});
    c[0] = 1.0 / std::sqrt(2.0); // |0,0>
    c[2] = 0.5;                  // |0,2>
    c[6] = 0.5;                  // |2,0>
    return FockState2::from_coeffs(std::move(c), 3, 3);
}

FockState2 two_mode_squeezed(double r, double tail_tol) {
    if (r < 0.0) throw invalid_input("two_mode_squeezed: r < 0");
    const double t2 = std::tanh(r) * std::tanh(r);
    int cutoff = 0;
    if (t2 > 0.0) {
        // Geometric photon-number distribution; tail after n is t2^{n+1}.
        cutoff = static_cast<int>(std::ceil(std::log(tail_tol) / std::log(t2))) ;
        cutoff = std::max(cutoff, 1);
        if (cutoff > kFockCap) throw capacity_error("two_mode_squeezed: cutoff cap exceeded");
    }
    const int d = cutoff + 1;
    std::vector<cplx> c(static_cast<std::size_t>(d) * d, cplx{});
    for (int n = 0; n <= cutoff; ++n)
        c[static_cast<std::size_t>(n) * d + n] = std::pow(std::tanh(r), n) / std::cosh(r);
    return FockState2::from_coeffs(std::move(c), d, d);
}

Ensemble cat_ensemble(double alpha, double p, double tail_tol) {
    if (p < 0.0 || p > 1.0) throw invalid_input("cat_ensemble: p outside [0,1]");
    if (alpha < 0.0) throw invalid_input("cat_ensemble: alpha < 0");
    Ensemble e;
    if (alpha == 0.0) {
        // Both branches coincide with the vacuum.
        ModeCoefficients vac;
        vac.c = {cplx(1.0, 0.0)};
        e.members.push_back({1.0, product_state(vac, vac)});
        return e;
    }
    const auto cp = coherent_coefficients(alpha, tail_tol);
    const auto cm = coherent_coefficients(-alpha, tail_tol);
    const int d = std::max(cp.cutoff(), cm.cutoff()) + 1;
    auto pad = [&](const ModeCoefficients& m) {
        std::vector<cplx> v(d, cplx{});
        std::copy(m.c.begin(), m.c.end(), v.begin());
        return v;
    };
    const auto a = pad(cp), b = pad(cm);
    const double kappa = std::exp(-4.0 * alpha * alpha);
    // rho = N [ (1+k) p |+><+| + (1-k)(2-p) |-><-| ] in the even/odd cat basis.
    const double z = (1.0 + kappa) * p + (1.0 - kappa) * (2.0 - p);
    const double lam_plus = (1.0 + kappa) * p / z;
    const double lam_minus = (1.0 - kappa) * (2.0 - p) / z;
    auto member = [&](int sgn) {
        std::vector<cplx> c(static_cast<std::size_t>(d) * d);
        for (int n = 0; n < d; ++n)
            for (int m = 0; m < d; ++m)
                c[static_cast<std::size_t>(n) * d + m] =
                    a[n] * a[m] + static_cast<double>(sgn) * b[n] * b[m];
        return FockState2::from_coeffs(std::move(c), d, d);
    };
    if (lam_plus > 1e-14) e.members.push_back({lam_plus, member(+1)});
    if (lam_minus > 1e-14) e.members.push_back({lam_minus, member(-1)});
    // Re-balance after any drop.
    const double tw = e.total_weight();
    for (auto& m : e.members) m.weight /= tw;
    return e;
}

namespace {

double fock_span(const FockState2& s) {
    const int nmax = s.max_cutoff();
    return std::max(10.0, 4.0 * std::sqrt(2.0 * nmax + 1.0));
}

} // namespace

double default_span(const State& s) {
    if (const auto* f = std::get_if<FockState2>(&s)) return fock_span(*f);
    if (const auto* a = std::get_if<AnalyticPureState>(&s)) return a->span;
    const auto& ens = std::get<Ensemble>(s);
    double span = 10.0;
    for (const auto& m : ens.members) {
        if (const auto* f = std::get_if<FockState2>(&m.state))
            span = std::max(span, fock_span(*f));
        else
            span = std::max(span, std::get<AnalyticPureState>(m.state).span);
    }
    return span;
}

const Ensemble* as_ensemble(const State& s) { return std::get_if<Ensemble>(&s); }

} // namespace cvent

#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "cvent/fock.hpp"

namespace cvent {

// Pure state given by closed-form position and momentum wavefunctions.
// The momentum field is the 2D Fourier transform (kernel e^{-i s r}/sqrt(2pi)
// per axis) of the position field.
struct AnalyticPureState {
    std::function<cplx(double, double)> position;
    std::function<cplx(double, double)> momentum;
    double span = 10.0; // recommended half-width of evaluation grids
};

using PureState = std::variant<FockState2, AnalyticPureState>;

// Convex mixture of pure states.
struct Ensemble {
    struct Member {
        double weight;
        PureState state;
    };
    std::vector<Member> members;

    double total_weight() const;
};

using State = std::variant<FockState2, AnalyticPureState, Ensemble>;

// eta(r1,r2) = (r1+r2)/sqrt(pi s- s+^3) e^{-(r1+r2)^2/4s+^2} e^{-(r1-r2)^2/4s-^2},
// with its closed-form Fourier transform as the momentum field.
AnalyticPureState eta_state(double sigma_plus, double sigma_minus);

// (|N,0> + |0,N>)/sqrt(2).
FockState2 noon_state(int N);

// |0,0>/sqrt(2) + |2,0>/2 + |0,2>/2.
FockState2 phi_state();

// Two-mode squeezed vacuum, C_nn = tanh^n(r)/cosh(r).
FockState2 two_mode_squeezed(double r, double tail_tol = 1e-10);

// Dephased two-mode cat state: diagonalizes the rank-2 operator spanned by
// |a,a> and |-a,-a> (overlap kappa = e^{-4 a^2}) into two orthonormal
// cat-like pure states.  Zero-weight branches are dropped; alpha = 0
// collapses to the vacuum product.
Ensemble cat_ensemble(double alpha, double p, double tail_tol = 1e-10);

// Default symmetric grid half-span for a state: Fock states use
// max(10, 4 sqrt(2 N_max + 1)); analytic states their recommended span.
double default_span(const State& s);

// Total wall span helper for member access in the generic pipeline.
const Ensemble* as_ensemble(const State& s);

} // namespace cvent

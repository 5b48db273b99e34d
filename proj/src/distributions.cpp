#include "cvent/distributions.hpp"

#include <algorithm>
#include <cmath>

namespace cvent {

namespace {

constexpr double kJointDefectTol = 1e-4;
constexpr double kComboDefectTol = 1e-3;

std::vector<double> field_density(const std::vector<cplx>& psi) {
    std::vector<double> p(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) p[i] = std::norm(psi[i]);
    return p;
}

Density2D fock_joint(const FockState2& s, double th1, double th2, const Grid& g1,
                     const Grid& g2) {
    const FockState2 rot = rotate_modes(s, th1, th2);
    const auto t1 = hermite_basis(s.n1 - 1, g1.points());
    const auto t2 = hermite_basis(s.n2 - 1, g2.points());
    const auto psi = position_wavefunction(rot, t1, t2);
    Density2D d(g1, g2, field_density(psi));
    if (d.renorm_defect > kJointDefectTol)
        throw coverage_error("joint_density: grid coverage defect " +
                             std::to_string(d.renorm_defect));
    return d;
}

double wrap_angle(double th) {
    th = std::fmod(th, 2.0 * M_PI);
    if (th < 0) th += 2.0 * M_PI;
    return th;
}

enum class AxisOp { identity, reflect, fractional };

AxisOp classify_angle(double th) {
    const double eps = 1e-12;
    if (th < eps || 2.0 * M_PI - th < eps) return AxisOp::identity;
    if (std::abs(th - M_PI) < eps) return AxisOp::reflect;
    return AxisOp::fractional;
}

// Fractional Fourier kernel matrix, eigenbasis phi_n with eigenvalues
// e^{-i n theta} (global phase dropped).  Trapezoid weights folded in.
std::vector<cplx> frac_kernel(double theta, const Grid& g) {
    const int n = g.n;
    const double h = g.step();
    const double s = std::sin(theta), c = std::cos(theta);
    const double ct = c / s;
    const double amp = 1.0 / std::sqrt(2.0 * M_PI * std::abs(s));
    std::vector<cplx> k(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        const double u = g.point(i);
        for (int j = 0; j < n; ++j) {
            const double x = g.point(j);
            const double phase = ct * (u * u + x * x) / 2.0 - u * x / s;
            k[static_cast<std::size_t>(i) * n + j] =
                std::polar(amp * h * trap_weight(j, n), phase);
        }
    }
    return k;
}

// Apply an axis operation in place on a row-major (n1 x n2) field.
void apply_axis(std::vector<cplx>& f, int n1, int n2, int axis, AxisOp op, double theta,
                const Grid& g) {
    if (op == AxisOp::identity) return;
    if (op == AxisOp::reflect) {
        if (axis == 0) {
            for (int i = 0; i < n1 / 2; ++i)
                for (int j = 0; j < n2; ++j)
                    std::swap(f[static_cast<std::size_t>(i) * n2 + j],
                              f[static_cast<std::size_t>(n1 - 1 - i) * n2 + j]);
        } else {
            for (int i = 0; i < n1; ++i)
                std::reverse(f.begin() + static_cast<std::size_t>(i) * n2,
                             f.begin() + static_cast<std::size_t>(i + 1) * n2);
        }
        return;
    }
    const auto k = frac_kernel(theta, g);
    if (axis == 0) {
        std::vector<cplx> col(n1), out(n1);
        for (int j = 0; j < n2; ++j) {
            for (int i = 0; i < n1; ++i) col[i] = f[static_cast<std::size_t>(i) * n2 + j];
            for (int i = 0; i < n1; ++i) {
                cplx acc{};
                const cplx* row = k.data() + static_cast<std::size_t>(i) * n1;
                for (int m = 0; m < n1; ++m) acc += row[m] * col[m];
                out[i] = acc;
            }
            for (int i = 0; i < n1; ++i) f[static_cast<std::size_t>(i) * n2 + j] = out[i];
        }
    } else {
        std::vector<cplx> out(n2);
        for (int i = 0; i < n1; ++i) {
            cplx* row_f = f.data() + static_cast<std::size_t>(i) * n2;
            for (int jj = 0; jj < n2; ++jj) {
                cplx acc{};
                const cplx* row_k = k.data() + static_cast<std::size_t>(jj) * n2;
                for (int m = 0; m < n2; ++m) acc += row_k[m] * row_f[m];
                out[jj] = acc;
            }
            std::copy(out.begin(), out.end(), row_f);
        }
    }
}

Density2D analytic_joint(const AnalyticPureState& s, double th1, double th2, const Grid& g1,
                         const Grid& g2) {
    const double w1 = wrap_angle(th1), w2 = wrap_angle(th2);
    const auto op1 = classify_angle(w1), op2 = classify_angle(w2);
    const double eps = 1e-12;
    const bool both_half_pi = std::abs(w1 - M_PI_2) < eps && std::abs(w2 - M_PI_2) < eps;

    std::vector<cplx> f(static_cast<std::size_t>(g1.n) * g2.n);
    const auto& field = both_half_pi ? s.momentum : s.position;
    for (int i = 0; i < g1.n; ++i) {
        const double x1 = g1.point(i);
        for (int j = 0; j < g2.n; ++j)
            f[static_cast<std::size_t>(i) * g2.n + j] = field(x1, g2.point(j));
    }
    if (!both_half_pi) {
        apply_axis(f, g1.n, g2.n, 0, op1, w1, g1);
        apply_axis(f, g1.n, g2.n, 1, op2, w2, g2);
    }
    Density2D d(g1, g2, field_density(f));
    if (d.renorm_defect > kJointDefectTol)
        throw coverage_error("joint_density: grid coverage defect " +
                             std::to_string(d.renorm_defect));
    return d;
}

} // namespace

Density2D joint_density(const State& s, double theta1, double theta2, const Grid& g1,
                        const Grid& g2) {
    if (const auto* f = std::get_if<FockState2>(&s)) return fock_joint(*f, theta1, theta2, g1, g2);
    if (const auto* a = std::get_if<AnalyticPureState>(&s))
        return analytic_joint(*a, theta1, theta2, g1, g2);

    const auto& ens = std::get<Ensemble>(s);
    if (ens.members.empty()) throw invalid_input("joint_density: empty ensemble");
    if (std::abs(ens.total_weight() - 1.0) > 1e-12)
        throw invalid_input("joint_density: ensemble weights do not sum to 1");
    std::vector<double> acc(static_cast<std::size_t>(g1.n) * g2.n, 0.0);
    for (const auto& m : ens.members) {
        const State member = std::visit([](const auto& ps) { return State(ps); }, m.state);
        const Density2D dm = joint_density(member, theta1, theta2, g1, g2);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += m.weight * dm.p[i];
    }
    return Density2D(g1, g2, std::move(acc));
}

std::pair<Density1D, Density1D> mode_marginals(const Density2D& joint) {
    const int n1 = joint.g1.n, n2 = joint.g2.n;
    std::vector<double> m1(n1, 0.0), m2(n2, 0.0);
    for (int i = 0; i < n1; ++i) {
        const double* row = joint.p.data() + static_cast<std::size_t>(i) * n2;
        const double wi = trap_weight(i, n1);
        double s = 0.0;
        for (int j = 0; j < n2; ++j) {
            const double w = trap_weight(j, n2);
            s += row[j] * w;
            m2[j] += row[j] * wi;
        }
        m1[i] = s * joint.g2.step();
    }
    for (int j = 0; j < n2; ++j) m2[j] *= joint.g1.step();
    return {Density1D(joint.g1, std::move(m1)), Density1D(joint.g2, std::move(m2))};
}

Density1D combo_marginal(const Density2D& joint, double a1, double a2, int sign) {
    if (!(a1 > 0.0) || !(a2 > 0.0)) throw invalid_input("combo_marginal: weights must be > 0");
    if (sign != 1 && sign != -1) throw invalid_input("combo_marginal: sign must be +-1");
    const Grid& g1 = joint.g1;
    const Grid& g2 = joint.g2;
    const double s2 = sign * a2;
    const double lo = a1 * g1.lo + std::min(s2 * g2.lo, s2 * g2.hi);
    const double hi = a1 * g1.hi + std::max(s2 * g2.lo, s2 * g2.hi);
    const int n = std::max(g1.n, g2.n);
    Grid gu{lo, hi, n};
    const double h1 = g1.step(), h2 = g2.step();
    std::vector<double> out(n, 0.0);
    for (int iu = 0; iu < n; ++iu) {
        const double u = gu.point(iu);
        double acc = 0.0;
        for (int i = 0; i < g1.n; ++i) {
            const double v = (u - a1 * g1.point(i)) / s2;
            const double idx = (v - g2.lo) / h2;
            if (idx < 0.0 || idx > g2.n - 1) continue;
            int k = static_cast<int>(idx);
            if (k > g2.n - 2) k = g2.n - 2;
            const double frac = idx - k;
            const double val = joint.at(i, k) * (1.0 - frac) + joint.at(i, k + 1) * frac;
            acc += val * trap_weight(i, g1.n);
        }
        out[iu] = acc * h1 / a2;
    }
    Density1D d(gu, std::move(out));
    if (d.renorm_defect > kComboDefectTol)
        throw coverage_error("combo_marginal: normalization defect " +
                             std::to_string(d.renorm_defect));
    return d;
}

Moments2D moments(const Density2D& joint) {
    const int n1 = joint.g1.n, n2 = joint.g2.n;
    const double h1 = joint.g1.step(), h2 = joint.g2.step();
    double m1 = 0, m2 = 0, e11 = 0, e22 = 0, e12 = 0;
    for (int i = 0; i < n1; ++i) {
        const double x1 = joint.g1.point(i);
        const double wi = trap_weight(i, n1);
        const double* row = joint.p.data() + static_cast<std::size_t>(i) * n2;
        double s0 = 0, s1 = 0, s2 = 0;
        for (int j = 0; j < n2; ++j) {
            const double x2 = joint.g2.point(j);
            const double w = row[j] * trap_weight(j, n2);
            s0 += w;
            s1 += w * x2;
            s2 += w * x2 * x2;
        }
        m1 += wi * s0 * x1;
        e11 += wi * s0 * x1 * x1;
        m2 += wi * s1;
        e22 += wi * s2;
        e12 += wi * s1 * x1;
    }
    const double z = h1 * h2;
    m1 *= z; m2 *= z; e11 *= z; e22 *= z; e12 *= z;
    return {m1, m2, e11 - m1 * m1, e22 - m2 * m2, e12 - m1 * m2};
}

double mean(const Density1D& d) {
    const double h = d.grid.step();
    double s = 0.0;
    for (int i = 0; i < d.grid.n; ++i) s += d.p[i] * d.grid.point(i) * trap_weight(i, d.grid.n);
    return s * h;
}

} // namespace cvent

#include "qeve/eavesdrop.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qeve {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<cplx> singlet_ket() {
    const double r = 1.0 / std::numbers::sqrt2;
    return {0.0, cplx{r, 0.0}, cplx{-r, 0.0}, 0.0};
}

Mat trace_out_last(const Mat& m, std::size_t keep_dim, std::size_t drop_dim) {
    Mat r(keep_dim, keep_dim);
    for (std::size_t i = 0; i < keep_dim; ++i)
        for (std::size_t j = 0; j < keep_dim; ++j)
            for (std::size_t e = 0; e < drop_dim; ++e) r(i, j) += m(i * drop_dim + e, j * drop_dim + e);
    return r;
}

}  // namespace

std::array<double, 4> ProbeParams::coefficients() const {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    return {ca * cb, ca * sb, sa * cb, -sa * sb};
}

IntensityGamma::IntensityGamma(double gamma) : gamma_(gamma) {
    if (!(gamma >= 0.0 && gamma <= kPi / 2.0 + 1e-12))
        throw std::invalid_argument("gamma must lie in [0, pi/2]");
}

ProbeParams IntensityGamma::params() const { return {0.0, kPi / 4.0 - gamma_ / 2.0}; }

double axis_angle(SymmetryAxis axis) {
    switch (axis) {
        case SymmetryAxis::up: return 0.0;
        case SymmetryAxis::right: return kPi / 2.0;
        case SymmetryAxis::down: return kPi;
        case SymmetryAxis::left: return 3.0 * kPi / 2.0;
    }
    throw std::invalid_argument("bad axis");
}

Mat axis_rotation(SymmetryAxis axis) {
    const double h = axis_angle(axis) / 2.0;
    Mat r(2, 2);
    r(0, 0) = std::cos(h);
    r(0, 1) = -std::sin(h);
    r(1, 0) = std::sin(h);
    r(1, 1) = std::cos(h);
    return r;
}

Mat probe_unitary(const ProbeParams& p) {
    const std::array<double, 4> a = p.coefficients();
    Mat m(4, 4);
    for (std::size_t j = 0; j < 4; ++j) {
        m(j, 0) = a[j];      // |up,0>
        m(j, 2) = a[3 - j];  // |down,0>
    }
    return complete_unitary(m, {true, false, true, false});
}

Mat probe_unitary(const ProbeParams& p, SymmetryAxis axis) {
    const Mat u = probe_unitary(p);
    if (axis == SymmetryAxis::up) return u;
    const Mat r = axis_rotation(axis);
    const Mat id = Mat::identity(2);
    return kron(r, id) * u * kron(r.adjoint(), id);
}

ChannelOutput apply_probe(double theta, const ProbeParams& p) {
    return apply_probe(theta, p, SymmetryAxis::up);
}

ChannelOutput apply_probe(double theta, const ProbeParams& p, SymmetryAxis axis) {
    const std::vector<cplx> in = kron(bloch_ket(theta), std::vector<cplx>{1.0, 0.0});
    const std::vector<cplx> out = probe_unitary(p, axis) * in;
    TwoQubitDensity joint(outer(out, out));
    QubitDensity bob = partial_trace(joint, Subsystem::first);
    QubitDensity eve = partial_trace(joint, Subsystem::second);
    return {std::move(joint), std::move(bob), std::move(eve)};
}

QubitDensity symmetrized_bob(double theta, const ProbeParams& p) {
    Mat sum(2, 2);
    for (SymmetryAxis axis : kAllAxes) sum += apply_probe(theta, p, axis).rho_bob.mat();
    return QubitDensity(cplx{0.25, 0.0} * sum);
}

double shrink_factor(const ProbeParams& p) {
    return std::cos(2.0 * p.alpha) * (1.0 + std::sin(2.0 * p.beta)) / 2.0;
}

double shrink_factor(const IntensityGamma& g) { return (1.0 + std::cos(g.gamma())) / 2.0; }

double ber(const ProbeParams& p) { return (1.0 - shrink_factor(p)) / 2.0; }

double ber(const IntensityGamma& g) { return (1.0 - std::cos(g.gamma())) / 4.0; }

TwoQubitDensity epr_joint(const ProbeParams& p, bool symmetrized) {
    const std::vector<cplx> in = kron(singlet_ket(), std::vector<cplx>{1.0, 0.0});
    const Mat id = Mat::identity(2);
    Mat sum(4, 4);
    const auto axes = symmetrized ? std::vector<SymmetryAxis>(kAllAxes.begin(), kAllAxes.end())
                                  : std::vector<SymmetryAxis>{SymmetryAxis::up};
    for (SymmetryAxis axis : axes) {
        const std::vector<cplx> out = kron(id, probe_unitary(p, axis)) * in;
        sum += trace_out_last(outer(out, out), 4, 2);
    }
    return TwoQubitDensity(cplx{1.0 / static_cast<double>(axes.size()), 0.0} * sum);
}

TwoQubitDensity epr_joint(const IntensityGamma& g, bool symmetrized) {
    return epr_joint(g.params(), symmetrized);
}

TwoQubitDensity eve_joint(const IntensityGamma& g) {
    const double s = std::sin(g.gamma());
    const std::vector<cplx> psi = singlet_ket();
    Mat m = outer(psi, psi);
    m *= cplx{s, 0.0};
    Mat id = Mat::identity(4);
    id *= cplx{(1.0 - s) / 4.0, 0.0};
    return TwoQubitDensity(m + id);
}

InterceptResend intercept_resend(double p_fraction) {
    if (!(p_fraction >= 0.0 && p_fraction <= 1.0))
        throw std::invalid_argument("fraction must lie in [0, 1]");
    return {p_fraction / 4.0, p_fraction / 2.0};
}

}  // namespace qeve

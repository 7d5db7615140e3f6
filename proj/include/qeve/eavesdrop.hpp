#pragma once

#include <array>

#include "qeve/quantum.hpp"

namespace qeve {

// Probe coupling angles.  The interaction on (signal, probe) sends
// |up,0>   -> a1|up,0> + a2|up,1> + a3|down,0> + a4|down,1>
// |down,0> -> a4|up,0> + a3|up,1> + a2|down,0> + a1|down,1>
// with a1 = cos(alpha)cos(beta), a2 = cos(alpha)sin(beta),
//      a3 = sin(alpha)cos(beta), a4 = -sin(alpha)sin(beta).
struct ProbeParams {
    double alpha = 0.0;
    double beta = 0.0;
    std::array<double, 4> coefficients() const;
};

// One-parameter subfamily where the probe is left in one of two states
// |psi(pi/2 -+ gamma)> depending on the signal bit.
struct IntensityGamma {
    explicit IntensityGamma(double gamma);
    double gamma() const { return gamma_; }
    ProbeParams params() const;

private:
    double gamma_;
};

// The four symmetry-breaking orientations on the Poincare sphere.
enum class SymmetryAxis { up, right, down, left };

inline constexpr std::array<SymmetryAxis, 4> kAllAxes = {
    SymmetryAxis::up, SymmetryAxis::right, SymmetryAxis::down, SymmetryAxis::left};

double axis_angle(SymmetryAxis axis);

// 2x2 rotation taking |psi(theta)> to |psi(theta + axis_angle)>.
Mat axis_rotation(SymmetryAxis axis);

// The 4x4 interaction unitary on signal (x) probe, probe starting in |0>.
// The two columns not fixed by the definition above are filled in by a
// deterministic orthonormal completion; they never touch an observable.
Mat probe_unitary(const ProbeParams& p);
Mat probe_unitary(const ProbeParams& p, SymmetryAxis axis);

struct ChannelOutput {
    TwoQubitDensity joint;  // signal (x) probe
    QubitDensity rho_bob;
    QubitDensity rho_eve;
};

// Sends |psi(theta)> through the probe interaction.
ChannelOutput apply_probe(double theta, const ProbeParams& p);
ChannelOutput apply_probe(double theta, const ProbeParams& p, SymmetryAxis axis);

// Equal-weight average of the channel over the four axes; shrinks the
// input Bloch vector by shrink_factor(p).
QubitDensity symmetrized_bob(double theta, const ProbeParams& p);

double shrink_factor(const ProbeParams& p);
double shrink_factor(const IntensityGamma& g);

// Error rate seen by Bob under the axis-averaged channel, (1 - eta)/2.
double ber(const ProbeParams& p);
double ber(const IntensityGamma& g);

// Alice-Bob state when the source emits a singlet and the probe couples
// to Bob's half.
TwoQubitDensity epr_joint(const ProbeParams& p, bool symmetrized);
TwoQubitDensity epr_joint(const IntensityGamma& g, bool symmetrized);

// Alice-Eve state after Bob is traced out, in the correlation-equivalent
// Werner form: every correlator satisfies E(a, d) = -sin(gamma) a.d, the
// correlations Eve can realize by treating her axis choice as her
// measurement setting.
TwoQubitDensity eve_joint(const IntensityGamma& g);

struct InterceptResend {
    double q;
    double i_ae;
};

// Measure a fraction p of the pulses in a random BB84 basis and resend
// the outcome eigenstate.
InterceptResend intercept_resend(double p_fraction);

}  // namespace qeve

#pragma once

#include <string>

#include "qeve/eavesdrop.hpp"
#include "qeve/quantum.hpp"

namespace qeve {

double binary_entropy(double x);

// 1 - h2(q): mutual information of a binary symmetric channel.
double info_ab(double q);

// Probability that the signal was |up> given Eve's probe said "up".
double posterior_up(double gamma);

// Eve's information for the intensity subfamily with delayed measurement.
double info_eve_intensity(double gamma);

struct BinaryEnsemble {
    QubitDensity rho0;
    QubitDensity rho1;
    double prior0 = 0.5;
};

struct MeasurementInfo {
    double bits;
    MeasurementDirection direction;
};

// Largest mutual information a projective measurement can extract about
// the ensemble label, maximized over one angle in the plane spanned by
// the two Bloch vectors (a 256-point scan refined by golden section).
MeasurementInfo accessible_info_detail(const BinaryEnsemble& e);
double accessible_info(const BinaryEnsemble& e);

double von_neumann_entropy(const QubitDensity& rho);
double holevo_bound(const BinaryEnsemble& e);

// Eve's information for a general probe: she knows her axis draw and the
// announced basis, so the value is the average over the four axes and the
// two bases of the accessible information of her conditional states.
double info_eve_general(const ProbeParams& p);

struct ProbeOptimum {
    ProbeParams params;
    double i_ae;
};

// Maximizes info_eve_general over probes with ber(p) = q_target by
// scanning alpha along the fixed-shrink curve (beta solved from alpha)
// and refining by golden section.  Ties go to the smaller alpha.
ProbeOptimum optimize_info(double q_target);

struct StrategyReport {
    double eta;
    double q;
    double fidelity;
    double i_ab;
    double i_ae;
    std::string strategy;
};

StrategyReport strategy_report(const ProbeParams& p);
StrategyReport strategy_report(const IntensityGamma& g);

}  // namespace qeve

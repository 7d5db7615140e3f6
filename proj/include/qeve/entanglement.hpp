#pragma once

#include "qeve/eavesdrop.hpp"
#include "qeve/quantum.hpp"

namespace qeve {

struct BellSetting {
    MeasurementDirection a;
    MeasurementDirection a_prime;
    MeasurementDirection b;
    MeasurementDirection b_prime;
};

// The 45-degree-stepped great-circle setting; saturates 2*sqrt(2) on the
// singlet and keeps the sign positive.
BellSetting fortyfive_setting();

double chsh_value(const TwoQubitDensity& rho, const BellSetting& s);

// Closed forms for the intensity subfamily.
double s_ab_intensity(double gamma);
double s_ae_intensity(double gamma);

struct ChshSearch {
    double s;
    BellSetting setting;
};

// Numerically maximizes the CHSH combination over all four directions.
// Bob's pair is searched on a grid (great circle first, then the whole
// sphere) and polished coordinatewise; Alice's pair is then optimal in
// closed form.  Agrees with 2*sqrt(horodecki_m) to ~1e-7.
ChshSearch best_chsh(const TwoQubitDensity& rho);

double singlet_fraction(const TwoQubitDensity& rho);

// Strictly greater than 1/2, with a 1e-12 guard against rounding from
// the 1/sqrt(2) amplitudes sitting exactly on the boundary.
bool qpa_feasible(const TwoQubitDensity& rho);

struct BellReport {
    double s_ab;
    double s_ae;
    double horodecki;
    double q;
};

// S values, Horodecki score of the symmetrized joint state, and error
// rate for one intensity setting.
BellReport bell_report_intensity(double gamma);

}  // namespace qeve

#pragma once

#include <array>
#include <vector>

#include "qeve/linalg.hpp"

namespace qeve {

struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;
    double norm() const;
};

// Unit vector on the Bloch sphere used as a measurement axis.
struct MeasurementDirection {
    double x = 0.0, y = 0.0, z = 1.0;

    // Great-circle direction in the x-z plane at angle `chi` from +z.
    static MeasurementDirection from_angle(double chi);
    static MeasurementDirection from_unit(double x, double y, double z);
};

const Mat& pauli_x();
const Mat& pauli_y();
const Mat& pauli_z();

// sigma . n for a measurement direction.
Mat pauli_dot(const MeasurementDirection& n);

// Single qubit density matrix.  The constructor checks hermiticity, unit
// trace and positivity so downstream code can assume a valid state.
class QubitDensity {
public:
    explicit QubitDensity(Mat m);
    const Mat& mat() const { return m_; }

private:
    Mat m_;
};

class TwoQubitDensity {
public:
    explicit TwoQubitDensity(Mat m);
    const Mat& mat() const { return m_; }

private:
    Mat m_;
};

// |psi(theta)> = cos(theta/2)|up> + sin(theta/2)|down>, a great-circle state
// in the x-z plane.
std::vector<cplx> bloch_ket(double theta);
QubitDensity pure_state_density(double theta);

BlochVector bloch_of(const QubitDensity& rho);
QubitDensity density_of(const BlochVector& r);

enum class Subsystem { first, second };

QubitDensity partial_trace(const TwoQubitDensity& rho, Subsystem keep);

// <psi(theta)| rho |psi(theta)>
double fidelity_pure(double theta, const QubitDensity& rho);

// Correlation matrix T_ij = Tr[rho (sigma_i x sigma_j)].
std::array<std::array<double, 3>, 3> correlation_matrix(const TwoQubitDensity& rho);

// Largest value of M = m1 + m2 over the two largest eigenvalues of T^T T;
// the best attainable CHSH value is 2 sqrt(M).
double horodecki_m(const TwoQubitDensity& rho);

// E(a, b) = Tr[rho (sigma.a x sigma.b)]
double correlation(const TwoQubitDensity& rho, const MeasurementDirection& a,
                   const MeasurementDirection& b);

// CHSH combination E(a,b) + E(a,b') + E(a',b) - E(a',b')
double chsh_value(const TwoQubitDensity& rho, const MeasurementDirection& a,
                  const MeasurementDirection& a_prime, const MeasurementDirection& b,
                  const MeasurementDirection& b_prime);

}  // namespace qeve

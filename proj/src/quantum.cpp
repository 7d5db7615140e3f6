#include "qeve/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace qeve {

namespace {

constexpr double kStateTol = 1e-9;

void check_density(const Mat& m, std::size_t dim) {
    if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument("density matrix has wrong shape");
    if (!is_hermitian(m, kStateTol)) throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(m.trace() - cplx{1.0, 0.0}) > kStateTol)
        throw std::invalid_argument("density matrix trace is not 1");
    const std::vector<double> ev = hermitian_eigenvalues(m);
    if (ev.front() < -kStateTol) throw std::invalid_argument("density matrix is not positive");
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

MeasurementDirection MeasurementDirection::from_angle(double chi) {
    return {std::sin(chi), 0.0, std::cos(chi)};
}

MeasurementDirection MeasurementDirection::from_unit(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (std::abs(n - 1.0) > 1e-9) throw std::invalid_argument("measurement direction must be a unit vector");
    return {x / n, y / n, z / n};
}

const Mat& pauli_x() {
    static const Mat m = [] {
        Mat p(2, 2);
        p(0, 1) = 1.0;
        p(1, 0) = 1.0;
        return p;
    }();
    return m;
}

const Mat& pauli_y() {
    static const Mat m = [] {
        Mat p(2, 2);
        p(0, 1) = cplx{0.0, -1.0};
        p(1, 0) = cplx{0.0, 1.0};
        return p;
    }();
    return m;
}

const Mat& pauli_z() {
    static const Mat m = [] {
        Mat p(2, 2);
        p(0, 0) = 1.0;
        p(1, 1) = -1.0;
        return p;
    }();
    return m;
}

Mat pauli_dot(const MeasurementDirection& n) {
    Mat m(2, 2);
    m(0, 0) = n.z;
    m(1, 1) = -n.z;
    m(0, 1) = cplx{n.x, -n.y};
    m(1, 0) = cplx{n.x, n.y};
    return m;
}

QubitDensity::QubitDensity(Mat m) : m_(std::move(m)) { check_density(m_, 2); }

TwoQubitDensity::TwoQubitDensity(Mat m) : m_(std::move(m)) { check_density(m_, 4); }

std::vector<cplx> bloch_ket(double theta) {
    return {cplx{std::cos(theta / 2.0), 0.0}, cplx{std::sin(theta / 2.0), 0.0}};
}

QubitDensity pure_state_density(double theta) {
    const std::vector<cplx> psi = bloch_ket(theta);
    return QubitDensity(outer(psi, psi));
}

BlochVector bloch_of(const QubitDensity& rho) {
    const Mat& m = rho.mat();
    return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

QubitDensity density_of(const BlochVector& r) {
    if (r.norm() > 1.0 + 1e-9) throw std::invalid_argument("Bloch vector longer than 1");
    Mat m(2, 2);
    m(0, 0) = 0.5 * (1.0 + r.z);
    m(1, 1) = 0.5 * (1.0 - r.z);
    m(0, 1) = 0.5 * cplx{r.x, -r.y};
    m(1, 0) = 0.5 * cplx{r.x, r.y};
    return QubitDensity(m);
}

QubitDensity partial_trace(const TwoQubitDensity& rho, Subsystem keep) {
    const Mat& m = rho.mat();
    Mat r(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                if (keep == Subsystem::first)
                    r(i, j) += m(2 * i + k, 2 * j + k);
                else
                    r(i, j) += m(2 * k + i, 2 * k + j);
            }
    return QubitDensity(r);
}

double fidelity_pure(double theta, const QubitDensity& rho) {
    const std::vector<cplx> psi = bloch_ket(theta);
    cplx f = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) f += std::conj(psi[i]) * rho.mat()(i, j) * psi[j];
    return f.real();
}

std::array<std::array<double, 3>, 3> correlation_matrix(const TwoQubitDensity& rho) {
    const Mat* sigma[3] = {&pauli_x(), &pauli_y(), &pauli_z()};
    std::array<std::array<double, 3>, 3> t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = (kron(*sigma[i], *sigma[j]) * rho.mat()).trace().real();
    return t;
}

double horodecki_m(const TwoQubitDensity& rho) {
    const auto t = correlation_matrix(rho);
    Mat tt(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += t[k][i] * t[k][j];
            tt(i, j) = s;
        }
    const std::vector<double> ev = hermitian_eigenvalues(tt);
    return ev[2] + ev[1];
}

double correlation(const TwoQubitDensity& rho, const MeasurementDirection& a,
                   const MeasurementDirection& b) {
    return (kron(pauli_dot(a), pauli_dot(b)) * rho.mat()).trace().real();
}

double chsh_value(const TwoQubitDensity& rho, const MeasurementDirection& a,
                  const MeasurementDirection& a_prime, const MeasurementDirection& b,
                  const MeasurementDirection& b_prime) {
    return correlation(rho, a, b) + correlation(rho, a, b_prime) + correlation(rho, a_prime, b) -
           correlation(rho, a_prime, b_prime);
}

}  // namespace qeve

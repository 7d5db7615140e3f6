#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qeve/quantum.hpp"

using namespace qeve;

namespace {
constexpr double kPi = std::numbers::pi;

Mat singlet() {
    const double r = 1.0 / std::numbers::sqrt2;
    const std::vector<cplx> psi{0.0, cplx{r, 0.0}, cplx{-r, 0.0}, 0.0};
    return outer(psi, psi);
}
}  // namespace

TEST_CASE("matrix basics") {
    Mat a(2, 2);
    a(0, 0) = cplx{1.0, 0.0};
    a(0, 1) = cplx{0.0, 1.0};
    a(1, 0) = cplx{2.0, 0.0};
    a(1, 1) = cplx{0.0, -3.0};
    const Mat ad = a.adjoint();
    CHECK(ad(1, 0) == cplx{0.0, -1.0});
    CHECK(ad(0, 1) == cplx{2.0, 0.0});
    CHECK(a.trace() == cplx{1.0, -3.0});

    const Mat id = Mat::identity(3);
    CHECK((id * id).trace().real() == doctest::Approx(3.0));

    const Mat k = kron(Mat::identity(2), a);
    CHECK(k.rows() == 4);
    CHECK(k(2, 2) == a(0, 0));
    CHECK(k(0, 2) == cplx{0.0, 0.0});
}

TEST_CASE("hermitian eigenvalues match characteristic roots") {
    Mat m(3, 3);
    m(0, 0) = 2.0;
    m(1, 1) = -1.0;
    m(2, 2) = 0.5;
    m(0, 1) = cplx{0.3, 0.4};
    m(1, 0) = cplx{0.3, -0.4};
    m(1, 2) = cplx{0.0, 0.7};
    m(2, 1) = cplx{0.0, -0.7};
    const std::vector<double> ev = hermitian_eigenvalues(m);
    REQUIRE(ev.size() == 3);
    double tr = 0.0, tr2 = 0.0;
    for (const double e : ev) {
        tr += e;
        tr2 += e * e;
    }
    CHECK(tr == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(tr2 == doctest::Approx((m * m).trace().real()).epsilon(1e-12));
    CHECK(ev[0] <= ev[1]);
    CHECK(ev[1] <= ev[2]);
}

TEST_CASE("unitary completion preserves the given columns") {
    Mat m(4, 4);
    m(0, 0) = std::cos(0.3);
    m(1, 0) = std::sin(0.3);
    m(3, 2) = 1.0;
    const Mat u = complete_unitary(m, {true, false, true, false});
    CHECK(is_unitary(u, 1e-12));
    CHECK(std::abs(u(0, 0) - cplx{std::cos(0.3), 0.0}) < 1e-15);
    CHECK(std::abs(u(3, 2) - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("bloch round trips") {
    for (const double theta : {0.0, 0.4, kPi / 2, 2.1, kPi}) {
        const QubitDensity rho = pure_state_density(theta);
        const BlochVector v = bloch_of(rho);
        CHECK(v.x == doctest::Approx(std::sin(theta)).epsilon(1e-12));
        CHECK(std::abs(v.y) < 1e-12);
        CHECK(v.z == doctest::Approx(std::cos(theta)).epsilon(1e-12));
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
        const QubitDensity back = density_of(v);
        CHECK((back.mat() - rho.mat()).max_abs() < 1e-12);
    }
    CHECK_THROWS_AS(density_of(BlochVector{1.0, 1.0, 0.2}), std::invalid_argument);
}

TEST_CASE("partial trace of a product and of the singlet") {
    const QubitDensity a = pure_state_density(0.7);
    const QubitDensity b = pure_state_density(2.0);
    const TwoQubitDensity ab{kron(a.mat(), b.mat())};
    CHECK((partial_trace(ab, Subsystem::first).mat() - a.mat()).max_abs() < 1e-12);
    CHECK((partial_trace(ab, Subsystem::second).mat() - b.mat()).max_abs() < 1e-12);

    const TwoQubitDensity s{singlet()};
    const QubitDensity half = partial_trace(s, Subsystem::first);
    CHECK(bloch_of(half).norm() < 1e-12);
}

TEST_CASE("fidelity against a pure target") {
    CHECK(fidelity_pure(0.9, pure_state_density(0.9)) == doctest::Approx(1.0).epsilon(1e-12));
    // overlap of pure states falls off as cos^2 of half the angle
    const double f = fidelity_pure(0.0, pure_state_density(1.0));
    CHECK(f == doctest::Approx(std::cos(0.5) * std::cos(0.5)).epsilon(1e-12));
}

TEST_CASE("singlet correlations") {
    const TwoQubitDensity s{singlet()};
    const auto t = correlation_matrix(s);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(t[i][j] == doctest::Approx(i == j ? -1.0 : 0.0).epsilon(1e-12));
    CHECK(horodecki_m(s) == doctest::Approx(2.0).epsilon(1e-12));

    const auto dir = [](double chi) { return MeasurementDirection::from_angle(chi); };
    CHECK(correlation(s, dir(0.0), dir(0.0)) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(correlation(s, dir(0.0), dir(kPi)) == doctest::Approx(1.0).epsilon(1e-12));
    // sign layout of the four-term combination
    const double v = chsh_value(s, dir(0.0), dir(kPi / 2), dir(5 * kPi / 4), dir(3 * kPi / 4));
    CHECK(v == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-12));
}

TEST_CASE("direction validation") {
    CHECK_THROWS_AS(MeasurementDirection::from_unit(0.5, 0.0, 0.0), std::invalid_argument);
    const MeasurementDirection d = MeasurementDirection::from_angle(0.3);
    CHECK(d.x == doctest::Approx(std::sin(0.3)));
    CHECK(d.z == doctest::Approx(std::cos(0.3)));
}

TEST_CASE("density validation rejects junk") {
    Mat m(2, 2);
    m(0, 0) = 1.2;
    m(1, 1) = -0.2;
    CHECK_THROWS_AS(QubitDensity{m}, std::invalid_argument);
    Mat n(2, 2);
    n(0, 0) = 0.5;
    n(1, 1) = 0.5;
    n(0, 1) = cplx{0.0, 0.9};
    n(1, 0) = cplx{0.0, -0.9};
    CHECK_THROWS_AS(QubitDensity{n}, std::invalid_argument);
}

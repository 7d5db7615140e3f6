#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qeve/eavesdrop.hpp"

using namespace qeve;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("interaction is unitary across the parameter plane") {
    for (const double alpha : {0.0, 0.1, kPi / 12, 0.5, kPi / 4})
        for (const double beta : {0.0, 0.2, kPi / 8, kPi / 4, 1.2}) {
            const Mat u = probe_unitary(ProbeParams{alpha, beta});
            CHECK(is_unitary(u, 1e-12));
        }
}

TEST_CASE("coefficient columns sit where the definition says") {
    const ProbeParams p{0.3, 0.7};
    const auto a = p.coefficients();
    CHECK(a[0] == doctest::Approx(std::cos(0.3) * std::cos(0.7)).epsilon(1e-14));
    CHECK(a[1] == doctest::Approx(std::cos(0.3) * std::sin(0.7)).epsilon(1e-14));
    CHECK(a[2] == doctest::Approx(std::sin(0.3) * std::cos(0.7)).epsilon(1e-14));
    CHECK(a[3] == doctest::Approx(-std::sin(0.3) * std::sin(0.7)).epsilon(1e-14));
    const Mat u = probe_unitary(p);
    // |up,0> is column 0 (basis order: signal bit, probe bit)
    for (int j = 0; j < 4; ++j) CHECK(u(j, 0) == cplx{a[j], 0.0});
    // |down,0> is column 2, coefficients reversed
    for (int j = 0; j < 4; ++j) CHECK(u(j, 2) == cplx{a[3 - j], 0.0});
}

TEST_CASE("intensity subfamily maps onto the coupling plane") {
    const IntensityGamma g(kPi / 2);
    CHECK(g.params().alpha == 0.0);
    CHECK(g.params().beta == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(IntensityGamma(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(IntensityGamma(2.0), std::invalid_argument);
}

TEST_CASE("output states match the closed forms") {
    const double alpha = 0.23, beta = 0.61;
    const ProbeParams p{alpha, beta};
    for (const double theta : {0.0, 0.5, 1.3, 2.8}) {
        const ChannelOutput out = apply_probe(theta, p);
        const double c2a = std::cos(2 * alpha), s2a = std::sin(2 * alpha);
        const double c2b = std::cos(2 * beta), s2b = std::sin(2 * beta);
        const Mat& rb = out.rho_bob.mat();
        CHECK(rb(0, 0).real() ==
              doctest::Approx(0.5 * (1 + std::cos(theta) * c2a)).epsilon(1e-12));
        CHECK(rb(0, 1).real() ==
              doctest::Approx(0.5 * (s2a * c2b + std::sin(theta) * c2a * s2b)).epsilon(1e-12));
        // probe state: same form with the two angles swapped
        const Mat& re = out.rho_eve.mat();
        CHECK(re(0, 0).real() ==
              doctest::Approx(0.5 * (1 + std::cos(theta) * c2b)).epsilon(1e-12));
        CHECK(re(0, 1).real() ==
              doctest::Approx(0.5 * (s2b * c2a + std::sin(theta) * c2b * s2a)).epsilon(1e-12));
        // the joint state reduces consistently
        CHECK((partial_trace(out.joint, Subsystem::first).mat() - rb).max_abs() < 1e-12);
        CHECK((partial_trace(out.joint, Subsystem::second).mat() - re).max_abs() < 1e-12);
    }
}

TEST_CASE("swapping the coupling angles swaps the two receivers") {
    const ChannelOutput ab = apply_probe(0.9, ProbeParams{0.2, 0.5});
    const ChannelOutput ba = apply_probe(0.9, ProbeParams{0.5, 0.2});
    CHECK((ab.rho_bob.mat() - ba.rho_eve.mat()).max_abs() < 1e-12);
    CHECK((ab.rho_eve.mat() - ba.rho_bob.mat()).max_abs() < 1e-12);
}

TEST_CASE("axis average shrinks the great circle isotropically") {
    const ProbeParams p{0.17, 0.4};
    const double eta = shrink_factor(p);
    CHECK(eta == doctest::Approx(std::cos(2 * 0.17) * (1 + std::sin(2 * 0.4)) / 2.0)
                     .epsilon(1e-12));
    for (const double theta : {0.0, 0.7, 1.9, 3.0}) {
        const BlochVector v = bloch_of(symmetrized_bob(theta, p));
        CHECK(v.x == doctest::Approx(eta * std::sin(theta)).epsilon(1e-10));
        CHECK(v.z == doctest::Approx(eta * std::cos(theta)).epsilon(1e-10));
        CHECK(std::abs(v.y) < 1e-12);
    }
    CHECK(ber(p) == doctest::Approx((1 - eta) / 2).epsilon(1e-12));
}

TEST_CASE("intensity error rate is a quarter of 1 - cos gamma") {
    for (const double g : {0.0, 0.3, 1.0, kPi / 2}) {
        CHECK(ber(IntensityGamma(g)) == doctest::Approx((1 - std::cos(g)) / 4).epsilon(1e-12));
        CHECK(shrink_factor(IntensityGamma(g)) ==
              doctest::Approx((1 + std::cos(g)) / 2).epsilon(1e-12));
    }
}

TEST_CASE("pair state marginals and correlation matrix") {
    const double g = 0.8;
    const double cg = std::cos(g);
    const double eta = (1 + cg) / 2;
    for (const bool sym : {false, true}) {
        const TwoQubitDensity joint = epr_joint(IntensityGamma(g), sym);
        // Alice's half stays maximally mixed
        CHECK(bloch_of(partial_trace(joint, Subsystem::first)).norm() < 1e-12);
        const auto t = correlation_matrix(joint);
        const double want_x = sym ? -eta : -cg;
        const double want_z = sym ? -eta : -1.0;
        CHECK(t[0][0] == doctest::Approx(want_x).epsilon(1e-12));
        CHECK(t[1][1] == doctest::Approx(-cg).epsilon(1e-12));
        CHECK(t[2][2] == doctest::Approx(want_z).epsilon(1e-12));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (i != j) CHECK(std::abs(t[i][j]) < 1e-12);
    }
}

TEST_CASE("probe pair correlators scale with sin gamma") {
    const double g = 0.85;
    const TwoQubitDensity ae = eve_joint(IntensityGamma(g));
    for (const double chi_a : {0.0, 0.6, 1.4})
        for (const double chi_d : {0.2, 1.0, 2.5}) {
            const double e = correlation(ae, MeasurementDirection::from_angle(chi_a),
                                         MeasurementDirection::from_angle(chi_d));
            CHECK(e == doctest::Approx(-std::sin(g) * std::cos(chi_a - chi_d)).epsilon(1e-12));
        }
}

TEST_CASE("intercept-resend bookkeeping") {
    const InterceptResend full = intercept_resend(1.0);
    CHECK(full.q == doctest::Approx(0.25));
    CHECK(full.i_ae == doctest::Approx(0.5));
    const InterceptResend half = intercept_resend(0.4);
    CHECK(half.q == doctest::Approx(0.1));
    CHECK(half.i_ae == doctest::Approx(0.2));
    CHECK_THROWS_AS(intercept_resend(1.5), std::invalid_argument);
    CHECK_THROWS_AS(intercept_resend(-0.1), std::invalid_argument);
}

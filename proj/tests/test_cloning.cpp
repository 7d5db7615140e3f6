#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qeve/cloning.hpp"

using namespace qeve;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

double pg_closed_form(double alpha) {
    return 0.5 + std::cos(2 * alpha) * (1 + std::sin(2 * alpha)) / 4.0;
}
}  // namespace

TEST_CASE("machine unitary is unitary with the right first columns") {
    const Mat& u = uqcm_unitary();
    CHECK(is_unitary(u, 1e-12));
    CHECK(u(0, 0).real() == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    CHECK(u(3, 0).real() == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-14));
    CHECK(u(5, 0).real() == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-14));
    CHECK(u(7, 4).real() == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    CHECK(u(2, 4).real() == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-14));
    CHECK(u(4, 4).real() == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-14));
}

TEST_CASE("equal couplings give identical copies") {
    for (const double alpha : {0.1, kPi / 12, 0.4})
        for (const double theta : {0.0, 0.8, 2.0}) {
            const CloneOutput out = clone(ClonerSpec::pgqcm(alpha), theta);
            CHECK((out.rho_original.mat() - out.rho_copy.mat()).max_abs() < 1e-12);
            CHECK(!out.rho_machine.has_value());
        }
}

TEST_CASE("universal cloner output shrinks every input by two thirds") {
    for (const double theta : {0.0, 0.5, 1.2, 2.7, 5.0}) {
        const CloneOutput out = clone(ClonerSpec::uqcm(), theta);
        CHECK(out.rho_machine.has_value());
        for (const QubitDensity* rho : {&out.rho_original, &out.rho_copy}) {
            const BlochVector v = bloch_of(*rho);
            CHECK(v.x == doctest::Approx(2.0 / 3.0 * std::sin(theta)).epsilon(1e-12));
            CHECK(v.z == doctest::Approx(2.0 / 3.0 * std::cos(theta)).epsilon(1e-12));
            CHECK(std::abs(v.y) < 1e-12);
            CHECK(fidelity_pure(theta, *rho) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("mean fidelity quadrature agrees with the closed form") {
    for (const double alpha : {0.0, 0.1, kPi / 12, 0.3, kPi / 4}) {
        CHECK(mean_fidelity(ClonerSpec::pgqcm(alpha)) ==
              doctest::Approx(pg_closed_form(alpha)).epsilon(1e-10));
        CHECK(mean_fidelity(ClonerSpec::pgqcm_symmetrized(alpha)) ==
              doctest::Approx(pg_closed_form(alpha)).epsilon(1e-10));
    }
    CHECK(mean_fidelity(ClonerSpec::uqcm()) == doctest::Approx(5.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("coupling optimum") {
    const ClonerOptimum opt = optimize_cloner();
    CHECK(opt.alpha == doctest::Approx(kPi / 12).epsilon(1e-5));
    CHECK(opt.f_bar == doctest::Approx((8 + 3 * std::sqrt(3.0)) / 16).epsilon(1e-10));
    // relaxing to two independent couplings lands back on the equal-angle point
    CHECK(opt.relaxed_alpha == doctest::Approx(opt.relaxed_beta).epsilon(1e-3));
    CHECK(opt.relaxed_f_bar == doctest::Approx(opt.f_bar).epsilon(1e-8));
}

TEST_CASE("copy loci") {
    const std::vector<BlochVector> uq = bloch_locus(ClonerSpec::uqcm(), 64);
    for (const BlochVector& v : uq)
        CHECK(v.norm() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const std::vector<BlochVector> sym =
        bloch_locus(ClonerSpec::pgqcm_symmetrized(kPi / 12), 64);
    const double eta = 3 * std::sqrt(3.0) / 8;
    for (const BlochVector& v : sym) CHECK(v.norm() == doctest::Approx(eta).epsilon(1e-10));
    // the raw coupling keeps a state-dependent locus
    const std::vector<BlochVector> raw = bloch_locus(ClonerSpec::pgqcm(kPi / 12), 64);
    double lo = 2.0, hi = 0.0;
    for (const BlochVector& v : raw) {
        lo = std::min(lo, v.norm());
        hi = std::max(hi, v.norm());
    }
    CHECK(hi - lo > 1e-3);
    CHECK_THROWS_AS(bloch_locus(ClonerSpec::uqcm(), 1), std::invalid_argument);
}

TEST_CASE("broadcast pair states") {
    const auto [b1, b2] = broadcast_joints(ClonerSpec::uqcm());
    CHECK((b1.mat() - b2.mat()).max_abs() < 1e-12);
    const auto t = correlation_matrix(b1);
    for (int i = 0; i < 3; ++i)
        CHECK(t[i][i] == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    // raw coupling: each receiver pair's correlation score is exactly 1
    for (const double alpha : {0.05, kPi / 12, 0.35}) {
        const auto [r1, r2] = broadcast_joints(ClonerSpec::pgqcm(alpha));
        CHECK(std::abs(horodecki_m(r1) - 1.0) < 1e-12);
        CHECK(std::abs(horodecki_m(r2) - 1.0) < 1e-12);
    }
}

TEST_CASE("broadcast Bell scores") {
    const BellSetting s45 = fortyfive_setting();
    const BroadcastBell sym = broadcast_bell(ClonerSpec::pgqcm_symmetrized(kPi / 12), s45);
    const double eta = 3 * std::sqrt(3.0) / 8;
    CHECK(sym.s_b1 == doctest::Approx(2 * kSqrt2 * eta).epsilon(1e-12));
    CHECK(sym.s_b2 == doctest::Approx(2 * kSqrt2 * eta).epsilon(1e-12));
    const BroadcastBell uq = broadcast_bell(ClonerSpec::uqcm(), s45);
    CHECK(uq.s_b1 == doctest::Approx(2 * kSqrt2 * 2.0 / 3.0).epsilon(1e-12));
    CHECK(uq.s_b2 == doctest::Approx(2 * kSqrt2 * 2.0 / 3.0).epsilon(1e-12));
    // searched setting can only do better than the fixed one
    const BroadcastBell searched = broadcast_bell(ClonerSpec::uqcm());
    CHECK(searched.s_b1 >= uq.s_b1 - 1e-9);
    CHECK(searched.s_b2 >= uq.s_b2 - 1e-9);
}

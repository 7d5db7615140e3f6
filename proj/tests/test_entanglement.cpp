#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qeve/entanglement.hpp"
#include "qeve/rng.hpp"

using namespace qeve;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

TwoQubitDensity ginibre_state(std::uint64_t index) {
    const PulseRng r{0xabcdefULL, index};
    Mat g(4, 4);
    std::uint64_t slot = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double u1 = r.uniform(slot++);
            const double u2 = r.uniform(slot++);
            const double u3 = r.uniform(slot++);
            const double u4 = r.uniform(slot++);
            g(i, j) = cplx{std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2 * kPi * u2),
                           std::sqrt(-2.0 * std::log(1.0 - u3)) * std::cos(2 * kPi * u4)};
        }
    Mat rho = g * g.adjoint();
    rho *= cplx{1.0 / rho.trace().real(), 0.0};
    return TwoQubitDensity(rho);
}

TwoQubitDensity singlet_state() {
    const std::vector<cplx> psi{0.0, cplx{1 / kSqrt2, 0.0}, cplx{-1 / kSqrt2, 0.0}, 0.0};
    return TwoQubitDensity(outer(psi, psi));
}

TwoQubitDensity werner(double w) {
    Mat m = singlet_state().mat();
    m *= cplx{w, 0.0};
    Mat id = Mat::identity(4);
    id *= cplx{(1.0 - w) / 4.0, 0.0};
    return TwoQubitDensity(m + id);
}
}  // namespace

TEST_CASE("the stepped setting saturates the singlet bound") {
    CHECK(chsh_value(singlet_state(), fortyfive_setting()) ==
          doctest::Approx(2 * kSqrt2).epsilon(1e-12));
}

TEST_CASE("closed forms for the one-angle family") {
    for (const double g : {0.0, 0.4, 1.0, kPi / 2}) {
        CHECK(s_ab_intensity(g) == doctest::Approx(kSqrt2 * (1 + std::cos(g))).epsilon(1e-14));
        CHECK(s_ae_intensity(g) == doctest::Approx(2 * kSqrt2 * std::sin(g)).epsilon(1e-14));
        CHECK(chsh_value(epr_joint(IntensityGamma(g), true), fortyfive_setting()) ==
              doctest::Approx(s_ab_intensity(g)).epsilon(1e-12));
        CHECK(chsh_value(eve_joint(IntensityGamma(g)), fortyfive_setting()) ==
              doctest::Approx(s_ae_intensity(g)).epsilon(1e-12));
    }
    // the two curves cross between gamma = 0 and pi/2, and the pair score
    // drops below 2 exactly where the correlation bound hits 1
    CHECK(s_ab_intensity(0.0) > 2.0);
    CHECK(s_ab_intensity(kPi / 2) < 2.0);
}

TEST_CASE("numeric search matches the correlation bound on random states") {
    for (std::uint64_t i = 0; i < 20; ++i) {
        const TwoQubitDensity rho = ginibre_state(i);
        const ChshSearch found = best_chsh(rho);
        CHECK(found.s ==
              doctest::Approx(2 * std::sqrt(horodecki_m(rho))).epsilon(1e-8));
        // the reported setting reproduces the reported value
        CHECK(chsh_value(rho, found.setting) == doctest::Approx(found.s).epsilon(1e-10));
    }
}

TEST_CASE("search handles separable and maximally entangled corners") {
    const ChshSearch s = best_chsh(singlet_state());
    CHECK(s.s == doctest::Approx(2 * kSqrt2).epsilon(1e-9));
    const TwoQubitDensity mixed{[] {
        Mat m = Mat::identity(4);
        m *= cplx{0.25, 0.0};
        return m;
    }()};
    CHECK(best_chsh(mixed).s == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("singlet fraction tracks the mixing weight") {
    CHECK(singlet_fraction(singlet_state()) == doctest::Approx(1.0).epsilon(1e-12));
    for (const double w : {0.0, 0.3, 0.7})
        CHECK(singlet_fraction(werner(w)) ==
              doctest::Approx(w + (1 - w) / 4).epsilon(1e-12));
    for (const double g : {0.2, 0.9, 1.4})
        for (const bool sym : {false, true})
            CHECK(singlet_fraction(epr_joint(IntensityGamma(g), sym)) ==
                  doctest::Approx(1 - 2 * ber(IntensityGamma(g))).epsilon(1e-12));
}

TEST_CASE("purification feasibility boundary") {
    CHECK(qpa_feasible(werner(0.4)));
    CHECK(!qpa_feasible(werner(1.0 / 3.0)));  // fraction exactly 1/2
    CHECK(qpa_feasible(epr_joint(IntensityGamma(1.4), true)));
    CHECK(!qpa_feasible(epr_joint(IntensityGamma(kPi / 2), true)));
}

TEST_CASE("intensity report is internally consistent") {
    const BellReport r = bell_report_intensity(0.7);
    CHECK(r.s_ab == doctest::Approx(s_ab_intensity(0.7)).epsilon(1e-12));
    CHECK(r.s_ae == doctest::Approx(s_ae_intensity(0.7)).epsilon(1e-12));
    CHECK(r.q == doctest::Approx(ber(IntensityGamma(0.7))).epsilon(1e-12));
    // symmetrized bound: 2 eta^2 once eta dominates the y response
    const double eta = (1 + std::cos(0.7)) / 2;
    CHECK(r.horodecki == doctest::Approx(2 * eta * eta).epsilon(1e-10));
}

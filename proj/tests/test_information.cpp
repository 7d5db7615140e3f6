#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qeve/information.hpp"

using namespace qeve;

namespace {
constexpr double kPi = std::numbers::pi;

double h2(double x) { return binary_entropy(x); }
}  // namespace

TEST_CASE("binary entropy") {
    CHECK(h2(0.0) == 0.0);
    CHECK(h2(1.0) == 0.0);
    CHECK(h2(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(h2(0.1534) == doctest::Approx(0.6182838059231247).epsilon(1e-12));
    CHECK(h2(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-12));
    CHECK_THROWS_AS(h2(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(h2(1.01), std::invalid_argument);
}

TEST_CASE("channel information endpoints") {
    CHECK(info_ab(0.0) == doctest::Approx(1.0));
    CHECK(info_ab(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(info_ab(0.1534) == doctest::Approx(1.0 - 0.6182838059231247).epsilon(1e-12));
}

TEST_CASE("probe posterior and information for the one-angle family") {
    CHECK(posterior_up(0.0) == doctest::Approx(0.5));
    CHECK(posterior_up(kPi / 2) == doctest::Approx(1.0));
    for (const double g : {0.2, 0.9, 1.4}) {
        CHECK(posterior_up(g) == doctest::Approx((1 + std::sin(g)) / 2).epsilon(1e-12));
        CHECK(info_eve_intensity(g) ==
              doctest::Approx(0.5 * (1.0 - h2((1 + std::sin(g)) / 2))).epsilon(1e-12));
    }
    CHECK(info_eve_intensity(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(info_eve_intensity(kPi / 2) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("information and Bell thresholds quoted to full precision") {
    // crossing of info_ab(ber(gamma)) and info_eve_intensity(gamma)
    double lo = 1e-6, hi = kPi / 2;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f = info_eve_intensity(mid) - info_ab(ber(IntensityGamma(mid)));
        (f < 0 ? lo : hi) = mid;
    }
    const double q_star = ber(IntensityGamma(0.5 * (lo + hi)));
    CHECK(q_star == doctest::Approx(0.15344023432091308).epsilon(1e-10));
    CHECK(info_ab(q_star) == doctest::Approx(0.3816170503313011).epsilon(1e-10));
}

TEST_CASE("accessible information closed form for two pure states") {
    // equal priors; Bloch angle delta means state overlap cos(delta/2), and
    // the best measurement yields 1 - h2((1 + sin(delta/2)) / 2)
    for (const double delta : {0.3, 0.8, 1.3}) {
        const BinaryEnsemble e{pure_state_density(0.0), pure_state_density(delta), 0.5};
        const double want = 1.0 - h2((1 + std::sin(delta / 2)) / 2);
        CHECK(accessible_info(e) == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("accessible information is frame independent and under Holevo") {
    const double shift = 1.1;
    const BinaryEnsemble e{pure_state_density(0.2), pure_state_density(0.9), 0.5};
    const BinaryEnsemble rot{pure_state_density(0.2 + shift), pure_state_density(0.9 + shift),
                             0.5};
    CHECK(accessible_info(e) == doctest::Approx(accessible_info(rot)).epsilon(1e-9));
    CHECK(accessible_info(e) <= holevo_bound(e) + 1e-12);

    const BinaryEnsemble same{pure_state_density(0.4), pure_state_density(0.4), 0.5};
    CHECK(accessible_info(same) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(accessible_info(BinaryEnsemble{pure_state_density(0.0),
                                                   pure_state_density(1.0), 0.0}),
                    std::invalid_argument);
}

TEST_CASE("general probe information reduces to the one-angle family") {
    for (const double g : {0.3, 0.8, 1.2, kPi / 2}) {
        const ProbeParams p = IntensityGamma(g).params();
        CHECK(info_eve_general(p) == doctest::Approx(info_eve_intensity(g)).epsilon(1e-9));
    }
    // beta = pi/4 leaves the probe untouched
    CHECK(info_eve_general(ProbeParams{0.0, kPi / 4}) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(info_eve_general(ProbeParams{kPi / 12, kPi / 12}) ==
          doctest::Approx(0.41414961771067915).epsilon(1e-9));
}

TEST_CASE("constrained probe optimum") {
    // small error rates: the one-angle family is already optimal
    for (const double q : {0.03, 0.05}) {
        const ProbeOptimum opt = optimize_info(q);
        CHECK(opt.params.alpha == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(opt.i_ae ==
              doctest::Approx(info_eve_intensity(std::acos(1 - 4 * q))).epsilon(1e-9));
    }
    const ProbeOptimum at_cross = optimize_info(0.1534);
    CHECK(at_cross.i_ae == doctest::Approx(0.3819378537275979).epsilon(1e-9));
    CHECK(at_cross.params.alpha == doctest::Approx(0.08969157249625297).epsilon(1e-4));
    CHECK(at_cross.params.beta == doctest::Approx(0.21068392635221334).epsilon(1e-4));
    CHECK(ber(at_cross.params) == doctest::Approx(0.1534).epsilon(1e-10));
    CHECK(optimize_info(0.4).i_ae == doctest::Approx(0.8798630700483274).epsilon(1e-6));
    CHECK_THROWS_AS(optimize_info(-0.01), std::invalid_argument);
    CHECK_THROWS_AS(optimize_info(0.51), std::invalid_argument);
}

TEST_CASE("strategy reports carry consistent numbers") {
    const StrategyReport r = strategy_report(IntensityGamma(0.9));
    CHECK(r.q == doctest::Approx(ber(IntensityGamma(0.9))).epsilon(1e-12));
    CHECK(r.i_ab == doctest::Approx(info_ab(r.q)).epsilon(1e-12));
    CHECK(r.i_ae == doctest::Approx(info_eve_intensity(0.9)).epsilon(1e-12));
    CHECK(r.strategy.find("intensity") != std::string::npos);
    const StrategyReport p = strategy_report(ProbeParams{0.1, 0.2});
    CHECK(p.eta == doctest::Approx(shrink_factor(ProbeParams{0.1, 0.2})).epsilon(1e-12));
    CHECK(p.strategy.find("probe") != std::string::npos);
}

#include "qeve/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace qeve {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec3 = std::array<double, 3>;

Vec3 sphere(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Vec3 apply_t(const std::array<std::array<double, 3>, 3>& t, const Vec3& v) {
    Vec3 r{};
    for (int i = 0; i < 3; ++i) r[i] = t[i][0] * v[0] + t[i][1] * v[1] + t[i][2] * v[2];
    return r;
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

MeasurementDirection to_direction(const Vec3& v) {
    const double n = norm3(v);
    if (n < 1e-12) return MeasurementDirection{0.0, 0.0, 1.0};
    return MeasurementDirection::from_unit(v[0] / n, v[1] / n, v[2] / n);
}

// S for the best Alice pair given Bob's pair: |T(b+b')| + |T(b-b')|.
double bob_objective(const std::array<std::array<double, 3>, 3>& t, const Vec3& b, const Vec3& bp) {
    const Vec3 plus{b[0] + bp[0], b[1] + bp[1], b[2] + bp[2]};
    const Vec3 minus{b[0] - bp[0], b[1] - bp[1], b[2] - bp[2]};
    return norm3(apply_t(t, plus)) + norm3(apply_t(t, minus));
}

}  // namespace

BellSetting fortyfive_setting() {
    return {MeasurementDirection::from_angle(0.0), MeasurementDirection::from_angle(kPi / 2.0),
            MeasurementDirection::from_angle(5.0 * kPi / 4.0),
            MeasurementDirection::from_angle(3.0 * kPi / 4.0)};
}

double chsh_value(const TwoQubitDensity& rho, const BellSetting& s) {
    return chsh_value(rho, s.a, s.a_prime, s.b, s.b_prime);
}

double s_ab_intensity(double gamma) { return std::numbers::sqrt2 * (1.0 + std::cos(gamma)); }

double s_ae_intensity(double gamma) { return 2.0 * std::numbers::sqrt2 * std::sin(gamma); }

ChshSearch best_chsh(const TwoQubitDensity& rho) {
    const auto t = correlation_matrix(rho);

    // Bob directions parametrized as (theta, phi) each.
    std::array<double, 4> best{};
    double best_val = -1.0;
    const auto consider = [&](double th1, double ph1, double th2, double ph2) {
        const double val = bob_objective(t, sphere(th1, ph1), sphere(th2, ph2));
        if (val > best_val) {
            best_val = val;
            best = {th1, ph1, th2, ph2};
        }
    };

    const int gc = 48;
    for (int i = 0; i < gc; ++i)
        for (int j = 0; j < gc; ++j)
            consider(2.0 * kPi * i / gc, 0.0, 2.0 * kPi * j / gc, 0.0);
    const int nt = 10, np = 12;
    for (int i1 = 0; i1 <= nt; ++i1)
        for (int j1 = 0; j1 < np; ++j1)
            for (int i2 = 0; i2 <= nt; ++i2)
                for (int j2 = 0; j2 < np; ++j2)
                    consider(kPi * i1 / nt, 2.0 * kPi * j1 / np, kPi * i2 / nt, 2.0 * kPi * j2 / np);

    // Coordinatewise golden-section polish.
    constexpr double inv_phi = 0.6180339887498949;
    double window = 0.5;
    for (int round = 0; round < 60; ++round) {
        for (int c = 0; c < 4; ++c) {
            double lo = best[c] - window, hi = best[c] + window;
            double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
            const auto eval = [&](double x) {
                std::array<double, 4> p = best;
                p[c] = x;
                return bob_objective(t, sphere(p[0], p[1]), sphere(p[2], p[3]));
            };
            double f1 = eval(x1), f2 = eval(x2);
            while (hi - lo > 1e-12) {
                if (f1 > f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - inv_phi * (hi - lo);
                    f1 = eval(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + inv_phi * (hi - lo);
                    f2 = eval(x2);
                }
            }
            const double x = 0.5 * (lo + hi);
            const double fx = eval(x);
            if (fx > best_val) {
                best_val = fx;
                best[c] = x;
            }
        }
        window = std::max(window * 0.5, 1e-10);
    }

    const Vec3 b = sphere(best[0], best[1]);
    const Vec3 bp = sphere(best[2], best[3]);
    const Vec3 plus{b[0] + bp[0], b[1] + bp[1], b[2] + bp[2]};
    const Vec3 minus{b[0] - bp[0], b[1] - bp[1], b[2] - bp[2]};
    BellSetting setting{to_direction(apply_t(t, plus)), to_direction(apply_t(t, minus)),
                        to_direction(b), to_direction(bp)};
    return {chsh_value(rho, setting), setting};
}

double singlet_fraction(const TwoQubitDensity& rho) {
    const double r = 1.0 / std::numbers::sqrt2;
    const std::vector<cplx> psi{0.0, cplx{r, 0.0}, cplx{-r, 0.0}, 0.0};
    cplx f = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) f += std::conj(psi[i]) * rho.mat()(i, j) * psi[j];
    return f.real();
}

bool qpa_feasible(const TwoQubitDensity& rho) { return singlet_fraction(rho) > 0.5 + 1e-12; }

BellReport bell_report_intensity(double gamma) {
    const IntensityGamma g(gamma);
    return {s_ab_intensity(gamma), s_ae_intensity(gamma), horodecki_m(epr_joint(g, true)), ber(g)};
}

}  // namespace qeve

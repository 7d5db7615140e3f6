#include "qeve/information.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace qeve {

namespace {

constexpr double kPi = std::numbers::pi;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Vec3 to_vec(const BlochVector& b) { return {b.x, b.y, b.z}; }

// Classical mutual information of the two-outcome measurement along w.
double measured_info(const Vec3& m0, const Vec3& m1, double prior0, const Vec3& w) {
    const double a0 = std::clamp((1.0 + dot(m0, w)) / 2.0, 0.0, 1.0);
    const double a1 = std::clamp((1.0 + dot(m1, w)) / 2.0, 0.0, 1.0);
    const double prior1 = 1.0 - prior0;
    const double total = prior0 * a0 + prior1 * a1;
    return binary_entropy(total) - prior0 * binary_entropy(a0) - prior1 * binary_entropy(a1);
}

template <typename F>
double golden_max(F f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double binary_entropy(double x) {
    if (!(x >= -1e-12 && x <= 1.0 + 1e-12)) throw std::invalid_argument("entropy argument outside [0, 1]");
    x = std::clamp(x, 0.0, 1.0);
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

double info_ab(double q) { return 1.0 - binary_entropy(q); }

double posterior_up(double gamma) { return (1.0 + std::sin(gamma)) / 2.0; }

double info_eve_intensity(double gamma) {
    return (1.0 - binary_entropy(posterior_up(gamma))) / 2.0;
}

MeasurementInfo accessible_info_detail(const BinaryEnsemble& e) {
    if (!(e.prior0 > 0.0 && e.prior0 < 1.0)) throw std::invalid_argument("prior must lie in (0, 1)");
    const Vec3 m0 = to_vec(bloch_of(e.rho0));
    const Vec3 m1 = to_vec(bloch_of(e.rho1));
    const Vec3 diff = m0 - m1;
    if (norm(diff) < 1e-14) return {0.0, MeasurementDirection{0.0, 0.0, 1.0}};

    // Orthonormal frame for the plane spanned by the two Bloch vectors;
    // e1 is the eigen-direction of rho0 - rho1.
    const Vec3 e1 = (1.0 / norm(diff)) * diff;
    Vec3 rest = m0 + m1;
    rest = rest - dot(rest, e1) * e1;
    Vec3 e2;
    if (norm(rest) > 1e-12) {
        e2 = (1.0 / norm(rest)) * rest;
    } else {
        Vec3 seed = std::abs(e1.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
        seed = seed - dot(seed, e1) * e1;
        e2 = (1.0 / norm(seed)) * seed;
    }

    const auto info_at = [&](double chi) {
        const Vec3 w = std::cos(chi) * e1 + std::sin(chi) * e2;
        return measured_info(m0, m1, e.prior0, w);
    };

    const int n = 256;
    int best = 0;
    double best_val = info_at(0.0);
    for (int k = 1; k < n; ++k) {
        const double val = info_at(kPi * k / n);
        if (val > best_val) {
            best_val = val;
            best = k;
        }
    }
    const double lo = kPi * (best - 1) / n;
    const double hi = kPi * (best + 1) / n;
    const double chi = golden_max(info_at, lo, hi, 1e-10);

    double best_chi = chi;
    double bits = info_at(chi);
    if (best_val > bits) {
        best_chi = kPi * best / n;
        bits = best_val;
    }
    const Vec3 w = std::cos(best_chi) * e1 + std::sin(best_chi) * e2;
    const double wn = norm(w);
    return {bits, MeasurementDirection::from_unit(w.x / wn, w.y / wn, w.z / wn)};
}

double accessible_info(const BinaryEnsemble& e) { return accessible_info_detail(e).bits; }

double von_neumann_entropy(const QubitDensity& rho) {
    double s = 0.0;
    for (double ev : hermitian_eigenvalues(rho.mat()))
        if (ev > 1e-15) s -= ev * std::log2(ev);
    return s;
}

double holevo_bound(const BinaryEnsemble& e) {
    Mat avg = e.rho0.mat();
    avg *= cplx{e.prior0, 0.0};
    Mat other = e.rho1.mat();
    other *= cplx{1.0 - e.prior0, 0.0};
    const QubitDensity mixed(avg + other);
    return von_neumann_entropy(mixed) - e.prior0 * von_neumann_entropy(e.rho0) -
           (1.0 - e.prior0) * von_neumann_entropy(e.rho1);
}

double info_eve_general(const ProbeParams& p) {
    const double basis_angles[2] = {0.0, kPi / 2.0};
    double total = 0.0;
    for (SymmetryAxis axis : kAllAxes)
        for (double theta0 : basis_angles) {
            BinaryEnsemble e{apply_probe(theta0, p, axis).rho_eve,
                             apply_probe(theta0 + kPi, p, axis).rho_eve, 0.5};
            total += accessible_info(e);
        }
    return total / 8.0;
}

ProbeOptimum optimize_info(double q_target) {
    if (!(q_target >= -1e-12 && q_target <= 0.5 + 1e-12))
        throw std::invalid_argument("target error rate must lie in [0, 0.5]");
    q_target = std::clamp(q_target, 0.0, 0.5);
    const double eta = 1.0 - 2.0 * q_target;

    const auto beta_for = [&](double alpha) {
        const double s = std::clamp(2.0 * eta / std::cos(2.0 * alpha) - 1.0, -1.0, 1.0);
        return 0.5 * std::asin(s);
    };
    const auto value_at = [&](double alpha) {
        return info_eve_general({alpha, beta_for(alpha)});
    };

    const double alpha_max = 0.5 * std::acos(std::clamp(eta, -1.0, 1.0));
    const int n = 512;
    int best = 0;
    double best_val = value_at(0.0);
    for (int k = 1; k < n; ++k) {
        const double alpha = alpha_max * k / (n - 1);
        const double val = value_at(alpha);
        if (val > best_val) {
            best_val = val;
            best = k;
        }
    }

    double alpha = alpha_max * best / (n - 1);
    if (alpha_max > 0.0) {
        const double lo = alpha_max * std::max(best - 1, 0) / (n - 1);
        const double hi = alpha_max * std::min(best + 1, n - 1) / (n - 1);
        const double refined = golden_max(value_at, lo, hi, 1e-10);
        if (value_at(refined) > best_val) alpha = refined;
    }
    return {{alpha, beta_for(alpha)}, value_at(alpha)};
}

StrategyReport strategy_report(const ProbeParams& p) {
    const double eta = shrink_factor(p);
    const double q = ber(p);
    char label[64];
    std::snprintf(label, sizeof label, "probe(alpha=%.6g, beta=%.6g)", p.alpha, p.beta);
    return {eta, q, 1.0 - q, info_ab(q), info_eve_general(p), label};
}

StrategyReport strategy_report(const IntensityGamma& g) {
    const double eta = shrink_factor(g);
    const double q = ber(g);
    char label[64];
    std::snprintf(label, sizeof label, "intensity(gamma=%.6g)", g.gamma());
    return {eta, q, 1.0 - q, info_ab(q), info_eve_intensity(g.gamma()), label};
}

}  // namespace qeve

#include "qeve/cloning.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pure_states.hpp"

namespace qeve {

using detail::reduce_one;
using detail::reduce_pair;
using detail::singlet_ket;

namespace {

constexpr double kPi = std::numbers::pi;

// Fidelity of the kept factor against |psi(theta)>, straight from
// amplitudes so the sweep loops stay cheap.
double factor_fidelity(const std::vector<cplx>& psi, int factors, int keep, double theta) {
    const std::vector<cplx> target = bloch_ket(theta);
    const int shift = factors - 1 - keep;
    const std::size_t rest = psi.size() / 2;
    double f = 0.0;
    for (std::size_t r = 0; r < rest; ++r) {
        const std::size_t low = r & ((std::size_t{1} << shift) - 1);
        const std::size_t high = (r >> shift) << (shift + 1);
        cplx c = 0.0;
        for (std::size_t s = 0; s < 2; ++s)
            c += std::conj(target[s]) * psi[high | (s << shift) | low];
        f += std::norm(c);
    }
    return f;
}

std::vector<cplx> pgqcm_output(double theta, double alpha, SymmetryAxis axis) {
    const ProbeParams p{alpha, alpha};
    std::vector<cplx> out =
        probe_unitary(p) * kron(bloch_ket(theta - axis_angle(axis)), std::vector<cplx>{1.0, 0.0});
    if (axis != SymmetryAxis::up) {
        const Mat r = axis_rotation(axis);
        out = kron(r, r) * out;
    }
    return out;
}

std::vector<cplx> uqcm_output(double theta) {
    return uqcm_unitary() * kron(bloch_ket(theta), std::vector<cplx>{1.0, 0.0, 0.0, 0.0});
}

double mean_fidelity_quadrature(const ClonerSpec& spec) {
    const int n = 1024;
    double sum = 0.0;
    if (spec.kind == ClonerSpec::Kind::uqcm) {
        const Mat& u = uqcm_unitary();
        for (int k = 0; k < n; ++k) {
            const double theta = 2.0 * kPi * k / n;
            const std::vector<cplx> out =
                u * kron(bloch_ket(theta), std::vector<cplx>{1.0, 0.0, 0.0, 0.0});
            sum += factor_fidelity(out, 3, 0, theta);
        }
        return sum / n;
    }
    const Mat u = probe_unitary({spec.alpha, spec.alpha});
    const bool sym = spec.kind == ClonerSpec::Kind::pgqcm_symmetrized;
    for (SymmetryAxis axis : kAllAxes) {
        if (!sym && axis != SymmetryAxis::up) continue;
        const Mat r = axis_rotation(axis);
        const Mat op = sym ? kron(r, r) * u : u;
        const double phi = axis_angle(axis);
        for (int k = 0; k < n; ++k) {
            const double theta = 2.0 * kPi * k / n;
            const std::vector<cplx> out =
                op * kron(bloch_ket(theta - phi), std::vector<cplx>{1.0, 0.0});
            sum += factor_fidelity(out, 2, 0, theta);
        }
    }
    return sum / (sym ? 4.0 * n : n);
}

}  // namespace

const Mat& uqcm_unitary() {
    static const Mat u = [] {
        const double a = std::sqrt(2.0 / 3.0);
        const double b = std::sqrt(1.0 / 6.0);
        Mat m(8, 8);
        // |up, blank, machine0>: index 0 -> sqrt(2/3)|up,up,0> + sqrt(1/6)(|up,down,1> + |down,up,1>)
        m(0, 0) = a;
        m(3, 0) = b;
        m(5, 0) = b;
        // |down, blank, machine0>: index 4 -> sqrt(2/3)|down,down,1> + sqrt(1/6)(|up,down,0> + |down,up,0>)
        m(7, 4) = a;
        m(2, 4) = b;
        m(4, 4) = b;
        return complete_unitary(m, {true, false, false, false, true, false, false, false});
    }();
    return u;
}

CloneOutput clone(const ClonerSpec& spec, double theta) {
    switch (spec.kind) {
        case ClonerSpec::Kind::pgqcm: {
            const std::vector<cplx> out = pgqcm_output(theta, spec.alpha, SymmetryAxis::up);
            return {QubitDensity(reduce_one(out, 2, 0)), QubitDensity(reduce_one(out, 2, 1)), {}};
        }
        case ClonerSpec::Kind::pgqcm_symmetrized: {
            Mat orig(2, 2), copy(2, 2);
            for (SymmetryAxis axis : kAllAxes) {
                const std::vector<cplx> out = pgqcm_output(theta, spec.alpha, axis);
                orig += reduce_one(out, 2, 0);
                copy += reduce_one(out, 2, 1);
            }
            return {QubitDensity(cplx{0.25, 0.0} * orig), QubitDensity(cplx{0.25, 0.0} * copy), {}};
        }
        case ClonerSpec::Kind::uqcm: {
            const std::vector<cplx> out = uqcm_output(theta);
            return {QubitDensity(reduce_one(out, 3, 0)), QubitDensity(reduce_one(out, 3, 1)),
                    QubitDensity(reduce_one(out, 3, 2))};
        }
    }
    throw std::invalid_argument("bad cloner kind");
}

double mean_fidelity(const ClonerSpec& spec) { return mean_fidelity_quadrature(spec); }

ClonerOptimum optimize_cloner() {
    constexpr double inv_phi = 0.6180339887498949;
    const auto golden = [&](auto f, double lo, double hi) {
        double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
        double f1 = f(x1), f2 = f(x2);
        while (hi - lo > 1e-10) {
            if (f1 > f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = f(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = f(x2);
            }
        }
        return 0.5 * (lo + hi);
    };

    const auto f = [](double alpha) { return mean_fidelity(ClonerSpec::pgqcm(alpha)); };
    const int n = 512;
    int best = 0;
    double best_val = f(0.0);
    for (int k = 1; k < n; ++k) {
        const double val = f(kPi / 4.0 * k / (n - 1));
        if (val > best_val) {
            best_val = val;
            best = k;
        }
    }
    const double step = kPi / 4.0 / (n - 1);
    const double alpha = golden(f, step * (best - 1), step * (best + 1));

    // Two-sided relaxation: mean fidelity of original plus copy, averaged,
    // with independent coupling angles.
    const auto g = [](double a, double b) {
        const double c2a = std::cos(2.0 * a), s2a = std::sin(2.0 * a);
        const double c2b = std::cos(2.0 * b), s2b = std::sin(2.0 * b);
        return 0.5 + (c2a * (1.0 + s2b) + c2b * (1.0 + s2a)) / 8.0;
    };
    double ra = 0.0, rb = 0.0, rv = g(0.0, 0.0);
    const int m = 256;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double val = g(kPi / 4.0 * i / (m - 1), kPi / 4.0 * j / (m - 1));
            if (val > rv) {
                rv = val;
                ra = kPi / 4.0 * i / (m - 1);
                rb = kPi / 4.0 * j / (m - 1);
            }
        }
    for (int round = 0; round < 40; ++round) {
        ra = golden([&](double x) { return g(x, rb); }, std::max(0.0, ra - 0.02), ra + 0.02);
        rb = golden([&](double x) { return g(ra, x); }, std::max(0.0, rb - 0.02), rb + 0.02);
    }
    rv = g(ra, rb);

    return {alpha, f(alpha), ra, rb, rv};
}

std::vector<BlochVector> bloch_locus(const ClonerSpec& spec, std::size_t n_points) {
    if (n_points < 2) throw std::invalid_argument("need at least two locus points");
    std::vector<BlochVector> locus;
    locus.reserve(n_points);
    for (std::size_t k = 0; k < n_points; ++k)
        locus.push_back(bloch_of(clone(spec, 2.0 * kPi * k / n_points).rho_copy));
    return locus;
}

std::pair<TwoQubitDensity, TwoQubitDensity> broadcast_joints(const ClonerSpec& spec) {
    const Mat id = Mat::identity(2);
    if (spec.kind == ClonerSpec::Kind::uqcm) {
        const std::vector<cplx> in =
            kron(singlet_ket(), std::vector<cplx>{1.0, 0.0, 0.0, 0.0});
        const std::vector<cplx> out = kron(id, uqcm_unitary()) * in;
        return {TwoQubitDensity(reduce_pair(out, 4, 0, 1)), TwoQubitDensity(reduce_pair(out, 4, 0, 2))};
    }
    const ProbeParams p{spec.alpha, spec.alpha};
    const bool sym = spec.kind == ClonerSpec::Kind::pgqcm_symmetrized;
    Mat b1(4, 4), b2(4, 4);
    int count = 0;
    for (SymmetryAxis axis : kAllAxes) {
        if (!sym && axis != SymmetryAxis::up) continue;
        const Mat r = axis_rotation(axis);
        const Mat v = kron(r, r) * probe_unitary(p) * kron(r.adjoint(), id);
        const std::vector<cplx> out = kron(id, v) * kron(singlet_ket(), std::vector<cplx>{1.0, 0.0});
        b1 += reduce_pair(out, 3, 0, 1);
        b2 += reduce_pair(out, 3, 0, 2);
        ++count;
    }
    const cplx w{1.0 / count, 0.0};
    return {TwoQubitDensity(w * b1), TwoQubitDensity(w * b2)};
}

BroadcastBell broadcast_bell(const ClonerSpec& spec, const std::optional<BellSetting>& setting) {
    const auto [j1, j2] = broadcast_joints(spec);
    if (setting) {
        return {chsh_value(j1, *setting), chsh_value(j2, *setting), *setting, *setting};
    }
    const ChshSearch r1 = best_chsh(j1);
    const ChshSearch r2 = best_chsh(j2);
    return {r1.s, r2.s, r1.setting, r2.setting};
}

}  // namespace qeve

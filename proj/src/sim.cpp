#include "qeve/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "json.hpp"

#include "pure_states.hpp"
#include "qeve/information.hpp"
#include "qeve/rng.hpp"

namespace qeve {

using detail::expand_at;
using detail::quadratic_form;
using detail::reduce_one;
using detail::singlet_ket;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// Probabilities this close to zero are trig noise (cos(pi/2) squared and
// friends); snapping keeps impossible branches impossible.
double snap(double x) { return x < 1e-15 ? 0.0 : x; }

// |<psi(a)|psi(b)>|^2
double overlap(double a, double b) {
    const double c = std::cos((a - b) / 2.0);
    return snap(c * c);
}

double bb84_angle(int basis, int bit) {
    return (basis ? kPi / 2.0 : 0.0) + (bit ? kPi : 0.0);
}

// Three-angle entangled-pair layout.  Alice and Bob share the two middle
// angles, giving two key pairs; the four mixed pairs feed the CHSH sum
// S = E(2,0) + E(2,2) + E(0,0) - E(0,2) with Bob's outcomes flipped.
constexpr std::array<double, 3> kAliceAngles{0.0, kPi / 4.0, kPi / 2.0};
constexpr std::array<double, 3> kBobAngles{kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0};

int matched_pair(int a_idx, int b_idx) {
    if (a_idx == 1 && b_idx == 0) return 0;
    if (a_idx == 2 && b_idx == 1) return 1;
    return -1;
}

int chsh_pair(int a_idx, int b_idx) {
    if (a_idx == 2 && b_idx == 0) return 0;
    if (a_idx == 2 && b_idx == 2) return 1;
    if (a_idx == 0 && b_idx == 0) return 2;
    if (a_idx == 0 && b_idx == 2) return 3;
    return -1;
}

constexpr std::array<double, 4> kChshSign{1.0, 1.0, 1.0, -1.0};

// Integer-only per-worker accumulator; merging is order-independent, so
// results cannot depend on the thread count.
struct Tally {
    std::uint64_t sifted = 0;
    std::uint64_t errors = 0;
    std::array<std::uint64_t, 2> basis_sifted{};
    std::array<std::uint64_t, 2> basis_errors{};
    std::uint64_t eve_correct = 0;
    std::array<std::uint64_t, 8> cell_count{};  // axis * 2 + announced basis
    std::array<std::uint64_t, 8> cell_wrong{};
    std::array<std::int64_t, 4> chsh_sum{};
    std::array<std::uint64_t, 4> chsh_count{};
    std::int64_t sum_b1 = 0;
    std::int64_t sum_b2 = 0;
    std::int64_t sum_prod = 0;
    std::uint64_t digest = 0;

    void merge(const Tally& o) {
        sifted += o.sifted;
        errors += o.errors;
        for (int i = 0; i < 2; ++i) {
            basis_sifted[i] += o.basis_sifted[i];
            basis_errors[i] += o.basis_errors[i];
        }
        eve_correct += o.eve_correct;
        for (int i = 0; i < 8; ++i) {
            cell_count[i] += o.cell_count[i];
            cell_wrong[i] += o.cell_wrong[i];
        }
        for (int i = 0; i < 4; ++i) {
            chsh_sum[i] += o.chsh_sum[i];
            chsh_count[i] += o.chsh_count[i];
        }
        sum_b1 += o.sum_b1;
        sum_b2 += o.sum_b2;
        sum_prod += o.sum_prod;
        digest += o.digest;
    }
};

void record_key(Tally& t, int axis, int announced, int alice_bit, bool error, int guess) {
    ++t.sifted;
    ++t.basis_sifted[announced];
    if (error) {
        ++t.errors;
        ++t.basis_errors[announced];
    }
    const int cell = axis * 2 + announced;
    ++t.cell_count[cell];
    if (guess == alice_bit)
        ++t.eve_correct;
    else
        ++t.cell_wrong[cell];
}

void record_digest(Tally& t, std::uint64_t pulse, std::uint64_t pack) {
    t.digest += PulseRng::mix((pulse + 1) * kGolden ^ (pack + 1));
}

double norm2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& c : v) s += std::norm(c);
    return s;
}

// Minimum-error direction for distinguishing two equally likely states:
// measure along the Bloch difference, outcome index = guessed bit.
MeasurementDirection helstrom(const Mat& r0, const Mat& r1) {
    const cplx d01 = r0(0, 1) - r1(0, 1);
    const double dx = 2.0 * d01.real();
    const double dy = -2.0 * d01.imag();
    const double dz = (r0(0, 0) - r0(1, 1) - r1(0, 0) + r1(1, 1)).real();
    const double n = std::sqrt(dx * dx + dy * dy + dz * dz);
    if (n < 1e-12) return MeasurementDirection{0.0, 0.0, 1.0};
    return MeasurementDirection{dx / n, dy / n, dz / n};
}

Mat direction_projector(const MeasurementDirection& w, int outcome) {
    const double s = outcome == 0 ? 1.0 : -1.0;
    Mat m(2, 2);
    m(0, 0) = 0.5 * (1.0 + s * w.z);
    m(1, 1) = 0.5 * (1.0 - s * w.z);
    m(0, 1) = 0.5 * s * cplx{w.x, -w.y};
    m(1, 0) = 0.5 * s * cplx{w.x, w.y};
    return m;
}

Mat angle_projector(double theta) {
    const std::vector<cplx> k = bloch_ket(theta);
    return outer(k, k);
}

// The qubit pipeline between Alice's source and Bob's detector: either a
// probe interaction or a cloning machine, optionally cycled over the four
// symmetry axes.  Factor 0 of the output goes to Bob, factor `eve_factor`
// to Eve.
struct FlyingChannel {
    int axes = 1;
    int factors = 2;
    int eve_factor = 1;
    std::array<Mat, 4> ops{};
    std::array<double, 4> phis{};

    static FlyingChannel probe(const ProbeParams& p, bool symmetrized) {
        FlyingChannel c;
        c.axes = symmetrized ? 4 : 1;
        const Mat u = probe_unitary(p);
        for (int i = 0; i < c.axes; ++i) {
            c.ops[i] = kron(axis_rotation(kAllAxes[i]), Mat::identity(2)) * u;
            c.phis[i] = axis_angle(kAllAxes[i]);
        }
        return c;
    }

    static FlyingChannel cloner(const ClonerSpec& spec) {
        FlyingChannel c;
        if (spec.kind == ClonerSpec::Kind::uqcm) {
            c.factors = 3;
            c.ops[0] = uqcm_unitary();
            return c;
        }
        c.axes = spec.kind == ClonerSpec::Kind::pgqcm_symmetrized ? 4 : 1;
        const Mat u = probe_unitary(ProbeParams{spec.alpha, spec.alpha});
        for (int i = 0; i < c.axes; ++i) {
            const Mat r = axis_rotation(kAllAxes[i]);
            c.ops[i] = kron(r, r) * u;
            c.phis[i] = axis_angle(kAllAxes[i]);
        }
        return c;
    }

    std::size_t rest_dim() const { return std::size_t{1} << (factors - 1); }

    std::vector<cplx> send(double theta, int axis) const {
        std::vector<cplx> rest(rest_dim(), cplx{0.0, 0.0});
        rest[0] = 1.0;
        return ops[axis] * kron(bloch_ket(theta - phis[axis]), rest);
    }

    // Same channel as an operator (for feeding half of an entangled pair).
    Mat epr_op(int axis) const {
        return ops[axis] *
               kron(axis_rotation(kAllAxes[axis]).adjoint(), Mat::identity(rest_dim()));
    }
};

struct PulseModel {
    virtual ~PulseModel() = default;
    virtual bool ekert() const = 0;
    virtual void simulate(const SimConfig& cfg, std::uint64_t pulse, Tally& t) const = 0;
};

// Prepare-and-measure run with a probe or cloner tap on the line.
// Draw slots: 0 alice basis, 1 alice bit, 2 bob basis, 3 axis,
// 4 bob outcome, 5 eve outcome.
struct Bb84ProbeModel final : PulseModel {
    FlyingChannel ch;
    std::array<std::array<MeasurementDirection, 2>, 4> w{};
    double joint[4][2][2][2][4] = {};  // [axis][ab][s][bb][2*bob + eve]
    Mat bob_proj[2][2];
    Mat eve_proj[4][2][2];

    Bb84ProbeModel(const FlyingChannel& channel, bool delayed) : ch(channel) {
        Mat rho[4][2][2];
        for (int axis = 0; axis < ch.axes; ++axis)
            for (int ab = 0; ab < 2; ++ab)
                for (int s = 0; s < 2; ++s) {
                    const std::vector<cplx> out = ch.send(bb84_angle(ab, s), axis);
                    rho[axis][ab][s] = reduce_one(out, ch.factors, ch.eve_factor);
                }
        for (int axis = 0; axis < ch.axes; ++axis) {
            if (delayed) {
                for (int ab = 0; ab < 2; ++ab)
                    w[axis][ab] = helstrom(rho[axis][ab][0], rho[axis][ab][1]);
            } else {
                Mat m0 = rho[axis][0][0] + rho[axis][1][0];
                Mat m1 = rho[axis][0][1] + rho[axis][1][1];
                m0 *= cplx{0.5, 0.0};
                m1 *= cplx{0.5, 0.0};
                w[axis][0] = w[axis][1] = helstrom(m0, m1);
            }
        }
        for (int bb = 0; bb < 2; ++bb)
            for (int b = 0; b < 2; ++b)
                bob_proj[bb][b] = expand_at(angle_projector(bb84_angle(bb, b)), ch.factors, 0);
        for (int axis = 0; axis < ch.axes; ++axis)
            for (int ab = 0; ab < 2; ++ab)
                for (int e = 0; e < 2; ++e)
                    eve_proj[axis][ab][e] =
                        expand_at(direction_projector(w[axis][ab], e), ch.factors, ch.eve_factor);
        for (int axis = 0; axis < ch.axes; ++axis)
            for (int ab = 0; ab < 2; ++ab)
                for (int s = 0; s < 2; ++s) {
                    const std::vector<cplx> out = ch.send(bb84_angle(ab, s), axis);
                    for (int bb = 0; bb < 2; ++bb) {
                        double* p = joint[axis][ab][s][bb];
                        double total = 0.0;
                        for (int b = 0; b < 2; ++b) {
                            const std::vector<cplx> v = bob_proj[bb][b] * out;
                            for (int e = 0; e < 2; ++e) {
                                p[2 * b + e] = snap(quadratic_form(v, eve_proj[axis][ab][e]));
                                total += p[2 * b + e];
                            }
                        }
                        if (total > 0.0)
                            for (int k = 0; k < 4; ++k) p[k] /= total;
                    }
                }
    }

    bool ekert() const override { return false; }

    void simulate(const SimConfig& cfg, std::uint64_t pulse, Tally& t) const override {
        const PulseRng r{cfg.seed, pulse};
        const int ab = static_cast<int>(r.choice(0, 2));
        const int s = static_cast<int>(r.choice(1, 2));
        const int bb = static_cast<int>(r.choice(2, 2));
        const int axis = ch.axes == 4 ? static_cast<int>(r.choice(3, 4)) : 0;
        int b, e;
        if (!cfg.exact) {
            const double* p = joint[axis][ab][s][bb];
            const double pb0 = p[0] + p[1];
            b = r.uniform(4) < pb0 ? 0 : 1;
            const double pair = p[2 * b] + p[2 * b + 1];
            const double pe0 = pair > 0.0 ? p[2 * b] / pair : 0.5;
            e = r.uniform(5) < pe0 ? 0 : 1;
        } else {
            const std::vector<cplx> out = ch.send(bb84_angle(ab, s), axis);
            const double pb0 = quadratic_form(out, bob_proj[bb][0]);
            b = r.uniform(4) < pb0 ? 0 : 1;
            const std::vector<cplx> v = bob_proj[bb][b] * out;
            const double nv = norm2(v);
            const double pe0 =
                nv > 0.0 ? quadratic_form(v, eve_proj[axis][ab][0]) / nv : 0.5;
            e = r.uniform(5) < pe0 ? 0 : 1;
        }
        if (ab == bb) record_key(t, axis, ab, s, b != s, e);
        const std::uint64_t pack = std::uint64_t(ab) | std::uint64_t(s) << 1 |
                                   std::uint64_t(bb) << 2 | std::uint64_t(axis) << 3 |
                                   std::uint64_t(b) << 5 | std::uint64_t(e) << 6;
        record_digest(t, pulse, pack);
    }
};

// Prepare-and-measure run where a fraction of pulses is measured in a
// random basis and resent.  Slots: 0 alice basis, 1 alice bit, 2 bob
// basis, 3 intercept coin, 4 eve basis, 5 eve outcome, 6 bob outcome,
// 7 guess coin.
struct Bb84InterceptModel final : PulseModel {
    double fraction;

    explicit Bb84InterceptModel(double f) : fraction(f) {}

    bool ekert() const override { return false; }

    void simulate(const SimConfig& cfg, std::uint64_t pulse, Tally& t) const override {
        const PulseRng r{cfg.seed, pulse};
        const int ab = static_cast<int>(r.choice(0, 2));
        const int s = static_cast<int>(r.choice(1, 2));
        const int bb = static_cast<int>(r.choice(2, 2));
        const bool hit = r.uniform(3) < fraction;
        double theta = bb84_angle(ab, s);
        int eb = 0, e = 0;
        if (hit) {
            eb = static_cast<int>(r.choice(4, 2));
            e = r.uniform(5) < overlap(theta, bb84_angle(eb, 0)) ? 0 : 1;
            theta = bb84_angle(eb, e);
        }
        const int b = r.uniform(6) < overlap(theta, bb84_angle(bb, 0)) ? 0 : 1;
        if (ab == bb) {
            const int guess =
                hit && eb == ab ? e : static_cast<int>(r.choice(7, 2));
            record_key(t, 0, ab, s, b != s, guess);
        }
        const std::uint64_t pack = std::uint64_t(ab) | std::uint64_t(s) << 1 |
                                   std::uint64_t(bb) << 2 | std::uint64_t(hit) << 3 |
                                   std::uint64_t(eb) << 4 | std::uint64_t(e) << 5 |
                                   std::uint64_t(b) << 6;
        record_digest(t, pulse, pack);
    }
};

// Entangled-pair run with a probe or cloner tap on Bob's wing.
// Slots: 0 alice angle, 1 bob angle, 2 axis, 3 alice outcome,
// 4 bob outcome, 5 eve outcome.
struct EkertProbeModel final : PulseModel {
    FlyingChannel ch;
    int total;  // qubits: 0 alice, 1 bob, 2.. eve side
    int eve_at;
    std::array<std::vector<cplx>, 4> psi{};
    std::array<std::array<MeasurementDirection, 3>, 4> w{};
    double joint[4][3][3][8] = {};  // [axis][a_idx][b_idx][4a + 2b + e]
    Mat a_proj[3][2];
    Mat b_proj[3][2];
    Mat e_proj[4][3][2];

    EkertProbeModel(const FlyingChannel& channel, bool delayed) : ch(channel) {
        total = 1 + ch.factors;
        eve_at = 1 + ch.eve_factor;
        std::vector<cplx> rest(ch.rest_dim(), cplx{0.0, 0.0});
        rest[0] = 1.0;
        const std::vector<cplx> base = kron(singlet_ket(), rest);
        for (int axis = 0; axis < ch.axes; ++axis)
            psi[axis] = kron(Mat::identity(2), ch.epr_op(axis)) * base;
        for (int i = 0; i < 3; ++i)
            for (int o = 0; o < 2; ++o) {
                a_proj[i][o] =
                    expand_at(angle_projector(kAliceAngles[i] + o * kPi), total, 0);
                b_proj[i][o] =
                    expand_at(angle_projector(kBobAngles[i] + o * kPi), total, 1);
            }
        for (int axis = 0; axis < ch.axes; ++axis) {
            Mat cond[3][2];
            for (int i = 0; i < 3; ++i)
                for (int a = 0; a < 2; ++a) {
                    const std::vector<cplx> v = a_proj[i][a] * psi[axis];
                    Mat m = reduce_one(v, total, eve_at);
                    const double n = m.trace().real();
                    if (n > 0.0) m *= cplx{1.0 / n, 0.0};
                    cond[i][a] = m;
                }
            if (delayed) {
                for (int i = 0; i < 3; ++i) w[axis][i] = helstrom(cond[i][0], cond[i][1]);
            } else {
                Mat m0 = cond[0][0] + cond[1][0] + cond[2][0];
                Mat m1 = cond[0][1] + cond[1][1] + cond[2][1];
                m0 *= cplx{1.0 / 3.0, 0.0};
                m1 *= cplx{1.0 / 3.0, 0.0};
                const MeasurementDirection d = helstrom(m0, m1);
                for (int i = 0; i < 3; ++i) w[axis][i] = d;
            }
            for (int i = 0; i < 3; ++i)
                for (int e = 0; e < 2; ++e)
                    e_proj[axis][i][e] =
                        expand_at(direction_projector(w[axis][i], e), total, eve_at);
        }
        for (int axis = 0; axis < ch.axes; ++axis)
            for (int ai = 0; ai < 3; ++ai)
                for (int bi = 0; bi < 3; ++bi) {
                    double* p = joint[axis][ai][bi];
                    double totalp = 0.0;
                    for (int a = 0; a < 2; ++a) {
                        const std::vector<cplx> va = a_proj[ai][a] * psi[axis];
                        for (int b = 0; b < 2; ++b) {
                            const std::vector<cplx> vb = b_proj[bi][b] * va;
                            for (int e = 0; e < 2; ++e) {
                                p[4 * a + 2 * b + e] =
                                    snap(quadratic_form(vb, e_proj[axis][ai][e]));
                                totalp += p[4 * a + 2 * b + e];
                            }
                        }
                    }
                    if (totalp > 0.0)
                        for (int k = 0; k < 8; ++k) p[k] /= totalp;
                }
    }

    bool ekert() const override { return true; }

    void simulate(const SimConfig& cfg, std::uint64_t pulse, Tally& t) const override {
        const PulseRng r{cfg.seed, pulse};
        const int ai = static_cast<int>(r.choice(0, 3));
        const int bi = static_cast<int>(r.choice(1, 3));
        const int axis = ch.axes == 4 ? static_cast<int>(r.choice(2, 4)) : 0;
        int a, b, e;
        if (!cfg.exact) {
            const double* p = joint[axis][ai][bi];
            const double pa0 = p[0] + p[1] + p[2] + p[3];
            a = r.uniform(3) < pa0 ? 0 : 1;
            const double pa = a == 0 ? pa0 : 1.0 - pa0;
            const double pb0 = pa > 0.0 ? (p[4 * a] + p[4 * a + 1]) / pa : 0.5;
            b = r.uniform(4) < pb0 ? 0 : 1;
            const double pair = p[4 * a + 2 * b] + p[4 * a + 2 * b + 1];
            const double pe0 = pair > 0.0 ? p[4 * a + 2 * b] / pair : 0.5;
            e = r.uniform(5) < pe0 ? 0 : 1;
        } else {
            const double pa0 = quadratic_form(psi[axis], a_proj[ai][0]);
            a = r.uniform(3) < pa0 ? 0 : 1;
            const std::vector<cplx> va = a_proj[ai][a] * psi[axis];
            const double na = norm2(va);
            const double pb0 =
                na > 0.0 ? quadratic_form(va, b_proj[bi][0]) / na : 0.5;
            b = r.uniform(4) < pb0 ? 0 : 1;
            const std::vector<cplx> vb = b_proj[bi][b] * va;
            const double nb = norm2(vb);
            const double pe0 =
                nb > 0.0 ? quadratic_form(vb, e_proj[axis][ai][0]) / nb : 0.5;
            e = r.uniform(5) < pe0 ? 0 : 1;
        }
        const int mp = matched_pair(ai, bi);
        if (mp >= 0) record_key(t, axis, mp, a, a == b, e);
        const int cp = chsh_pair(ai, bi);
        if (cp >= 0) {
            t.chsh_sum[cp] += (a == b) ? -1 : 1;
            ++t.chsh_count[cp];
        }
        const std::uint64_t pack = std::uint64_t(ai) | std::uint64_t(bi) << 2 |
                                   std::uint64_t(axis) << 4 | std::uint64_t(a) << 6 |
                                   std::uint64_t(b) << 7 | std::uint64_t(e) << 8;
        record_digest(t, pulse, pack);
    }
};

// Entangled-pair run, clean line or intercept-resend on Bob's wing.
// Slots: 0 alice angle, 1 bob angle, 2 alice outcome, 3 intercept coin,
// 4 eve basis, 5 eve outcome, 6 bob outcome, 7 guess coin.
struct EkertInterceptModel final : PulseModel {
    double fraction;

    explicit EkertInterceptModel(double f) : fraction(f) {}

    bool ekert() const override { return true; }

    void simulate(const SimConfig& cfg, std::uint64_t pulse, Tally& t) const override {
        const PulseRng r{cfg.seed, pulse};
        const int ai = static_cast<int>(r.choice(0, 3));
        const int bi = static_cast<int>(r.choice(1, 3));
        const int a = r.uniform(2) < 0.5 ? 0 : 1;
        const double alice_angle = kAliceAngles[ai];
        double fly = alice_angle + (a == 0 ? kPi : 0.0);
        const bool hit = r.uniform(3) < fraction;
        int eb = 0, e = 0;
        if (hit) {
            eb = static_cast<int>(r.choice(4, 2));
            e = r.uniform(5) < overlap(fly, bb84_angle(eb, 0)) ? 0 : 1;
            fly = bb84_angle(eb, e);
        }
        const int b = r.uniform(6) < overlap(fly, kBobAngles[bi]) ? 0 : 1;
        const int mp = matched_pair(ai, bi);
        if (mp >= 0) {
            int guess;
            if (hit) {
                const double g0 = overlap(fly, alice_angle + kPi);
                const double g1 = overlap(fly, alice_angle);
                if (std::abs(g0 - g1) < 1e-12)
                    guess = static_cast<int>(r.choice(7, 2));
                else
                    guess = g0 > g1 ? 0 : 1;
            } else {
                guess = static_cast<int>(r.choice(7, 2));
            }
            record_key(t, 0, mp, a, a == b, guess);
        }
        const int cp = chsh_pair(ai, bi);
        if (cp >= 0) {
            t.chsh_sum[cp] += (a == b) ? -1 : 1;
            ++t.chsh_count[cp];
        }
        const std::uint64_t pack = std::uint64_t(ai) | std::uint64_t(bi) << 2 |
                                   std::uint64_t(a) << 4 | std::uint64_t(hit) << 5 |
                                   std::uint64_t(eb) << 6 | std::uint64_t(e) << 7 |
                                   std::uint64_t(b) << 8;
        record_digest(t, pulse, pack);
    }
};

// One wing of an entangled pair split by a cloning machine into two
// receivers, each running the three-angle protocol against Alice.
// Slots: 0 alice angle, 1/2 receiver angles, 3 axis, 4 alice outcome,
// 5/6 receiver outcomes.
struct BroadcastModel {
    FlyingChannel ch;
    int total;
    std::array<std::vector<cplx>, 4> psi{};
    double joint[4][3][3][3][8] = {};  // [axis][ai][b1i][b2i][4a + 2b1 + b2]
    Mat a_proj[3][2];
    Mat b1_proj[3][2];
    Mat b2_proj[3][2];

    explicit BroadcastModel(const ClonerSpec& spec) : ch(FlyingChannel::cloner(spec)) {
        total = 1 + ch.factors;
        std::vector<cplx> rest(ch.rest_dim(), cplx{0.0, 0.0});
        rest[0] = 1.0;
        const std::vector<cplx> base = kron(singlet_ket(), rest);
        for (int axis = 0; axis < ch.axes; ++axis)
            psi[axis] = kron(Mat::identity(2), ch.epr_op(axis)) * base;
        for (int i = 0; i < 3; ++i)
            for (int o = 0; o < 2; ++o) {
                a_proj[i][o] =
                    expand_at(angle_projector(kAliceAngles[i] + o * kPi), total, 0);
                b1_proj[i][o] =
                    expand_at(angle_projector(kBobAngles[i] + o * kPi), total, 1);
                b2_proj[i][o] =
                    expand_at(angle_projector(kBobAngles[i] + o * kPi), total, 2);
            }
        for (int axis = 0; axis < ch.axes; ++axis)
            for (int ai = 0; ai < 3; ++ai)
                for (int b1 = 0; b1 < 3; ++b1)
                    for (int b2 = 0; b2 < 3; ++b2) {
                        double* p = joint[axis][ai][b1][b2];
                        double totalp = 0.0;
                        for (int a = 0; a < 2; ++a) {
                            const std::vector<cplx> va = a_proj[ai][a] * psi[axis];
                            for (int o1 = 0; o1 < 2; ++o1) {
                                const std::vector<cplx> v1 = b1_proj[b1][o1] * va;
                                for (int o2 = 0; o2 < 2; ++o2) {
                                    p[4 * a + 2 * o1 + o2] =
                                        snap(quadratic_form(v1, b2_proj[b2][o2]));
                                    totalp += p[4 * a + 2 * o1 + o2];
                                }
                            }
                        }
                        if (totalp > 0.0)
                            for (int k = 0; k < 8; ++k) p[k] /= totalp;
                    }
    }

    void simulate(const SimConfig& cfg, std::uint64_t pulse, Tally& t1, Tally& t2) const {
        const PulseRng r{cfg.seed, pulse};
        const int ai = static_cast<int>(r.choice(0, 3));
        const int b1i = static_cast<int>(r.choice(1, 3));
        const int b2i = static_cast<int>(r.choice(2, 3));
        const int axis = ch.axes == 4 ? static_cast<int>(r.choice(3, 4)) : 0;
        int a, o1, o2;
        if (!cfg.exact) {
            const double* p = joint[axis][ai][b1i][b2i];
            const double pa0 = p[0] + p[1] + p[2] + p[3];
            a = r.uniform(4) < pa0 ? 0 : 1;
            const double pa = a == 0 ? pa0 : 1.0 - pa0;
            const double p10 = pa > 0.0 ? (p[4 * a] + p[4 * a + 1]) / pa : 0.5;
            o1 = r.uniform(5) < p10 ? 0 : 1;
            const double pair = p[4 * a + 2 * o1] + p[4 * a + 2 * o1 + 1];
            const double p20 = pair > 0.0 ? p[4 * a + 2 * o1] / pair : 0.5;
            o2 = r.uniform(6) < p20 ? 0 : 1;
        } else {
            const double pa0 = quadratic_form(psi[axis], a_proj[ai][0]);
            a = r.uniform(4) < pa0 ? 0 : 1;
            const std::vector<cplx> va = a_proj[ai][a] * psi[axis];
            const double na = norm2(va);
            const double p10 =
                na > 0.0 ? quadratic_form(va, b1_proj[b1i][0]) / na : 0.5;
            o1 = r.uniform(5) < p10 ? 0 : 1;
            const std::vector<cplx> v1 = b1_proj[b1i][o1] * va;
            const double n1 = norm2(v1);
            const double p20 =
                n1 > 0.0 ? quadratic_form(v1, b2_proj[b2i][0]) / n1 : 0.5;
            o2 = r.uniform(6) < p20 ? 0 : 1;
        }
        const int receivers[2][2] = {{b1i, o1}, {b2i, o2}};
        Tally* tallies[2] = {&t1, &t2};
        for (int k = 0; k < 2; ++k) {
            const int bi = receivers[k][0], b = receivers[k][1];
            Tally& t = *tallies[k];
            const int mp = matched_pair(ai, bi);
            if (mp >= 0) record_key(t, axis, mp, a, a == b, 0);
            const int cp = chsh_pair(ai, bi);
            if (cp >= 0) {
                t.chsh_sum[cp] += (a == b) ? -1 : 1;
                ++t.chsh_count[cp];
            }
        }
        t1.sum_b1 += o1 == 0 ? 1 : -1;
        t1.sum_b2 += o2 == 0 ? 1 : -1;
        t1.sum_prod += o1 == o2 ? 1 : -1;
        const std::uint64_t pack = std::uint64_t(ai) | std::uint64_t(b1i) << 2 |
                                   std::uint64_t(b2i) << 4 | std::uint64_t(axis) << 6 |
                                   std::uint64_t(a) << 8 | std::uint64_t(o1) << 9 |
                                   std::uint64_t(o2) << 10;
        record_digest(t1, pulse, pack);
        record_digest(t2, pulse, pack);
    }
};

unsigned resolve_threads(unsigned requested) {
    if (requested) return std::min(requested, 64u);
    if (const char* env = std::getenv("QEVE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return std::min(static_cast<unsigned>(v), 64u);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? std::min(hw, 16u) : 1u;
}

template <typename Work>
void run_sharded(const SimConfig& cfg, std::vector<Tally>& parts, Work work) {
    const std::uint64_t n = cfg.n_pulses;
    const std::uint64_t nthreads =
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(resolve_threads(cfg.threads), n));
    parts.assign(nthreads, Tally{});
    if (nthreads == 1) {
        for (std::uint64_t pulse = 0; pulse < n; ++pulse) work(pulse, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const std::uint64_t per = n / nthreads;
    const std::uint64_t extra = n % nthreads;
    std::uint64_t lo = 0;
    for (std::uint64_t k = 0; k < nthreads; ++k) {
        const std::uint64_t hi = lo + per + (k < extra ? 1 : 0);
        pool.emplace_back([&work, lo, hi, k] {
            for (std::uint64_t pulse = lo; pulse < hi; ++pulse) work(pulse, k);
        });
        lo = hi;
    }
    for (std::thread& th : pool) th.join();
}

SimResult finalize(const Tally& t, bool ekert) {
    SimResult res;
    res.sifted_count = t.sifted;
    if (t.sifted) {
        res.empirical_q = static_cast<double>(t.errors) / static_cast<double>(t.sifted);
        res.eve_guess_rate =
            static_cast<double>(t.eve_correct) / static_cast<double>(t.sifted);
        for (int i = 0; i < 2; ++i)
            if (t.basis_sifted[i])
                res.per_basis_q[i] = static_cast<double>(t.basis_errors[i]) /
                                     static_cast<double>(t.basis_sifted[i]);
        double bound = 0.0;
        for (int c = 0; c < 8; ++c) {
            if (!t.cell_count[c]) continue;
            const double weight =
                static_cast<double>(t.cell_count[c]) / static_cast<double>(t.sifted);
            const double err = static_cast<double>(t.cell_wrong[c]) /
                               static_cast<double>(t.cell_count[c]);
            bound += weight * (1.0 - binary_entropy(err));
        }
        res.empirical_i_ae_lower_bound = bound;
    }
    if (ekert) {
        bool complete = true;
        double s = 0.0;
        for (int k = 0; k < 4; ++k) {
            if (!t.chsh_count[k]) {
                complete = false;
                break;
            }
            s += kChshSign[k] * static_cast<double>(t.chsh_sum[k]) /
                 static_cast<double>(t.chsh_count[k]);
        }
        if (complete) res.empirical_s = s;
    }
    res.rng_trace_digest = t.digest;
    return res;
}

std::unique_ptr<PulseModel> build_model(const SimConfig& cfg) {
    const EveStrategy& eve = cfg.eve;
    const bool ekert = cfg.protocol == Protocol::ekert;
    switch (eve.kind) {
        case EveStrategy::Kind::none:
            if (ekert) return std::make_unique<EkertInterceptModel>(0.0);
            return std::make_unique<Bb84InterceptModel>(0.0);
        case EveStrategy::Kind::intercept_resend:
            if (ekert) return std::make_unique<EkertInterceptModel>(eve.fraction);
            return std::make_unique<Bb84InterceptModel>(eve.fraction);
        case EveStrategy::Kind::intensity: {
            const FlyingChannel ch =
                FlyingChannel::probe(IntensityGamma(eve.gamma).params(), eve.symmetrized);
            if (ekert) return std::make_unique<EkertProbeModel>(ch, cfg.delayed_measurement);
            return std::make_unique<Bb84ProbeModel>(ch, cfg.delayed_measurement);
        }
        case EveStrategy::Kind::general: {
            const FlyingChannel ch = FlyingChannel::probe(eve.params, eve.symmetrized);
            if (ekert) return std::make_unique<EkertProbeModel>(ch, cfg.delayed_measurement);
            return std::make_unique<Bb84ProbeModel>(ch, cfg.delayed_measurement);
        }
        case EveStrategy::Kind::cloner_tap: {
            const FlyingChannel ch = FlyingChannel::cloner(eve.cloner);
            if (ekert) return std::make_unique<EkertProbeModel>(ch, cfg.delayed_measurement);
            return std::make_unique<Bb84ProbeModel>(ch, cfg.delayed_measurement);
        }
    }
    throw std::logic_error("unreachable eve strategy kind");
}

std::string protocol_name(Protocol p) { return p == Protocol::bb84 ? "bb84" : "ekert"; }

std::string hex_digest(std::uint64_t d) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(d));
    return buf;
}

nlohmann::ordered_json result_json(const SimResult& r) {
    nlohmann::ordered_json j;
    j["sifted_count"] = r.sifted_count;
    j["empirical_q"] = r.empirical_q;
    j["per_basis_q"] = {r.per_basis_q[0], r.per_basis_q[1]};
    j["eve_guess_rate"] = r.eve_guess_rate;
    j["empirical_i_ae_lower_bound"] = r.empirical_i_ae_lower_bound;
    if (r.empirical_s) j["empirical_s"] = *r.empirical_s;
    j["rng_trace_digest"] = hex_digest(r.rng_trace_digest);
    return j;
}

nlohmann::ordered_json config_json(const SimConfig& cfg) {
    nlohmann::ordered_json j;
    j["protocol"] = protocol_name(cfg.protocol);
    j["eve"] = cfg.eve.str();
    j["n_pulses"] = cfg.n_pulses;
    j["seed"] = cfg.seed;
    j["delayed_measurement"] = cfg.delayed_measurement;
    j["exact"] = cfg.exact;
    return j;
}

std::string format_number(double x) { return nlohmann::json(x).dump(); }

std::vector<std::string> split_colon(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = text.find(':', pos);
        if (next == std::string::npos) {
            parts.push_back(text.substr(pos));
            return parts;
        }
        parts.push_back(text.substr(pos, next - pos));
        pos = next + 1;
    }
}

double parse_number(const std::string& s, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad number '" + s + "' in eve strategy '" + text + "'");
    }
}

bool parse_symmetry(const std::vector<std::string>& parts, std::size_t at,
                    const std::string& text) {
    if (parts.size() <= at) return false;
    if (parts[at] == "sym") return true;
    if (parts[at] == "unsym") return false;
    throw std::invalid_argument("bad suffix '" + parts[at] + "' in eve strategy '" + text +
                                "' (want sym or unsym)");
}

}  // namespace

EveStrategy EveStrategy::intercept(double fraction) {
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw std::invalid_argument("intercept fraction must lie in [0, 1]");
    EveStrategy e;
    e.kind = Kind::intercept_resend;
    e.fraction = fraction;
    return e;
}

// The gamma range is checked when the channel is built, so a parsed value
// can still be unit-converted first.
EveStrategy EveStrategy::intensity_probe(double gamma, bool symmetrized) {
    EveStrategy e;
    e.kind = Kind::intensity;
    e.gamma = gamma;
    e.symmetrized = symmetrized;
    return e;
}

EveStrategy EveStrategy::general_probe(const ProbeParams& p, bool symmetrized) {
    EveStrategy e;
    e.kind = Kind::general;
    e.params = p;
    e.symmetrized = symmetrized;
    return e;
}

EveStrategy EveStrategy::cloner_tap(const ClonerSpec& spec) {
    EveStrategy e;
    e.kind = Kind::cloner_tap;
    e.cloner = spec;
    return e;
}

EveStrategy EveStrategy::parse(const std::string& text) {
    const std::vector<std::string> parts = split_colon(text);
    const std::string& head = parts[0];
    if (head == "none" && parts.size() == 1) return none();
    if (head == "intercept" && parts.size() == 2)
        return intercept(parse_number(parts[1], text));
    if (head == "intensity" && (parts.size() == 2 || parts.size() == 3))
        return intensity_probe(parse_number(parts[1], text), parse_symmetry(parts, 2, text));
    if (head == "general" && (parts.size() == 3 || parts.size() == 4))
        return general_probe(
            ProbeParams{parse_number(parts[1], text), parse_number(parts[2], text)},
            parse_symmetry(parts, 3, text));
    if (head == "cloner" && parts.size() >= 2) {
        if (parts[1] == "uqcm" && parts.size() == 2) return cloner_tap(ClonerSpec::uqcm());
        if (parts[1] == "pgqcm" && parts.size() == 3)
            return cloner_tap(ClonerSpec::pgqcm(parse_number(parts[2], text)));
        if (parts[1] == "pgqcm_sym" && parts.size() == 3)
            return cloner_tap(ClonerSpec::pgqcm_symmetrized(parse_number(parts[2], text)));
    }
    throw std::invalid_argument("unknown eve strategy '" + text + "'");
}

std::string EveStrategy::str() const {
    switch (kind) {
        case Kind::none:
            return "none";
        case Kind::intercept_resend:
            return "intercept:" + format_number(fraction);
        case Kind::intensity:
            return "intensity:" + format_number(gamma) + (symmetrized ? ":sym" : ":unsym");
        case Kind::general:
            return "general:" + format_number(params.alpha) + ":" +
                   format_number(params.beta) + (symmetrized ? ":sym" : ":unsym");
        case Kind::cloner_tap:
            switch (cloner.kind) {
                case ClonerSpec::Kind::pgqcm:
                    return "cloner:pgqcm:" + format_number(cloner.alpha);
                case ClonerSpec::Kind::pgqcm_symmetrized:
                    return "cloner:pgqcm_sym:" + format_number(cloner.alpha);
                case ClonerSpec::Kind::uqcm:
                    return "cloner:uqcm";
            }
    }
    return "none";
}

SimResult run(const SimConfig& cfg) {
    if (cfg.n_pulses == 0) throw std::invalid_argument("n_pulses must be positive");
    const std::unique_ptr<PulseModel> model = build_model(cfg);
    std::vector<Tally> parts;
    run_sharded(cfg, parts,
                [&](std::uint64_t pulse, std::size_t k) { model->simulate(cfg, pulse, parts[k]); });
    Tally total;
    for (const Tally& t : parts) total.merge(t);
    return finalize(total, model->ekert());
}

SimResult run_bb84(const SimConfig& cfg) {
    SimConfig c = cfg;
    c.protocol = Protocol::bb84;
    return run(c);
}

SimResult run_ekert(const SimConfig& cfg) {
    SimConfig c = cfg;
    c.protocol = Protocol::ekert;
    return run(c);
}

BroadcastResult broadcast_sim(const SimConfig& cfg, const ClonerSpec& spec) {
    if (cfg.n_pulses == 0) throw std::invalid_argument("n_pulses must be positive");
    const BroadcastModel model(spec);
    std::vector<Tally> parts1, parts2;
    const std::uint64_t nthreads = std::max<std::uint64_t>(
        1, std::min<std::uint64_t>(resolve_threads(cfg.threads), cfg.n_pulses));
    parts2.assign(nthreads, Tally{});
    run_sharded(cfg, parts1, [&](std::uint64_t pulse, std::size_t k) {
        model.simulate(cfg, pulse, parts1[k], parts2[k]);
    });
    Tally t1, t2;
    for (const Tally& t : parts1) t1.merge(t);
    for (const Tally& t : parts2) t2.merge(t);
    BroadcastResult res{finalize(t1, true), finalize(t2, true), 0.0};
    const double n = static_cast<double>(cfg.n_pulses);
    const double m1 = static_cast<double>(t1.sum_b1) / n;
    const double m2 = static_cast<double>(t1.sum_b2) / n;
    res.outcome_correlation = static_cast<double>(t1.sum_prod) / n - m1 * m2;
    // The receivers trade guessing power for symmetry; no eavesdropper here.
    res.bob1.eve_guess_rate = 0.0;
    res.bob2.eve_guess_rate = 0.0;
    res.bob1.empirical_i_ae_lower_bound = 0.0;
    res.bob2.empirical_i_ae_lower_bound = 0.0;
    return res;
}

std::string simulate_json(const SimConfig& cfg) {
    const SimResult r = run(cfg);
    nlohmann::ordered_json j = config_json(cfg);
    j.update(result_json(r));
    return j.dump(2) + "\n";
}

std::string broadcast_json(const SimConfig& cfg, const ClonerSpec& spec) {
    const BroadcastResult r = broadcast_sim(cfg, spec);
    nlohmann::ordered_json j;
    j["protocol"] = "ekert";
    EveStrategy tap = EveStrategy::cloner_tap(spec);
    j["cloner"] = tap.str().substr(std::string("cloner:").size());
    j["n_pulses"] = cfg.n_pulses;
    j["seed"] = cfg.seed;
    j["exact"] = cfg.exact;
    j["bob1"] = result_json(r.bob1);
    j["bob2"] = result_json(r.bob2);
    j["outcome_correlation"] = r.outcome_correlation;
    return j.dump(2) + "\n";
}

}  // namespace qeve

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qeve/entanglement.hpp"
#include "qeve/quantum.hpp"

namespace qeve {

struct ClonerSpec {
    enum class Kind { pgqcm, pgqcm_symmetrized, uqcm };
    Kind kind = Kind::pgqcm;
    double alpha = 0.0;  // unused for uqcm

    static ClonerSpec pgqcm(double alpha) { return {Kind::pgqcm, alpha}; }
    static ClonerSpec pgqcm_symmetrized(double alpha) { return {Kind::pgqcm_symmetrized, alpha}; }
    static ClonerSpec uqcm() { return {Kind::uqcm, 0.0}; }
};

struct CloneOutput {
    QubitDensity rho_original;
    QubitDensity rho_copy;
    std::optional<QubitDensity> rho_machine;  // uqcm only
};

// 8x8 unitary on signal (x) blank (x) machine.
const Mat& uqcm_unitary();

CloneOutput clone(const ClonerSpec& spec, double theta);

// Average over theta of the fidelity between |psi(theta)> and the
// perturbed original, 1024-point trapezoid rule on [0, 2pi).
double mean_fidelity(const ClonerSpec& spec);

struct ClonerOptimum {
    double alpha;
    double f_bar;
    // Optimum of the two-sided mean fidelity when the two coupling angles
    // are allowed to differ; lands back on the equal-angle point.
    double relaxed_alpha;
    double relaxed_beta;
    double relaxed_f_bar;
};

ClonerOptimum optimize_cloner();

// Copy-state Bloch vectors for theta uniform on [0, 2pi).
std::vector<BlochVector> bloch_locus(const ClonerSpec& spec, std::size_t n_points);

// Alice-Bob1 and Alice-Bob2 states when the cloner is applied to Bob's
// half of a singlet and the outputs go to two receivers.
std::pair<TwoQubitDensity, TwoQubitDensity> broadcast_joints(const ClonerSpec& spec);

struct BroadcastBell {
    double s_b1;
    double s_b2;
    BellSetting setting_b1;
    BellSetting setting_b2;
};

// CHSH values of both receiver pairs, at the given setting or (when none
// is given) at each pair's searched optimum.
BroadcastBell broadcast_bell(const ClonerSpec& spec,
                             const std::optional<BellSetting>& setting = std::nullopt);

}  // namespace qeve

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "qeve/cloning.hpp"
#include "qeve/eavesdrop.hpp"

namespace qeve {

enum class Protocol { bb84, ekert };

struct EveStrategy {
    enum class Kind { none, intercept_resend, intensity, general, cloner_tap };
    Kind kind = Kind::none;
    double fraction = 0.0;   // intercept_resend
    double gamma = 0.0;      // intensity
    ProbeParams params{};    // general
    bool symmetrized = false;
    ClonerSpec cloner{};     // cloner_tap

    static EveStrategy none() { return {}; }
    static EveStrategy intercept(double fraction);
    static EveStrategy intensity_probe(double gamma, bool symmetrized);
    static EveStrategy general_probe(const ProbeParams& p, bool symmetrized);
    static EveStrategy cloner_tap(const ClonerSpec& spec);

    // Text form used by the CLI: none | intercept:p | intensity:g[:sym|:unsym]
    // | general:a:b[:sym|:unsym] | cloner:pgqcm:a | cloner:pgqcm_sym:a | cloner:uqcm
    static EveStrategy parse(const std::string& text);
    std::string str() const;
};

struct SimConfig {
    std::uint64_t n_pulses = 10000;
    std::uint64_t seed = 1;
    Protocol protocol = Protocol::bb84;
    EveStrategy eve{};
    bool delayed_measurement = true;
    bool exact = false;   // recompute every pulse from the state vector
    unsigned threads = 0;  // 0: QEVE_THREADS or hardware count
};

struct SimResult {
    std::uint64_t sifted_count = 0;
    double empirical_q = 0.0;
    std::array<double, 2> per_basis_q{0.0, 0.0};
    double eve_guess_rate = 0.0;
    double empirical_i_ae_lower_bound = 0.0;
    std::optional<double> empirical_s{};
    std::uint64_t rng_trace_digest = 0;
};

SimResult run_bb84(const SimConfig& cfg);
SimResult run_ekert(const SimConfig& cfg);
SimResult run(const SimConfig& cfg);

struct BroadcastResult {
    SimResult bob1;
    SimResult bob2;
    double outcome_correlation;  // covariance of the two receivers' outcomes
};

BroadcastResult broadcast_sim(const SimConfig& cfg, const ClonerSpec& spec);

// JSON reports (config echoed next to the results; thread count omitted
// since it never changes an outcome).
std::string simulate_json(const SimConfig& cfg);
std::string broadcast_json(const SimConfig& cfg, const ClonerSpec& spec);

}  // namespace qeve

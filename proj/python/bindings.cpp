#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qeve/cloning.hpp"
#include "qeve/eavesdrop.hpp"
#include "qeve/entanglement.hpp"
#include "qeve/information.hpp"
#include "qeve/sim.hpp"
#include "qeve/verify.hpp"

namespace py = pybind11;
using namespace qeve;

namespace {

ClonerSpec cloner_from_text(const std::string& text) {
    return EveStrategy::parse("cloner:" + text).cloner;
}

SimConfig make_config(const std::string& protocol, const std::string& eve,
                      std::uint64_t n, std::uint64_t seed, bool delayed, bool exact,
                      unsigned threads) {
    SimConfig cfg;
    if (protocol == "bb84") cfg.protocol = Protocol::bb84;
    else if (protocol == "ekert") cfg.protocol = Protocol::ekert;
    else throw std::invalid_argument("unknown protocol '" + protocol + "'");
    cfg.eve = EveStrategy::parse(eve);
    cfg.n_pulses = n;
    cfg.seed = seed;
    cfg.delayed_measurement = delayed;
    cfg.exact = exact;
    cfg.threads = threads;
    return cfg;
}

py::dict result_dict(const SimResult& r) {
    py::dict d;
    d["sifted_count"] = r.sifted_count;
    d["empirical_q"] = r.empirical_q;
    d["per_basis_q"] = py::make_tuple(r.per_basis_q[0], r.per_basis_q[1]);
    d["eve_guess_rate"] = r.eve_guess_rate;
    d["empirical_i_ae_lower_bound"] = r.empirical_i_ae_lower_bound;
    if (r.empirical_s) d["empirical_s"] = *r.empirical_s;
    d["rng_trace_digest"] = r.rng_trace_digest;
    return d;
}

}  // namespace

PYBIND11_MODULE(_qeve, m) {
    m.doc() = "eavesdropping analysis for BB84/EPR quantum key distribution";

    m.def("info_ab", &info_ab, py::arg("q"));
    m.def("binary_entropy", &binary_entropy, py::arg("x"));
    m.def("info_eve_intensity", &info_eve_intensity, py::arg("gamma"));
    m.def(
        "info_eve_general",
        [](double alpha, double beta) { return info_eve_general({alpha, beta}); },
        py::arg("alpha"), py::arg("beta"));
    m.def(
        "optimize_info",
        [](double q_target) {
            const ProbeOptimum best = optimize_info(q_target);
            py::dict d;
            d["alpha"] = best.params.alpha;
            d["beta"] = best.params.beta;
            d["i_ae"] = best.i_ae;
            return d;
        },
        py::arg("q_target"));

    m.def(
        "ber",
        [](double alpha, double beta) { return ber(ProbeParams{alpha, beta}); },
        py::arg("alpha"), py::arg("beta"));
    m.def("ber_intensity", [](double gamma) { return ber(IntensityGamma(gamma)); },
          py::arg("gamma"));
    m.def(
        "shrink_factor",
        [](double alpha, double beta) { return shrink_factor(ProbeParams{alpha, beta}); },
        py::arg("alpha"), py::arg("beta"));
    m.def(
        "intercept_resend",
        [](double p_fraction) {
            const InterceptResend r = intercept_resend(p_fraction);
            return py::make_tuple(r.q, r.i_ae);
        },
        py::arg("p_fraction"));

    m.def("s_ab_intensity", &s_ab_intensity, py::arg("gamma"));
    m.def("s_ae_intensity", &s_ae_intensity, py::arg("gamma"));
    m.def(
        "bell_report_intensity",
        [](double gamma) {
            const BellReport r = bell_report_intensity(gamma);
            py::dict d;
            d["s_ab"] = r.s_ab;
            d["s_ae"] = r.s_ae;
            d["horodecki"] = r.horodecki;
            d["q"] = r.q;
            return d;
        },
        py::arg("gamma"));
    m.def(
        "singlet_fraction_intensity",
        [](double gamma, bool symmetrized) {
            return singlet_fraction(epr_joint(IntensityGamma(gamma), symmetrized));
        },
        py::arg("gamma"), py::arg("symmetrized") = true);
    m.def(
        "qpa_feasible_intensity",
        [](double gamma, bool symmetrized) {
            return qpa_feasible(epr_joint(IntensityGamma(gamma), symmetrized));
        },
        py::arg("gamma"), py::arg("symmetrized") = true);

    m.def(
        "mean_fidelity",
        [](const std::string& cloner) { return mean_fidelity(cloner_from_text(cloner)); },
        py::arg("cloner"));
    m.def("optimize_cloner", []() {
        const ClonerOptimum best = optimize_cloner();
        py::dict d;
        d["alpha"] = best.alpha;
        d["f_bar"] = best.f_bar;
        d["relaxed_alpha"] = best.relaxed_alpha;
        d["relaxed_beta"] = best.relaxed_beta;
        d["relaxed_f_bar"] = best.relaxed_f_bar;
        return d;
    });
    m.def(
        "broadcast_bell",
        [](const std::string& cloner, bool fortyfive) {
            const BroadcastBell r = broadcast_bell(
                cloner_from_text(cloner),
                fortyfive ? std::optional<BellSetting>(fortyfive_setting()) : std::nullopt);
            return py::make_tuple(r.s_b1, r.s_b2);
        },
        py::arg("cloner"), py::arg("fortyfive") = true);

    m.def(
        "simulate",
        [](const std::string& protocol, const std::string& eve, std::uint64_t n,
           std::uint64_t seed, bool delayed, bool exact, unsigned threads) {
            return result_dict(
                run(make_config(protocol, eve, n, seed, delayed, exact, threads)));
        },
        py::arg("protocol") = "bb84", py::arg("eve") = "none", py::arg("n") = 10000,
        py::arg("seed") = 1, py::arg("delayed") = true, py::arg("exact") = false,
        py::arg("threads") = 0);
    m.def(
        "simulate_json",
        [](const std::string& protocol, const std::string& eve, std::uint64_t n,
           std::uint64_t seed, bool delayed, bool exact, unsigned threads) {
            return simulate_json(make_config(protocol, eve, n, seed, delayed, exact, threads));
        },
        py::arg("protocol") = "bb84", py::arg("eve") = "none", py::arg("n") = 10000,
        py::arg("seed") = 1, py::arg("delayed") = true, py::arg("exact") = false,
        py::arg("threads") = 0);
    m.def(
        "broadcast_sim",
        [](const std::string& cloner, std::uint64_t n, std::uint64_t seed,
           unsigned threads) {
            SimConfig cfg;
            cfg.protocol = Protocol::ekert;
            cfg.n_pulses = n;
            cfg.seed = seed;
            cfg.threads = threads;
            const BroadcastResult r = broadcast_sim(cfg, cloner_from_text(cloner));
            py::dict d;
            d["bob1"] = result_dict(r.bob1);
            d["bob2"] = result_dict(r.bob2);
            d["outcome_correlation"] = r.outcome_correlation;
            return d;
        },
        py::arg("cloner") = "uqcm", py::arg("n") = 10000, py::arg("seed") = 1,
        py::arg("threads") = 0);

    m.def("run_acceptance", []() {
        py::list rows;
        for (const CriterionResult& r : run_acceptance()) {
            py::dict d;
            d["id"] = r.id;
            d["label"] = r.label;
            d["pass"] = r.pass;
            d["finding"] = r.finding;
            d["detail"] = r.detail;
            rows.append(d);
        }
        return rows;
    });
}

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qeve/cloning.hpp"
#include "qeve/eavesdrop.hpp"
#include "qeve/entanglement.hpp"
#include "qeve/information.hpp"
#include "qeve/sim.hpp"
#include "qeve/verify.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Empty path means stdout.  Returns a process exit code.
int write_out(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::fprintf(stderr, "error: cannot open '%s' for writing\n", path.c_str());
        return 1;
    }
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    return f.good() ? 0 : 1;
}

qeve::ClonerSpec parse_cloner(const std::string& text, bool degrees) {
    qeve::ClonerSpec spec = qeve::EveStrategy::parse("cloner:" + text).cloner;
    if (degrees) spec.alpha *= kPi / 180.0;
    return spec;
}

void strategy_to_radians(qeve::EveStrategy& s) {
    const double f = kPi / 180.0;
    switch (s.kind) {
        case qeve::EveStrategy::Kind::intensity:
            s.gamma *= f;
            break;
        case qeve::EveStrategy::Kind::general:
            s.params.alpha *= f;
            s.params.beta *= f;
            break;
        case qeve::EveStrategy::Kind::cloner_tap:
            s.cloner.alpha *= f;
            break;
        default:
            break;
    }
}

struct CurveOptions {
    std::string quantity;
    double min = 0.0;
    double max = 0.0;
    bool has_min = false;
    bool has_max = false;
    int steps = 51;
    std::string cloner = "uqcm";
    bool degrees = false;
    std::string out;
};

int usage_error(const std::string& message) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    return 2;
}

int run_curve(const CurveOptions& opt) {
    const std::string& q = opt.quantity;
    const bool angle_grid =
        q == "s_ab" || q == "s_ae" || q == "singlet_fraction" || q == "bloch_locus";

    double lo, hi, dom_lo, dom_hi;
    if (q == "i_ab") {
        lo = 0.0; hi = 0.5; dom_lo = 0.0; dom_hi = 0.5;
    } else if (q == "i_ae_intensity") {
        lo = 0.0; hi = 0.25; dom_lo = 0.0; dom_hi = 0.25;
    } else if (q == "i_ae_optimal") {
        lo = 0.0; hi = 0.45; dom_lo = 0.0; dom_hi = 0.5;
    } else if (q == "intercept_resend") {
        lo = 0.0; hi = 1.0; dom_lo = 0.0; dom_hi = 1.0;
    } else if (q == "bloch_locus") {
        lo = 0.0; hi = 2 * kPi; dom_lo = -1e30; dom_hi = 1e30;
    } else {
        lo = 0.0; hi = kPi / 2; dom_lo = 0.0; dom_hi = kPi / 2;
    }
    const double unit = (opt.degrees && angle_grid) ? kPi / 180.0 : 1.0;
    if (opt.has_min) lo = opt.min * unit;
    if (opt.has_max) hi = opt.max * unit;

    if (opt.steps < 2) return usage_error("grid needs at least 2 steps");
    if (!(lo < hi)) return usage_error("grid needs min < max");
    if (lo < dom_lo - 1e-12 || hi > dom_hi + 1e-12)
        return usage_error("grid leaves the domain of quantity '" + q + "'");

    std::string header;
    std::function<std::vector<double>(double)> eval;
    if (q == "i_ab") {
        header = "q,i_ab";
        eval = [](double x) { return std::vector<double>{x, qeve::info_ab(x)}; };
    } else if (q == "i_ae_intensity") {
        header = "q,i_ae_intensity,gamma";
        eval = [](double x) {
            const double g = std::acos(std::clamp(1.0 - 4.0 * x, -1.0, 1.0));
            return std::vector<double>{x, qeve::info_eve_intensity(g), g};
        };
    } else if (q == "i_ae_optimal") {
        header = "q,i_ae_optimal,alpha,beta";
        eval = [](double x) {
            const qeve::ProbeOptimum best = qeve::optimize_info(x);
            return std::vector<double>{x, best.i_ae, best.params.alpha, best.params.beta};
        };
    } else if (q == "intercept_resend") {
        header = "p,q,i_ae";
        eval = [](double x) {
            const qeve::InterceptResend r = qeve::intercept_resend(x);
            return std::vector<double>{x, r.q, r.i_ae};
        };
    } else if (q == "s_ab") {
        header = "gamma,s_ab";
        eval = [](double x) { return std::vector<double>{x, qeve::s_ab_intensity(x)}; };
    } else if (q == "s_ae") {
        header = "gamma,s_ae";
        eval = [](double x) { return std::vector<double>{x, qeve::s_ae_intensity(x)}; };
    } else if (q == "singlet_fraction") {
        header = "gamma,singlet_fraction,q";
        eval = [](double x) {
            const qeve::IntensityGamma g(x);
            const double f = qeve::singlet_fraction(qeve::epr_joint(g, true));
            return std::vector<double>{x, f, qeve::ber(g)};
        };
    } else if (q == "bloch_locus") {
        header = "theta,m_x,m_y,m_z";
        const qeve::ClonerSpec spec = parse_cloner(opt.cloner, opt.degrees);
        eval = [spec](double x) {
            const qeve::BlochVector b = qeve::bloch_of(qeve::clone(spec, x).rho_copy);
            return std::vector<double>{x, b.x, b.y, b.z};
        };
    } else {
        return usage_error("unknown quantity '" + q + "'");
    }

    std::string csv = header + "\n";
    const double span = hi - lo;
    for (int i = 0; i < opt.steps; ++i) {
        const double x = lo + span * i / (opt.steps - 1);
        const std::vector<double> row = eval(x);
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) csv += ',';
            csv += fmt12(row[k]);
        }
        csv += '\n';
    }
    return write_out(opt.out, csv);
}

int run_verify(const std::string& out) {
    const std::vector<qeve::CriterionResult> rows = qeve::run_acceptance();
    std::ostringstream os;
    bool all_pass = true;
    for (const qeve::CriterionResult& r : rows) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.label << "\n";
        if (!r.detail.empty()) os << "      " << r.detail << "\n";
        if (!r.finding.empty()) os << "      finding: " << r.finding << "\n";
        all_pass = all_pass && r.pass;
    }
    os << (all_pass ? "all criteria pass" : "CRITERIA FAILED") << "\n";
    const int io = write_out(out, os.str());
    if (io != 0) return io;
    return all_pass ? 0 : 1;
}

struct SimulateOptions {
    std::string protocol = "bb84";
    std::string eve = "none";
    std::uint64_t n = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    bool exact = false;
    bool delayed = true;
    bool degrees = false;
    std::string broadcast;
    std::string config;
    std::string out;
};

bool parse_bool(const std::string& v, bool& value) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") { value = true; return true; }
    if (v == "false" || v == "0" || v == "no" || v == "off") { value = false; return true; }
    return false;
}

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// Flat key = value lines, '#' comments.  Returns false on malformed input.
bool load_config(const std::string& path, std::map<std::string, std::string>& kv,
                 std::string& error) {
    std::ifstream f(path);
    if (!f) {
        error = "cannot read config file '" + path + "'";
        return false;
    }
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            error = path + ":" + std::to_string(line_no) + ": expected key = value";
            return false;
        }
        kv[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
    }
    return true;
}

int run_simulate(SimulateOptions& opt, const std::map<std::string, CLI::Option*>& set_by) {
    if (!opt.config.empty()) {
        std::map<std::string, std::string> kv;
        std::string error;
        if (!load_config(opt.config, kv, error)) return usage_error(error);
        const auto flag_given = [&](const char* key) {
            const auto it = set_by.find(key);
            return it != set_by.end() && it->second->count() > 0;
        };
        for (const auto& [key, value] : kv) {
            if (flag_given(key.c_str())) continue;  // flags win
            try {
                if (key == "protocol") opt.protocol = value;
                else if (key == "eve") opt.eve = value;
                else if (key == "broadcast") opt.broadcast = value;
                else if (key == "out") opt.out = value;
                else if (key == "n") opt.n = std::stoull(value);
                else if (key == "seed") opt.seed = std::stoull(value);
                else if (key == "threads") opt.threads = static_cast<unsigned>(std::stoul(value));
                else if (key == "exact") { if (!parse_bool(value, opt.exact)) throw std::invalid_argument(value); }
                else if (key == "delayed") { if (!parse_bool(value, opt.delayed)) throw std::invalid_argument(value); }
                else if (key == "degrees") { if (!parse_bool(value, opt.degrees)) throw std::invalid_argument(value); }
                else return usage_error("unknown config key '" + key + "'");
            } catch (const std::exception&) {
                return usage_error("bad value for config key '" + key + "': " + value);
            }
        }
    }

    qeve::SimConfig cfg;
    cfg.n_pulses = opt.n;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    cfg.exact = opt.exact;
    cfg.delayed_measurement = opt.delayed;
    if (opt.protocol == "bb84") cfg.protocol = qeve::Protocol::bb84;
    else if (opt.protocol == "ekert") cfg.protocol = qeve::Protocol::ekert;
    else return usage_error("unknown protocol '" + opt.protocol + "'");

    std::string report;
    if (!opt.broadcast.empty()) {
        const qeve::ClonerSpec spec = parse_cloner(opt.broadcast, opt.degrees);
        cfg.protocol = qeve::Protocol::ekert;
        report = qeve::broadcast_json(cfg, spec);
    } else {
        cfg.eve = qeve::EveStrategy::parse(opt.eve);
        if (opt.degrees) strategy_to_radians(cfg.eve);
        report = qeve::simulate_json(cfg);
    }
    return write_out(opt.out, report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eavesdropping analysis for BB84/EPR quantum key distribution"};
    app.require_subcommand(1);

    CurveOptions curve;
    CLI::App* curve_cmd = app.add_subcommand(
        "curve", "sweep a quantity over a grid and emit CSV");
    curve_cmd
        ->add_option("quantity", curve.quantity,
                     "one of i_ab, i_ae_intensity, i_ae_optimal, intercept_resend, "
                     "s_ab, s_ae, singlet_fraction, bloch_locus")
        ->required();
    CLI::Option* min_opt = curve_cmd->add_option("--min", curve.min, "grid start");
    CLI::Option* max_opt = curve_cmd->add_option("--max", curve.max, "grid end");
    curve_cmd->add_option("--steps", curve.steps, "number of grid points (>= 2)");
    curve_cmd->add_option("--cloner", curve.cloner,
                          "cloner for bloch_locus: uqcm | pgqcm:a | pgqcm_sym:a");
    curve_cmd->add_flag("--degrees", curve.degrees, "interpret angle inputs as degrees");
    curve_cmd->add_option("--out", curve.out, "write to file instead of stdout");

    std::string verify_out;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "evaluate the built-in reproduction targets");
    verify_cmd->add_option("--out", verify_out, "write to file instead of stdout");

    SimulateOptions sim;
    std::map<std::string, CLI::Option*> sim_opts;
    CLI::App* sim_cmd = app.add_subcommand(
        "simulate", "run the pulse-level protocol simulation and emit JSON");
    sim_opts["protocol"] = sim_cmd->add_option("--protocol", sim.protocol, "bb84 | ekert");
    sim_opts["eve"] = sim_cmd->add_option(
        "--eve", sim.eve,
        "none | intercept:p | intensity:g[:sym|:unsym] | general:a:b[:sym|:unsym] | "
        "cloner:pgqcm:a | cloner:pgqcm_sym:a | cloner:uqcm");
    sim_opts["n"] = sim_cmd->add_option("--n", sim.n, "number of pulses");
    sim_opts["seed"] = sim_cmd->add_option("--seed", sim.seed, "RNG seed");
    sim_opts["threads"] = sim_cmd->add_option("--threads", sim.threads,
                                              "worker threads (0: automatic)");
    sim_opts["exact"] = sim_cmd->add_flag("--exact", sim.exact,
                                          "recompute every pulse from the state vector");
    sim_opts["delayed"] = sim_cmd->add_flag("--delayed,!--early", sim.delayed,
                                            "probe readout after basis announcement");
    sim_opts["degrees"] = sim_cmd->add_flag("--degrees", sim.degrees,
                                            "interpret strategy angles as degrees");
    sim_opts["broadcast"] = sim_cmd->add_option(
        "--broadcast", sim.broadcast, "clone Bob's half to two receivers: uqcm | pgqcm:a | pgqcm_sym:a");
    sim_cmd->add_option("--config", sim.config, "flat key = value file; flags win");
    sim_opts["out"] = sim_cmd->add_option("--out", sim.out, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (curve_cmd->parsed()) {
            curve.has_min = min_opt->count() > 0;
            curve.has_max = max_opt->count() > 0;
            return run_curve(curve);
        }
        if (verify_cmd->parsed()) return run_verify(verify_out);
        if (sim_cmd->parsed()) return run_simulate(sim, sim_opts);
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

// Scenario presets reproducing the reference figures, oracle-equivalence
// runs, parameter sweeps, and the CSV/JSON output layer behind the CLI.

#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "liouville.hpp"
#include "model.hpp"
#include "newton.hpp"
#include "oracles.hpp"
#include "params_json.hpp"
#include "quantum.hpp"
#include "timescales.hpp"

namespace kerrdeco::scenario {

enum class Kind {
    fig1a,
    fig1b,
    fig2a,
    fig2b,
    fig3a,
    fig3b,
    fig3c,
    timescales,
    hbar_limit,
    oracle_check,
    sweep,
};

inline constexpr std::array<std::pair<Kind, const char*>, 11> kind_names{{
    {Kind::fig1a, "fig1a"},
    {Kind::fig1b, "fig1b"},
    {Kind::fig2a, "fig2a"},
    {Kind::fig2b, "fig2b"},
    {Kind::fig3a, "fig3a"},
    {Kind::fig3b, "fig3b"},
    {Kind::fig3c, "fig3c"},
    {Kind::timescales, "timescales"},
    {Kind::hbar_limit, "hbar-limit"},
    {Kind::oracle_check, "oracle-check"},
    {Kind::sweep, "sweep"},
}};

inline const char* kind_name(Kind k) {
    for (const auto& [kind, name] : kind_names)
        if (kind == k) return name;
    throw std::invalid_argument("unknown scenario kind");
}

inline Kind kind_from_name(std::string_view name) {
    for (const auto& [kind, n] : kind_names)
        if (name == n) return kind;
    throw std::invalid_argument("unknown scenario name: " + std::string(name));
}

struct TauGrid {
    double start = 0.0;
    double stop = 4.0 * std::numbers::pi;
    int count = 2000;
};

inline void validate(const TauGrid& g) {
    if (g.count < 2) throw std::invalid_argument("grid count must be >= 2");
    if (!(g.stop > g.start) || !(g.start >= 0.0))
        throw std::invalid_argument("grid must satisfy stop > start >= 0");
}

inline std::vector<double> grid_points(const TauGrid& g) {
    validate(g);
    std::vector<double> pts(static_cast<std::size_t>(g.count));
    for (int i = 0; i < g.count; ++i)
        pts[static_cast<std::size_t>(i)] = g.start + (g.stop - g.start) * i / (g.count - 1);
    return pts;
}

struct Scenario {
    Kind kind = Kind::fig1a;
    ModelParams params;
    TauGrid grid;
    std::string out_dir = ".";
    std::uint64_t seed = 20260808ULL;
    std::size_t samples = 100000;
    double resolution_m = 2.0;
};

/// Shared figure parameters: R0^T R0/hbar = 8 and g_s/Omega = 5 for the open
/// variants; the closed variants drop the reservoir entirely.
inline ModelParams closed_params() {
    ModelParams p;
    p.hbar = 1.0;
    p.omega_s = 1.0;
    p.g_s = 0.5;
    p.omega_bath = 1.0;
    p.capital_omega = 0.0;
    p.n_modes = 0;
    p.beta_hbar_omega = 0.1;
    p.r0 = {2.0, 2.0};
    return p;
}

inline ModelParams open_params(double beta_hbar_omega) {
    ModelParams p = closed_params();
    p.capital_omega = 0.1;
    p.n_modes = 50;
    p.beta_hbar_omega = beta_hbar_omega;
    return p;
}

inline Scenario preset(Kind kind) {
    Scenario sc;
    sc.kind = kind;
    switch (kind) {
        case Kind::fig1a:
        case Kind::fig2a:
        case Kind::fig3a:
            sc.params = closed_params();
            break;
        case Kind::fig1b:
        case Kind::fig2b:
        case Kind::fig3c:
        case Kind::timescales:
        case Kind::hbar_limit:
        case Kind::sweep:
            sc.params = open_params(0.1);
            break;
        case Kind::fig3b:
            sc.params = open_params(1.0);
            break;
        case Kind::oracle_check: {
            ModelParams p = closed_params();
            p.capital_omega = 0.2;
            p.n_modes = 2;
            p.beta_hbar_omega = 1.0;
            sc.params = p;
            break;
        }
    }
    switch (kind) {
        case Kind::fig3a:
        case Kind::fig3b:
        case Kind::fig3c:
            sc.grid = {0.0, 4.0 * std::numbers::pi, 4000};
            break;
        case Kind::sweep:
            sc.grid = {0.05, 2.0, 100};  // beta hbar omega values
            break;
        case Kind::oracle_check:
            sc.grid = {0.0, 2.0 * std::numbers::pi, 20};
            break;
        default:
            sc.grid = {0.0, 4.0 * std::numbers::pi, 2000};
            break;
    }
    return sc;
}

struct RunResult {
    std::vector<std::string> csv_files;
    std::string json_file;
};

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path.string());
    }

    void header(std::span<const std::string> names) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (i) out_ << ',';
            out_ << names[i];
        }
        out_ << '\n';
    }

    void row(std::span<const double> values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) out_ << ',';
            out_ << format_double(values[i]);
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

inline nlohmann::json derived_json(const ModelParams& p, double resolution_m) {
    const SpectralDensity sd = build_spectral_density(p);
    const auto dt = timescales::decoherence_times(p);
    const auto tb = timescales::temperature_bound(p);
    nlohmann::json j{{"g1", sd.g1_sum},
                     {"g2", sd.g2_norm},
                     {"z", thermal_z(p)},
                     {"tau_dq", dt.tau_dq},
                     {"tau_dl", dt.tau_dl},
                     {"tau_r", timescales::revival_time},
                     {"temperature_bound",
                      {{"ratio", tb.ratio}, {"bound", tb.bound}, {"satisfied", tb.satisfied}}}};
    try {
        const auto db = timescales::determinism_break_time(p, resolution_m);
        j["tau_det_exact"] = db.tau_det_exact;
        j["tau_det_expansion"] = db.tau_det_expansion;
        j["tau_det_closed"] = db.tau_det_closed;
    } catch (const std::invalid_argument&) {
        // resolution outside the solvable range for these parameters
    }
    return j;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace detail

inline RunResult run_scenario(const Scenario& sc) {
    kerrdeco::validate(sc.params);
    validate(sc.grid);
    const std::filesystem::path dir(sc.out_dir);
    std::filesystem::create_directories(dir);
    const std::string stem = kind_name(sc.kind);

    RunResult result;
    nlohmann::json oracle = nlohmann::json::object();
    const ModelParams& p = sc.params;

    switch (sc.kind) {
        case Kind::fig1a:
        case Kind::fig1b: {
            const auto path = dir / (stem + ".csv");
            detail::CsvWriter csv(path);
            const std::vector<std::string> cols{"tau", "rn_sq_over_hbar", "rq_sq_over_hbar",
                                                "rl_sq_over_hbar"};
            csv.header(cols);
            const auto bath = newton::zero_bath(p);
            for (const double tau : grid_points(sc.grid)) {
                const double rn = newton::trajectory(p, bath, tau).norm_sq() / p.hbar;
                const double rq = quantum::centroid(p, tau).norm_sq() / p.hbar;
                const double rl = liouville::centroid(p, tau).norm_sq() / p.hbar;
                csv.row(std::array{tau, rn, rq, rl});
            }
            result.csv_files.push_back(path.string());
            break;
        }
        case Kind::fig2a:
        case Kind::fig2b: {
            const auto path = dir / (stem + ".csv");
            detail::CsvWriter csv(path);
            const std::vector<std::string> cols{
                "tau",           "var_q_quantum",   "var_p_quantum",   "mean_var_quantum",
                "var_q_liouville", "var_p_liouville", "mean_var_liouville"};
            csv.header(cols);
            for (const double tau : grid_points(sc.grid)) {
                const auto vq = quantum::variances(p, tau);
                const auto vl = liouville::variances(p, tau);
                csv.row(std::array{tau, vq.var_q / p.hbar, vq.var_p / p.hbar, vq.mean / p.hbar,
                                   vl.var_q / p.hbar, vl.var_p / p.hbar, vl.mean / p.hbar});
            }
            result.csv_files.push_back(path.string());
            break;
        }
        case Kind::fig3a:
        case Kind::fig3b:
        case Kind::fig3c: {
            const auto path = dir / (stem + ".csv");
            detail::CsvWriter csv(path);
            const std::vector<std::string> cols{"tau", "d_over_hbar", "delta_s_over_hbar"};
            csv.header(cols);
            const double delta_s_over_hbar = 0.5 * sc.resolution_m;
            for (const double tau : grid_points(sc.grid))
                csv.row(std::array{tau, timescales::divergence(p, tau) / p.hbar, delta_s_over_hbar});
            result.csv_files.push_back(path.string());
            break;
        }
        case Kind::timescales: {
            const auto path = dir / (stem + ".csv");
            detail::CsvWriter csv(path);
            const std::vector<std::string> cols{
                "tau_dq",        "tau_dl",          "tau_r",
                "tau_det_exact", "tau_det_expansion", "tau_det_closed",
                "temperature_ratio", "bound_satisfied", "resolution_m"};
            csv.header(cols);
            const auto r = timescales::report(p, sc.resolution_m);
            csv.row(std::array{r.tau_dq, r.tau_dl, r.tau_r, r.tau_det_exact, r.tau_det_expansion,
                               r.tau_det_closed, r.temperature_ratio,
                               r.bound_satisfied ? 1.0 : 0.0, r.resolution_m});
            result.csv_files.push_back(path.string());
            break;
        }
        case Kind::hbar_limit: {
            // Both branches are scanned: the closed gap |R_Q - R_N| and the
            // open-coupling attenuation floor.
            const std::array<double, 4> hbars{1.0, 0.1, 0.01, 0.001};
            const double t = from_tau(p, 0.2);
            ModelParams closed = p;
            closed.capital_omega = 0.0;
            closed.n_modes = 0;
            ModelParams open = p.capital_omega > 0.0 ? p : open_params(p.beta_hbar_omega);
            const auto closed_report = quantum::hbar_limit_check(closed, hbars, t);
            const auto open_report = quantum::hbar_limit_check(open, hbars, t);

            const auto path = dir / (stem + ".csv");
            detail::CsvWriter csv(path);
            const std::vector<std::string> cols{"hbar", "gap_over_r0_closed", "abs_c1_open"};
            csv.header(cols);
            for (std::size_t i = 0; i < hbars.size(); ++i)
                csv.row(std::array{hbars[i], closed_report.points[i].gap_over_r0,
                                   open_report.points[i].abs_c1});
            result.csv_files.push_back(path.string());

            oracle["hbar_limit"] = {
                {"fixed_time", t},
                {"gap_monotone_decreasing", closed_report.gap_monotone_decreasing},
                {"final_gap_over_r0", closed_report.final_gap_over_r0},
                {"abs_c1_final", open_report.c1_final},
                {"abs_c1_final_delta", open_report.c1_final_delta}};
            break;
        }
        case Kind::oracle_check: {
            // Fock-basis equivalence on tau in [0, 1].
            double fock_max_err = 0.0;
            const auto fock_path = dir / "oracle_fock.csv";
            {
                detail::CsvWriter csv(fock_path);
                const std::vector<std::string> cols{"tau",    "err_q",    "err_p",    "err_q_sq",
                                                    "err_p_sq", "err_var_q", "err_var_p"};
                csv.header(cols);
                for (int i = 1; i <= 10; ++i) {
                    const double tau = 0.1 * i;
                    const Moments closed_form = quantum::moments(p, tau);
                    const Moments oracle_m = oracles::fock_oracle_moments(p, tau);
                    const std::array<double, 6> err{
                        std::abs(closed_form.centroid.q - oracle_m.centroid.q),
                        std::abs(closed_form.centroid.p - oracle_m.centroid.p),
                        std::abs(closed_form.quadratic[0] - oracle_m.quadratic[0]),
                        std::abs(closed_form.quadratic[1] - oracle_m.quadratic[1]),
                        std::abs(closed_form.variances[0] - oracle_m.variances[0]),
                        std::abs(closed_form.variances[1] - oracle_m.variances[1])};
                    for (const double e : err) fock_max_err = std::max(fock_max_err, e);
                    csv.row(std::array{tau, err[0], err[1], err[2], err[3], err[4], err[5]});
                }
            }
            result.csv_files.push_back(fock_path.string());

            // Monte Carlo equivalence on the scenario grid.
            const auto taus = grid_points(sc.grid);
            oracles::MonteCarloConfig mc_cfg;
            mc_cfg.n_samples = sc.samples;
            mc_cfg.rng_seed = sc.seed;
            const auto mc = oracles::montecarlo_liouville_moments(p, taus, mc_cfg);
            double max_abs_z = 0.0;
            const auto mc_path = dir / "oracle_mc.csv";
            {
                detail::CsvWriter csv(mc_path);
                const std::vector<std::string> cols{"tau", "z_q", "z_p", "z_q_sq", "z_p_sq",
                                                    "z_var_q", "z_var_p"};
                csv.header(cols);
                for (const auto& point : mc) {
                    const Moments closed_form = liouville::moments(p, point.tau);
                    const auto zscore = [](double closed_v, const oracles::McEstimate& est) {
                        return est.std_error > 0.0 ? (est.value - closed_v) / est.std_error : 0.0;
                    };
                    const std::array<double, 6> zs{
                        zscore(closed_form.centroid.q, point.mean_q),
                        zscore(closed_form.centroid.p, point.mean_p),
                        zscore(closed_form.quadratic[0], point.q_sq),
                        zscore(closed_form.quadratic[1], point.p_sq),
                        zscore(closed_form.variances[0], point.var_q),
                        zscore(closed_form.variances[1], point.var_p)};
                    for (const double z : zs) max_abs_z = std::max(max_abs_z, std::abs(z));
                    csv.row(std::array{point.tau, zs[0], zs[1], zs[2], zs[3], zs[4], zs[5]});
                }
            }
            result.csv_files.push_back(mc_path.string());

            oracle["fock"] = {{"max_abs_error", fock_max_err},
                              {"tau_points", 10},
                              {"bath_truncation",
                               oracles::required_bath_truncation(p, 1e-12)}};
            oracle["montecarlo"] = {{"samples", sc.samples},
                                    {"seed", sc.seed},
                                    {"grid_points", taus.size()},
                                    {"max_abs_z", max_abs_z}};
            break;
        }
        case Kind::sweep: {
            const auto path = dir / (stem + ".csv");
            detail::CsvWriter csv(path);
            const std::vector<std::string> cols{
                "hbar",        "omega_s",        "g_s",           "omega_bath",
                "capital_omega", "n_modes",        "beta_hbar_omega", "q0",
                "p0",          "tau_dq",         "tau_dl",        "tau_r",
                "tau_det_exact", "tau_det_expansion", "tau_det_closed",
                "temperature_ratio", "bound_satisfied", "resolution_m"};
            csv.header(cols);
            for (const double beta : grid_points(sc.grid)) {
                ModelParams q = p;
                q.beta_hbar_omega = beta;
                const auto r = timescales::report(q, sc.resolution_m);
                csv.row(std::array{q.hbar, q.omega_s, q.g_s, q.omega_bath, q.capital_omega,
                                   static_cast<double>(q.n_modes), q.beta_hbar_omega, q.r0.q, q.r0.p,
                                   r.tau_dq, r.tau_dl, r.tau_r, r.tau_det_exact,
                                   r.tau_det_expansion, r.tau_det_closed, r.temperature_ratio,
                                   r.bound_satisfied ? 1.0 : 0.0, r.resolution_m});
            }
            result.csv_files.push_back(path.string());
            break;
        }
    }

    nlohmann::json report{{"params", params_to_json(p)},
                          {"derived", detail::derived_json(p, sc.resolution_m)},
                          {"oracle", oracle},
                          {"csv_files", result.csv_files}};
    const auto json_path = dir / (stem + ".json");
    detail::write_json(json_path, report);
    result.json_file = json_path.string();
    return result;
}

}  // namespace kerrdeco::scenario

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "csv.hpp"

namespace qie::cli {

namespace {

constexpr char kRunHeader[] =
    "dS,sigma,tau_circ,W_total,W_fb,W_wm,Q_h,Q_c,eta,P";
constexpr char kOptimizeHeader[] =
    "tau_h_star,tau_h_star_bruteforce,eta_star,eta_star_microscopic,p_star,"
    "tau_h_star_rel_discrepancy,eta_rel_discrepancy";
constexpr char kSweepHeader[] =
    "tau_fb_over_circ,tau_h_over_circ,power_over_pstar,eta,power";

/// Runs `body` with the standard error-to-exit-code mapping.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InfeasibleDurationError& e) {
        err << "error: infeasible configuration: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::ios_base::failure& e) {
        err << "error: I/O failure: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

/// Writes `text` to the path when set (exit-code-4 on failure), else to out.
int emit(const std::optional<std::string>& path, const std::string& text,
         std::ostream& out, std::ostream& err) {
    if (!path) {
        out << text;
        return kExitOk;
    }
    std::ofstream f(*path, std::ios::binary);
    if (!f) {
        err << "error: cannot open output path '" << *path << "'\n";
        return kExitIo;
    }
    f << text;
    f.flush();
    if (!f) {
        err << "error: failed writing output path '" << *path << "'\n";
        return kExitIo;
    }
    return kExitOk;
}

struct Phenomenology {
    double T_h, dS, sigma, tau_circ;
};

/// High-temperature constants of the configured engine; the Sigma/dS ratio
/// cancels to ln(omega3/omega4)/(4a) exactly.
Phenomenology phenomenology_of(const ScenarioConfig& cfg) {
    const auto spectrum = PolarizationSpectrum::qubit();
    const BathCoupling bath = cfg.bath();
    const double dS = entropy_change_highT_isothermal(cfg.beta_h, cfg.omega3,
                                                      cfg.omega4, spectrum);
    const double sigma = sigma_coefficient(cfg.omega3, cfg.omega4, bath);
    return {1.0 / cfg.beta_h, dS, sigma, dissipation_time(sigma, dS)};
}

}  // namespace

int cmd_run(const std::string& config_path, std::ostream& out,
            std::ostream& err) {
    return guarded(err, [&]() {
        const ScenarioConfig cfg = load_scenario_config(config_path);
        const CycleConfig cycle =
            derive_cycle(cfg.omega_fb, cfg.omega3, cfg.omega4, cfg.bath(),
                         cfg.tau_fb, resolved_tau_h(cfg));
        const CycleResult r = cfg.mode == CycleMode::Analytic
                                  ? run_cycle_analytic(cycle)
                                  : run_cycle_numeric(cycle, cfg.steps);

        std::vector<double> row{r.dS, r.sigma, r.tau_circ, r.W_total, r.W_fb,
                                r.W_wm, r.Q_h, r.Q_c, r.eta, r.P};
        std::string header = kRunHeader;
        if (r.mode == CycleMode::Numeric) {
            header += ",energy_closure,state_closure";
            row.push_back(r.energy_closure);
            row.push_back(r.state_closure);
        }
        return emit(cfg.output, header + "\n" + csv_row(row) + "\n", out, err);
    });
}

int cmd_optimize(const std::string& config_path, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&]() {
        const ScenarioConfig cfg = load_scenario_config(config_path);
        const auto ph = phenomenology_of(cfg);

        const double tau_star = optimal_hot_time(ph.tau_circ, cfg.tau_fb);
        const double eta_s = eta_star(ph.tau_circ, cfg.tau_fb);
        const double eta_micro =
            eta_star_microscopic(cfg.a, cfg.tau_fb, cfg.omega3, cfg.omega4);
        const double ps = p_star(ph.T_h, ph.dS, ph.tau_circ, cfg.tau_fb);

        const auto family =
            make_low_dissipation_family(ph.T_h, ph.dS, ph.sigma, cfg.tau_fb);
        const auto bf = brute_force_max_power(
            family, ph.tau_circ * (1.0 + 1e-7), 20.0 * tau_star);

        const double tau_disc =
            std::abs(bf.tau_h_star - tau_star) / tau_star;
        const double eta_disc = std::abs(bf.eta_star - eta_s) / eta_s;
        const std::vector<double> row{tau_star, bf.tau_h_star, eta_s,
                                      eta_micro, ps, tau_disc, eta_disc};
        return emit(cfg.output,
                    std::string(kOptimizeHeader) + "\n" + csv_row(row) + "\n",
                    out, err);
    });
}

int cmd_sweep(const std::string& config_path, const SweepOptions& options,
              std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() {
        const ScenarioConfig cfg = load_scenario_config(config_path);
        if (options.tau_fb_over_circ.empty())
            throw ConfigError("sweep: tau_fb list is empty");
        for (double r : options.tau_fb_over_circ)
            if (!(r >= 0.0) || !std::isfinite(r))
                throw ConfigError("sweep: tau_fb values must be >= 0");
        if (options.grid.points < 2 || !(options.grid.hi > options.grid.lo) ||
            !(options.grid.lo > 0.0))
            throw ConfigError("sweep: grid must be 0 < lo < hi with n >= 2");

        const auto ph = phenomenology_of(cfg);
        auto builder = [&](double tau_fb) {
            return make_low_dissipation_family(ph.T_h, ph.dS, ph.sigma, tau_fb);
        };
        const auto rows =
            sweep_power_curves(builder, ph.tau_circ, options.tau_fb_over_circ,
                               options.grid);

        std::string text = std::string(kSweepHeader) + "\n";
        for (const auto& r : rows) {
            const double vals[] = {r.tau_fb_over_circ, r.tau_h_over_circ,
                                   r.power_over_pstar, r.eta, r.power};
            text += csv_row(vals) + "\n";
        }
        const std::optional<std::string> dest =
            options.out_path ? options.out_path : cfg.output;
        return emit(dest, text, out, err);
    });
}

}  // namespace qie::cli

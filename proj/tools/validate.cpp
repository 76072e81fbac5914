#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "commands.hpp"
#include "qie/measurement.hpp"
#include "qie/ode.hpp"
#include "qie/qie.hpp"

namespace qie::cli {

namespace {

struct SuiteResult {
    bool pass;
    std::string detail;
};

struct Suite {
    std::string name;
    std::function<SuiteResult(bool inject_fault)> run;
};

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

double log_uniform(std::mt19937_64& g, double lo, double hi) {
    return std::exp(uniform(g, std::log(lo), std::log(hi)));
}

SuiteResult states_closed_forms(bool) {
    std::mt19937_64 g(101);
    const auto spec = PolarizationSpectrum::qubit();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double beta = log_uniform(g, 1e-3, 20.0);
        const double omega = log_uniform(g, 1e-2, 10.0);
        const ScaledHamiltonian H(omega, spec);
        const auto rho = thermal_state(beta, H);
        const double x = beta * omega;
        worst = std::max(worst, std::abs(entropy(rho) - qubit_entropy(x)));
        worst = std::max(worst,
                         std::abs(energy(rho, H) - qubit_energy(beta, omega)));
    }
    return {worst <= 1e-12,
            "thermal-state entropy/energy vs closed forms <= 1e-12 (worst = " +
                sci(worst) + ", n = 1000)"};
}

SuiteResult effective_beta_roundtrip(bool) {
    std::mt19937_64 g(102);
    const auto spec = PolarizationSpectrum::qubit();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double beta = log_uniform(g, 1e-4, 50.0);
        const double omega = log_uniform(g, 1e-3, 10.0) / beta;
        const ScaledHamiltonian H(omega, spec);
        const double pol = polarization_of(thermal_state(beta, H), spec);
        const double rt = effective_beta(pol, omega).value;
        worst = std::max(worst, std::abs(rt - beta) / beta);
    }
    return {worst <= 1e-10,
            "effective-beta round trip relative error <= 1e-10 (worst = " +
                sci(worst) + ", n = 1000)"};
}

SuiteResult highT_entropy_order(bool) {
    const auto spec = PolarizationSpectrum::qubit();
    double min_ratio = 1e300, prev = -1.0;
    for (double x : {0.2, 0.1, 0.05, 0.025}) {
        const double err = std::abs(entropy_highT(x, 1.0, spec) - qubit_entropy(x));
        if (prev > 0.0) min_ratio = std::min(min_ratio, prev / err);
        prev = err;
    }
    return {min_ratio >= 8.0,
            "high-T entropy error falls >= 8x per halving of beta*omega "
            "(worst ratio = " + sci(min_ratio) + ")"};
}

SuiteResult cptp_completeness(bool inject_fault) {
    std::mt19937_64 g(103);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double beta_b = log_uniform(g, 0.05, 3.0);
        const double beta_a = beta_b * (1.0 + uniform(g, 1e-3, 3.0));
        const double omega = log_uniform(g, 0.1, 3.0);
        auto meas = build_measurement(beta_b, beta_a, omega);
        if (inject_fault && i == 500) {
            auto ops = meas.kraus_ops();
            ops[0](1, 1) += 1e-6;
            meas = GeneralizedMeasurement(std::move(ops), meas.context());
        }
        worst = std::max(worst, completeness_defect(meas));
    }
    return {worst <= 1e-12, "completeness defect <= 1e-12 (worst = " +
                                sci(worst) + ", n = 1000)"};
}

SuiteResult measurement_reversibility(bool) {
    std::mt19937_64 g(104);
    const auto spec = PolarizationSpectrum::qubit();
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double beta_b = log_uniform(g, 0.05, 3.0);
        const double beta_a = beta_b * (1.0 + uniform(g, 1e-3, 3.0));
        const double omega = log_uniform(g, 0.1, 3.0);
        const ScaledHamiltonian H(omega, spec);
        const auto meas = build_measurement(beta_b, beta_a, omega);
        const auto rho_before = thermal_state(beta_b, H);
        const auto rho_after = thermal_state(beta_a, H);
        const auto records = apply_measurement(meas, rho_before, H);

        worst = std::max(worst, records[0].post_state.max_distance(rho_after));
        worst = std::max(worst,
                         records[1].post_state.max_distance(spin_flip(rho_after)));

        double avg_e = 0.0, avg_s = 0.0;
        for (const auto& r : records) {
            avg_e += r.probability * r.post_energy;
            avg_s += r.probability * r.post_entropy;
        }
        worst = std::max(worst, std::abs(avg_e - energy(rho_before, H)));
        worst = std::max(worst, std::abs(avg_s - entropy(rho_after)));

        const auto stats = measurement_statistics(meas, rho_before, H);
        const double expect = energy(rho_before, H) - energy(rho_after, H);
        worst = std::max(worst, std::abs(stats.avg_feedback_work - expect));
    }
    return {worst <= 1e-12,
            "post-states, <dE_meas> = 0 and <W_fb> = E_b - E_a hold to 1e-12 "
            "(worst = " + sci(worst) + ", n = 500)"};
}

SuiteResult master_equation(bool) {
    std::mt19937_64 g(105);
    double worst_stat = 0.0;
    for (double omega : {0.02, 0.5, 1.0, 3.0, 10.0}) {
        const BathCoupling bath(0.25, -0.5, 0.5);
        const double p_eq = equilibrium_polarization(bath.beta_h, omega);
        worst_stat = std::max(worst_stat,
                              std::abs(polarization_rate(p_eq, omega, bath)));
    }
    double worst_relax = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double p0 = uniform(g, -0.5, 0.5);
        const double omega = log_uniform(g, 0.1, 3.0);
        const BathCoupling bath(log_uniform(g, 0.05, 1.0),
                                uniform(g, -0.9, -0.1),
                                log_uniform(g, 0.1, 2.0));
        const double t = log_uniform(g, 0.01, 20.0);
        const auto y = integrate_adaptive<1>(
            [&](double, const std::array<double, 1>& s,
                std::array<double, 1>& d) {
                d[0] = polarization_rate(s[0], omega, bath);
            },
            {p0}, 0.0, t);
        worst_relax = std::max(
            worst_relax, std::abs(relax_constant_omega(p0, omega, bath, t) - y[0]));
    }
    const bool pass = worst_stat <= 1e-15 && worst_relax <= 1e-9;
    return {pass, "stationary residual <= 1e-15 (worst = " + sci(worst_stat) +
                      "), closed-form relaxation vs integration <= 1e-9 "
                      "(worst = " + sci(worst_relax) + ")"};
}

SuiteResult schedule_convergence(bool) {
    const double w3 = 1.0, w4 = std::exp(-1.0);
    double prev = 1.0;
    bool monotone = true;
    double at_001 = 1.0;
    for (double bw : {0.1, 0.03, 0.01, 0.003}) {
        const BathCoupling bath(0.25, -0.3, bw / w3);
        const IsothermSpec spec(w3, w4, 2.0 * bath.beta_h);
        const double closed = isotherm_duration_highT(spec, bath);
        const double rel =
            std::abs(FrequencySchedule(spec, bath).duration() - closed) / closed;
        if (rel >= prev) monotone = false;
        if (bw == 0.01) at_001 = rel;
        prev = rel;
    }
    return {monotone && at_001 < 0.01,
            "quadrature vs closed-form duration: error " + sci(at_001) +
                " at beta_h*omega3 = 0.01, decreasing monotonically"};
}

SuiteResult cycle_ledger(bool) {
    const BathCoupling bath(0.25, -0.3, 0.005);
    const double tau_circ = std::log(2.0) / (4.0 * bath.a);
    const auto cfg = derive_cycle(1.0, 2.0, 1.0, bath, 0.5, 2.0 * tau_circ);
    const auto num = run_cycle_numeric(cfg, 300);
    const auto ana = run_cycle_analytic(cfg);

    double worst = std::max(num.state_closure, num.energy_closure);
    worst = std::max(worst, std::abs(num.Q_c + num.W_fb));
    const bool bound = num.W_total < num.dS / bath.beta_h;
    const double agree = std::abs(num.W_total - ana.W_total) / ana.W_total;
    const bool pass = worst <= 1e-9 && bound && agree <= 0.01;
    return {pass, "numeric cycle closure/cancellation <= 1e-9 (worst = " +
                      sci(worst) + "), W < T_h dS, analytic agreement " +
                      sci(agree)};
}

SuiteResult optimizer_identities(bool) {
    std::mt19937_64 g(106);
    double worst_tau = 0.0, worst_eta = 0.0, worst_id = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double tc = log_uniform(g, 0.1, 10.0);
        const double tf = tc * log_uniform(g, 1e-2, 100.0);
        const auto family = make_low_dissipation_family(1.0, 1.0, tc, tf);
        const double ts = optimal_hot_time(tc, tf);
        const auto bf =
            brute_force_max_power(family, tc * (1.0 + 1e-7), 20.0 * ts);
        worst_tau = std::max(worst_tau, std::abs(bf.tau_h_star - ts) / ts);
        worst_eta = std::max(worst_eta,
                             std::abs(bf.eta_star - eta_star(tc, tf)));
        worst_id = std::max(worst_id,
                            std::abs(eta_star(tc, tf) - (1.0 - tc / ts)));
    }
    for (int i = 0; i < 200; ++i) {
        const double a = log_uniform(g, 0.01, 10.0);
        const double tf = uniform(g, 0.0, 10.0);
        const double w4 = log_uniform(g, 0.1, 2.0);
        const double w3 = w4 * log_uniform(g, 1.001, 100.0);
        const double tc = std::log(w3 / w4) / (4.0 * a);
        worst_id = std::max(worst_id, std::abs(eta_star_microscopic(a, tf, w3, w4) -
                                               eta_star(tc, tf)));
    }
    const bool pass = worst_tau <= 1e-6 && worst_eta <= 1e-9 && worst_id <= 1e-14;
    return {pass,
            "optimal-time cross-check residual " + sci(worst_tau) +
                " (gate 1e-6), eta-at-optimum residual " + sci(worst_eta) +
                " (gate 1e-9), closed-form identities " + sci(worst_id) +
                " (gate 1e-14)"};
}

}  // namespace

int cmd_validate(const ValidateOptions& options, std::ostream& out,
                 std::ostream& err) {
    const std::vector<Suite> suites = {
        {"states-closed-forms", states_closed_forms},
        {"effective-beta-roundtrip", effective_beta_roundtrip},
        {"highT-entropy-order", highT_entropy_order},
        {"cptp-completeness", cptp_completeness},
        {"measurement-reversibility", measurement_reversibility},
        {"master-equation", master_equation},
        {"schedule-convergence", schedule_convergence},
        {"cycle-ledger", cycle_ledger},
        {"optimizer-identities", optimizer_identities},
    };

    if (options.inject_fault && *options.inject_fault != "cptp") {
        err << "error: unknown fault target '" << *options.inject_fault
            << "' (supported: cptp)\n";
        return kExitConfig;
    }

    std::vector<std::string> failed;
    for (const auto& suite : suites) {
        const bool fault =
            options.inject_fault && *options.inject_fault == "cptp" &&
            suite.name == "cptp-completeness";
        SuiteResult r{false, ""};
        try {
            r = suite.run(fault);
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        out << (r.pass ? "PASS " : "FAIL ") << suite.name << ": " << r.detail
            << "\n";
        if (!r.pass) failed.push_back(suite.name);
    }
    if (failed.empty()) {
        out << "all " << suites.size() << " suites passed\n";
        return kExitOk;
    }
    err << "validation failed:";
    for (const auto& name : failed) err << ' ' << name;
    err << "\n";
    return kExitValidation;
}

}  // namespace qie::cli

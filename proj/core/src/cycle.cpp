#include "qie/cycle.hpp"

#include <cmath>

#include "qie/measurement.hpp"

namespace qie {

CycleConfig derive_cycle(double omega_fb, double omega3, double omega4,
                         const BathCoupling& bath, double tau_fb,
                         double tau_h) {
    if (!(omega_fb > 0.0) || !std::isfinite(omega_fb))
        throw InvalidParameterError("omega_fb must be positive");
    if (!(omega4 > 0.0) || !(omega3 > omega4))
        throw InvalidParameterError("need omega3 > omega4 > 0");
    if (!(tau_fb >= 0.0) || !std::isfinite(tau_fb))
        throw InvalidParameterError("tau_fb must be >= 0");

    const double beta_prime = beta_prime_for_duration(omega3, omega4, bath, tau_h);
    const double tau_circ = std::log(omega3 / omega4) / (4.0 * bath.a);
    return CycleConfig{omega_fb,
                       omega3,
                       omega4,
                       bath,
                       tau_fb,
                       tau_h,
                       tau_circ,
                       beta_prime,
                       beta_prime * omega4 / omega_fb,
                       beta_prime * omega3 / omega_fb};
}

CycleResult run_cycle_analytic(const CycleConfig& c) {
    const double T_h = 1.0 / c.bath.beta_h;
    const double x_before = c.beta_b * c.omega_fb;  // = beta' omega4
    const double x_after = c.beta_a * c.omega_fb;   // = beta' omega3

    CycleResult r{};
    r.mode = CycleMode::Analytic;
    r.tau_circ = c.tau_circ;
    r.dS = qubit_entropy(x_before) - qubit_entropy(x_after);
    r.sigma = r.dS * c.tau_circ;
    r.W_total = T_h * (r.dS - r.sigma / c.tau_h);
    // = 1 - sigma/(dS tau_h), written so the dS -> 0 boundary stays finite
    r.eta = 1.0 - c.tau_circ / c.tau_h;
    r.P = r.W_total / (c.tau_h + c.tau_fb);
    r.W_fb = qubit_energy(c.beta_b, c.omega_fb) - qubit_energy(c.beta_a, c.omega_fb);
    r.Q_c = -r.W_fb;
    r.Q_h = r.W_total;
    r.W_wm = r.W_total - r.W_fb;
    return r;
}

CycleResult run_cycle_numeric(const CycleConfig& c, int steps) {
    const double T_h = 1.0 / c.bath.beta_h;
    const auto spectrum = PolarizationSpectrum::qubit();
    const ScaledHamiltonian H_fb(c.omega_fb, spectrum);

    // (1-2) measurement + feedback at omega_fb.
    const DensityMatrix rho_before = thermal_state(c.beta_b, H_fb);
    const DensityMatrix rho_after = thermal_state(c.beta_a, H_fb);
    const auto meas = build_measurement(c.beta_b, c.beta_a, c.omega_fb);
    const auto stats = measurement_statistics(meas, rho_before, H_fb);
    const double e_before = energy(rho_before, H_fb);
    const double e_after = energy(rho_after, H_fb);
    const double W_fb = stats.avg_feedback_work;
    const double Q_c = e_after - e_before;

    // (2-3) instantaneous adiabat omega_fb -> omega3, populations frozen.
    const double pol_23 = polarization_of(rho_after, spectrum);
    const double W_23 = pol_23 * (c.omega_fb - c.omega3);

    // (3-4) hot isotherm.
    const IsothermSpec spec(c.omega3, c.omega4, c.beta_prime);
    const Trajectory traj = simulate_isotherm(spec, c.bath, steps);
    const double duration = traj.samples.back().t;
    const double pol_end = traj.samples.back().polarization;

    // (4-1) instantaneous adiabat omega4 -> omega_fb.
    const double W_41 = pol_end * (c.omega4 - c.omega_fb);

    CycleResult r{};
    r.mode = CycleMode::Numeric;
    r.tau_circ = c.tau_circ;
    r.tau_h_effective = duration;
    r.W_fb = W_fb;
    r.Q_c = Q_c;
    r.Q_h = traj.heat_absorbed;
    r.W_wm = W_23 + traj.work_output + W_41;
    r.W_total = r.W_fb + r.W_wm;

    // Entropy change along the isotherm from the simulated endpoint states.
    const DensityMatrix rho_start = DensityMatrix::qubit_from_polarization(
        traj.samples.front().polarization, 1e-9);
    const DensityMatrix rho_end =
        DensityMatrix::qubit_from_polarization(pol_end, 1e-9);
    r.dS = entropy(rho_end) - entropy(rho_start);
    r.sigma = (r.dS - c.bath.beta_h * r.Q_h) * duration;
    r.eta = r.W_total / (T_h * r.dS);
    r.P = r.W_total / (duration + c.tau_fb);

    r.energy_closure = std::abs(r.Q_h + r.Q_c - r.W_wm);
    r.state_closure =
        std::abs(pol_end - polarization_of(rho_before, spectrum));
    return r;
}

}  // namespace qie

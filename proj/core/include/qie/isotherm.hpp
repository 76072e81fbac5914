#pragma once

// Dissipative polarization dynamics on the hot isotherm: detailed-balance
// relaxation of a qubit, the endoreversible frequency schedule that keeps the
// effective temperature constant, its high-temperature closed forms, and the
// entropy-production coefficient.
//
// Sign conventions (used everywhere): work_output > 0 means energy delivered
// by the medium; heat_absorbed > 0 means energy received from the bath.

#include <functional>
#include <vector>

#include "qie/errors.hpp"
#include "qie/states.hpp"

namespace qie {

/// Detailed-balance bath rates gamma_+ = a e^{q beta_h omega},
/// gamma_- = a e^{(1+q) beta_h omega}, so gamma_-/gamma_+ = e^{beta_h omega}.
struct BathCoupling {
    double a;       // rate magnitude, > 0
    double q;       // exponent split, -1 < q < 0
    double beta_h;  // hot-bath inverse temperature, > 0

    BathCoupling(double a_, double q_, double beta_h_);

    double gamma_plus(double omega) const;
    double gamma_minus(double omega) const;
};

/// Hot-isotherm stroke: frequency runs from omega_start down to omega_end at
/// constant effective inverse temperature beta_prime (> bath beta_h, checked
/// where the bath is known).
struct IsothermSpec {
    double omega_start;  // omega_3
    double omega_end;    // omega_4, 0 < omega_end < omega_start
    double beta_prime;

    IsothermSpec(double omega_start_, double omega_end_, double beta_prime_);
};

/// d<P>/dt of the polarization master equation,
///   -a e^{q z} [2(1+e^z)<P> + (e^z - 1)],  z = beta_h omega,
/// evaluated in the algebraically identical factored form
///   -a e^{q z} (1+e^z) (2<P> + tanh(z/2)),
/// which vanishes identically at the stationary point.
double polarization_rate(double polarization, double omega,
                         const BathCoupling& bath);

/// Stationary polarization -tanh(beta omega / 2)/2.
double equilibrium_polarization(double beta, double omega);

/// Closed-form relaxation at fixed frequency:
/// P(t) = P_eq + (P0 - P_eq) e^{-Gamma t},
/// Gamma = 2 a e^{q z} (1 + e^z).
double relax_constant_omega(double p0, double omega, const BathCoupling& bath,
                            double t);

/// Frequency schedule omega(t) along which the relaxation keeps the effective
/// inverse temperature at beta_prime. t(omega) is tabulated by adaptive
/// quadrature of the exact integrand
///   t = (1/2a) int [e^{q eps x} (e^x - e^{eps x}) (1 + e^{-x})]^{-1} dx,
/// x = beta' omega, eps = beta_h/beta', and inverted by monotone cubic
/// Hermite interpolation with analytic slopes.
class FrequencySchedule {
public:
    FrequencySchedule(const IsothermSpec& spec, const BathCoupling& bath,
                      int table_size = 512);

    double duration() const { return t_.back(); }
    double omega_at(double t) const;
    double domega_dt(double t) const;
    /// Inverse lookup by quadrature table (omega in [omega_end, omega_start]).
    double time_of_omega(double omega) const;

    const IsothermSpec& spec() const { return spec_; }

private:
    int segment_of(double t) const;

    IsothermSpec spec_;
    std::vector<double> t_;      // ascending, t_[0] = 0
    std::vector<double> omega_;  // descending, omega_[0] = omega_start
    std::vector<double> slope_;  // domega/dt at the nodes (exact, < 0)
};

/// Closed-form duration in the high-temperature limit,
/// tau_h = ln(omega_start/omega_end) / (4 a (1 - beta_h/beta')).
double isotherm_duration_highT(const IsothermSpec& spec,
                               const BathCoupling& bath);

/// Inverts the high-temperature duration formula:
/// beta' = beta_h / (1 - ln(omega3/omega4)/(4 a tau_h)). Requires
/// tau_h > ln(omega3/omega4)/(4a), the zero-work boundary.
double beta_prime_for_duration(double omega3, double omega4,
                               const BathCoupling& bath, double tau_h);

struct TrajectorySample {
    double t;
    double omega;
    double polarization;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double heat_absorbed;  // int omega dP
    double work_output;    // -int P domega
};

/// Integrates the master equation along the schedule, starting from the
/// equilibrium polarization at beta' omega_start, and accumulates heat and
/// work. `steps` sets the number of recorded samples (>= 100); the
/// integration itself is adaptive (rel 1e-10, abs 1e-12).
Trajectory simulate_isotherm(const IsothermSpec& spec, const BathCoupling& bath,
                             int steps);

/// Entropy-production coefficient for the qubit in the high-temperature
/// limit: Sigma = (beta_h^2/8)(omega3^2 - omega4^2) ln(omega3/omega4)/(4a).
double sigma_coefficient(double omega3, double omega4,
                         const BathCoupling& bath);

/// High-temperature entropy changes, sign convention dS = S(end) - S(start)
/// (entropy rises when beta*omega falls).
double entropy_change_highT_isochoric(double omega, double beta_start,
                                      double beta_end,
                                      const PolarizationSpectrum& spectrum);
double entropy_change_highT_isothermal(double beta, double omega_start,
                                       double omega_end,
                                       const PolarizationSpectrum& spectrum);

}  // namespace qie

#include "qie/isotherm.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

#include "qie/ode.hpp"

namespace qie {

BathCoupling::BathCoupling(double a_, double q_, double beta_h_)
    : a(a_), q(q_), beta_h(beta_h_) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw InvalidParameterError("bath: a must be positive");
    if (!(q > -1.0 && q < 0.0))
        throw InvalidParameterError("bath: q must lie in (-1, 0)");
    if (!(beta_h > 0.0) || !std::isfinite(beta_h))
        throw InvalidParameterError("bath: beta_h must be positive");
}

double BathCoupling::gamma_plus(double omega) const {
    return a * std::exp(q * beta_h * omega);
}

double BathCoupling::gamma_minus(double omega) const {
    return a * std::exp((1.0 + q) * beta_h * omega);
}

IsothermSpec::IsothermSpec(double omega_start_, double omega_end_,
                           double beta_prime_)
    : omega_start(omega_start_), omega_end(omega_end_), beta_prime(beta_prime_) {
    if (!(omega_end > 0.0) || !(omega_start > omega_end))
        throw InvalidParameterError(
            "isotherm requires omega_start > omega_end > 0");
    if (!(beta_prime > 0.0) || !std::isfinite(beta_prime))
        throw InvalidParameterError("beta_prime must be positive");
}

double polarization_rate(double polarization, double omega,
                         const BathCoupling& bath) {
    const double z = bath.beta_h * omega;
    return -bath.a * std::exp(bath.q * z) * (1.0 + std::exp(z)) *
           (2.0 * polarization + std::tanh(z / 2.0));
}

double equilibrium_polarization(double beta, double omega) {
    return qubit_polarization(beta * omega);
}

double relax_constant_omega(double p0, double omega, const BathCoupling& bath,
                            double t) {
    if (t < 0.0) throw InvalidParameterError("relaxation time must be >= 0");
    const double z = bath.beta_h * omega;
    const double p_eq = equilibrium_polarization(bath.beta_h, omega);
    const double gamma = 2.0 * bath.a * std::exp(bath.q * z) * (1.0 + std::exp(z));
    return p_eq + (p0 - p_eq) * std::exp(-gamma * t);
}

namespace {

// Positive integrand for t(omega) when integrating x downward from
// beta' omega_start: 1 / [e^{q eps x} (e^x - e^{eps x}) (1 + e^{-x})].
double schedule_integrand(double x, double eps, double q) {
    return 1.0 / (std::exp(q * eps * x) * (std::exp(x) - std::exp(eps * x)) *
                  (1.0 + std::exp(-x)));
}

void require_feasible(const IsothermSpec& spec, const BathCoupling& bath) {
    if (!(spec.beta_prime > bath.beta_h))
        throw InvalidParameterError(
            "beta_prime must exceed beta_h for heat to flow in");
}

}  // namespace

FrequencySchedule::FrequencySchedule(const IsothermSpec& spec,
                                     const BathCoupling& bath, int table_size)
    : spec_(spec) {
    require_feasible(spec, bath);
    if (table_size < 16)
        throw InvalidParameterError("schedule table too coarse");

    const double eps = bath.beta_h / spec.beta_prime;
    const double q = bath.q;
    const double bp = spec.beta_prime;
    const int m = table_size;

    omega_.resize(m + 1);
    t_.resize(m + 1);
    slope_.resize(m + 1);
    const double lr = std::log(spec.omega_end / spec.omega_start) / m;
    for (int i = 0; i <= m; ++i)
        omega_[i] = spec.omega_start * std::exp(lr * i);
    omega_.front() = spec.omega_start;
    omega_.back() = spec.omega_end;

    // Composite Gauss-Kronrod: the integrand is smooth and the nodes are
    // log-uniform, so one K15 panel per segment is already at machine
    // accuracy (the adaptive error estimate is pessimistic here because of
    // cancellation in e^x - e^{eps x} and only burns time subdividing).
    using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
    auto f = [eps, q](double x) { return schedule_integrand(x, eps, q); };
    t_[0] = 0.0;
    for (int i = 0; i < m; ++i) {
        const double seg =
            gk::integrate(f, bp * omega_[i + 1], bp * omega_[i], 0);
        t_[i + 1] = t_[i] + seg / (2.0 * bath.a);
    }
    for (int i = 0; i <= m; ++i)
        slope_[i] = -2.0 * bath.a / (bp * f(bp * omega_[i]));
}

int FrequencySchedule::segment_of(double t) const {
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    int i = static_cast<int>(it - t_.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(t_.size()) - 2);
}

double FrequencySchedule::omega_at(double t) const {
    t = std::clamp(t, 0.0, duration());
    const int i = segment_of(t);
    const double h = t_[i + 1] - t_[i];
    const double s = (t - t_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * omega_[i] + (s3 - 2 * s2 + s) * h * slope_[i] +
           (-2 * s3 + 3 * s2) * omega_[i + 1] + (s3 - s2) * h * slope_[i + 1];
}

double FrequencySchedule::domega_dt(double t) const {
    t = std::clamp(t, 0.0, duration());
    const int i = segment_of(t);
    const double h = t_[i + 1] - t_[i];
    const double s = (t - t_[i]) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * omega_[i] + (3 * s2 - 4 * s + 1) * h * slope_[i] +
            (-6 * s2 + 6 * s) * omega_[i + 1] + (3 * s2 - 2 * s) * h * slope_[i + 1]) /
           h;
}

double FrequencySchedule::time_of_omega(double omega) const {
    omega = std::clamp(omega, spec_.omega_end, spec_.omega_start);
    // omega_ is descending; find the bracketing segment.
    const auto it = std::lower_bound(omega_.begin(), omega_.end(), omega,
                                     std::greater<double>());
    int i = static_cast<int>(it - omega_.begin()) - 1;
    i = std::clamp(i, 0, static_cast<int>(omega_.size()) - 2);
    // Hermite interpolation of t(omega) with slopes 1/slope_.
    const double h = omega_[i + 1] - omega_[i];
    const double s = (omega - omega_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * t_[i] + (s3 - 2 * s2 + s) * h / slope_[i] +
           (-2 * s3 + 3 * s2) * t_[i + 1] + (s3 - s2) * h / slope_[i + 1];
}

double isotherm_duration_highT(const IsothermSpec& spec,
                               const BathCoupling& bath) {
    require_feasible(spec, bath);
    return std::log(spec.omega_start / spec.omega_end) /
           (4.0 * bath.a * (1.0 - bath.beta_h / spec.beta_prime));
}

double beta_prime_for_duration(double omega3, double omega4,
                               const BathCoupling& bath, double tau_h) {
    if (!(omega4 > 0.0) || !(omega3 > omega4))
        throw InvalidParameterError("need omega3 > omega4 > 0");
    const double tau_circ = std::log(omega3 / omega4) / (4.0 * bath.a);
    if (!(tau_h > tau_circ))
        throw InfeasibleDurationError(
            "tau_h must exceed the dissipation time ln(omega3/omega4)/(4a)");
    return bath.beta_h / (1.0 - tau_circ / tau_h);
}

Trajectory simulate_isotherm(const IsothermSpec& spec, const BathCoupling& bath,
                             int steps) {
    if (steps < 100)
        throw InvalidParameterError("simulate_isotherm needs steps >= 100");
    const FrequencySchedule sched(spec, bath);
    const double duration = sched.duration();

    // y = [P, W, Q]: dP/dt from the master equation along the schedule,
    // dW/dt = -P domega/dt, dQ/dt = omega dP/dt.
    auto rhs = [&](double t, const std::array<double, 3>& y,
                   std::array<double, 3>& dydt) {
        const double w = sched.omega_at(t);
        const double wdot = sched.domega_dt(t);
        const double r = polarization_rate(y[0], w, bath);
        dydt[0] = r;
        dydt[1] = -y[0] * wdot;
        dydt[2] = w * r;
    };

    Trajectory traj;
    traj.samples.reserve(steps + 1);
    std::array<double, 3> y{
        equilibrium_polarization(spec.beta_prime, spec.omega_start), 0.0, 0.0};
    traj.samples.push_back({0.0, spec.omega_start, y[0]});
    for (int k = 1; k <= steps; ++k) {
        const double t0 = duration * (k - 1) / steps;
        const double t1 = duration * k / steps;
        y = integrate_adaptive<3>(rhs, y, t0, t1);
        traj.samples.push_back({t1, sched.omega_at(t1), y[0]});
    }
    traj.work_output = y[1];
    traj.heat_absorbed = y[2];
    return traj;
}

double sigma_coefficient(double omega3, double omega4,
                         const BathCoupling& bath) {
    if (!(omega4 > 0.0) || !(omega3 >= omega4))
        throw InvalidParameterError("need omega3 >= omega4 > 0");
    const double b2 = bath.beta_h * bath.beta_h;
    return (b2 / 8.0) * (omega3 * omega3 - omega4 * omega4) *
           std::log(omega3 / omega4) / (4.0 * bath.a);
}

double entropy_change_highT_isochoric(double omega, double beta_start,
                                      double beta_end,
                                      const PolarizationSpectrum& spectrum) {
    const double n = spectrum.dim();
    return (omega * omega * spectrum.chi() / n) *
           (beta_start * beta_start - beta_end * beta_end);
}

double entropy_change_highT_isothermal(double beta, double omega_start,
                                       double omega_end,
                                       const PolarizationSpectrum& spectrum) {
    const double n = spectrum.dim();
    return (beta * beta * spectrum.chi() / n) *
           (omega_start * omega_start - omega_end * omega_end);
}

}  // namespace qie

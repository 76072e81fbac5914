#pragma once

// Power maximization over the hot-isotherm duration: closed forms for the
// optimal time, the efficiency at maximum power and the maximum power, an
// independent golden-section maximizer, and sweep tables for power curves.

#include <functional>
#include <span>
#include <vector>

#include "qie/cycle.hpp"

namespace qie {

/// tau_circ = Sigma/dS. Fed the high-temperature Appendix forms of Sigma and
/// dS this reduces to ln(omega3/omega4)/(4a) by exact cancellation.
double dissipation_time(double sigma, double dS);

/// tau_h* = tau_circ (1 + sqrt(1 + tau_fb/tau_circ)).
double optimal_hot_time(double tau_circ, double tau_fb);

/// eta* = 1 - 1/(1 + sqrt(1 + tau_fb/tau_circ)) = 1 - tau_circ/tau_h*.
/// Exactly 1/2 at tau_fb = 0, approaching 1 as tau_fb -> infinity.
double eta_star(double tau_circ, double tau_fb);

/// eta* = 1 - 1/(1 + sqrt(1 + 4 a tau_fb / ln(omega3/omega4))): the
/// dissipation time expressed through the bath coupling and the isotherm
/// endpoint frequencies.
double eta_star_microscopic(double a, double tau_fb, double omega3,
                            double omega4);

/// P* = eta* T_h dS / (tau_h* + tau_fb); the optimal work is eta* T_h dS.
double p_star(double T_h, double dS, double tau_circ, double tau_fb);

/// A one-parameter cycle family tau_h -> CycleResult.
using CycleFamily = std::function<CycleResult(double tau_h)>;

/// Low-dissipation power curve with fixed dS and Sigma:
/// W(tau) = T_h (dS - Sigma/tau), P = W/(tau + tau_fb),
/// eta = 1 - Sigma/(dS tau). The feedback split is not modeled (W_fb = 0).
CycleFamily make_low_dissipation_family(double T_h, double dS, double sigma,
                                        double tau_fb);

/// Microscopic family: each call derives and evaluates the closed-form cycle
/// at the given tau_h. Note that the effective temperature, and with it dS,
/// shifts as tau_h changes, so this curve is not the fixed-constant power
/// curve above.
CycleFamily make_analytic_family(double omega_fb, double omega3, double omega4,
                                 const BathCoupling& bath, double tau_fb);

/// Low-dissipation power curve whose dS and Sigma are *measured* from one
/// full simulation of the cycle at reference_tau_h (holding the cycle's
/// state points fixed while the hot time varies, as the optimization
/// requires; re-deriving the cycle at every tau_h would move dS with the
/// effective temperature and destroy the interior maximum).
CycleFamily make_numeric_family(double omega_fb, double omega3, double omega4,
                                const BathCoupling& bath, double tau_fb,
                                double reference_tau_h, int steps = 400);

struct OptimizationReport {
    double tau_h_star;
    double tau_circ;
    double eta_star;
    double p_star;
    enum class Method { Analytic, GoldenSection } method;
};

/// Closed-form report from the fixed-constant curve.
OptimizationReport optimize_power_analytic(double T_h, double dS,
                                           double tau_circ, double tau_fb);

/// Golden-section maximization of family(tau).P on (tau_lo, tau_hi),
/// converging to rel_tol on tau. Requires the bracket to enclose a unimodal
/// interior maximum; a bracket whose power rises toward both ends (interior
/// minimum) or whose maximum sits on a boundary is rejected.
OptimizationReport brute_force_max_power(const CycleFamily& family,
                                         double tau_lo, double tau_hi,
                                         double rel_tol = 1e-9);

struct SweepRow {
    double tau_fb_over_circ;
    double tau_h_over_circ;
    double power_over_pstar;
    double eta;
    double power;
    bool feasible;
};

struct SweepGrid {
    double lo = 1.02;  // tau_h / tau_circ
    double hi = 20.0;
    int points = 400;
};

/// Power curves for several feedback times. For each tau_fb the closed-form
/// optimum tau_h* is inserted into the grid so the normalized curve peaks at
/// exactly 1. Rows are ordered tau_fb outer, tau_h inner, both ascending.
/// Grid points at or below tau_circ are flagged infeasible.
std::vector<SweepRow> sweep_power_curves(
    const std::function<CycleFamily(double tau_fb)>& family_for_tau_fb,
    double tau_circ, std::span<const double> tau_fb_over_circ,
    const SweepGrid& grid = {});

}  // namespace qie

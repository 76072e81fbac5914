#include "qie/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qie {

double dissipation_time(double sigma, double dS) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw InvalidParameterError("sigma must be >= 0");
    if (!(dS > 0.0) || !std::isfinite(dS))
        throw InvalidParameterError("dS must be positive");
    return sigma / dS;
}

double optimal_hot_time(double tau_circ, double tau_fb) {
    if (!(tau_circ > 0.0)) throw InvalidParameterError("tau_circ must be positive");
    if (!(tau_fb >= 0.0)) throw InvalidParameterError("tau_fb must be >= 0");
    return tau_circ * (1.0 + std::sqrt(1.0 + tau_fb / tau_circ));
}

double eta_star(double tau_circ, double tau_fb) {
    if (!(tau_circ > 0.0)) throw InvalidParameterError("tau_circ must be positive");
    if (!(tau_fb >= 0.0)) throw InvalidParameterError("tau_fb must be >= 0");
    return 1.0 - 1.0 / (1.0 + std::sqrt(1.0 + tau_fb / tau_circ));
}

double eta_star_microscopic(double a, double tau_fb, double omega3,
                            double omega4) {
    if (!(a > 0.0)) throw InvalidParameterError("a must be positive");
    if (!(tau_fb >= 0.0)) throw InvalidParameterError("tau_fb must be >= 0");
    if (!(omega4 > 0.0) || !(omega3 > omega4))
        throw InvalidParameterError("need omega3 > omega4 > 0");
    return 1.0 -
           1.0 / (1.0 + std::sqrt(1.0 + 4.0 * a * tau_fb /
                                            std::log(omega3 / omega4)));
}

double p_star(double T_h, double dS, double tau_circ, double tau_fb) {
    if (!(T_h > 0.0) || !(dS > 0.0))
        throw InvalidParameterError("T_h and dS must be positive");
    return eta_star(tau_circ, tau_fb) * T_h * dS /
           (optimal_hot_time(tau_circ, tau_fb) + tau_fb);
}

CycleFamily make_low_dissipation_family(double T_h, double dS, double sigma,
                                        double tau_fb) {
    if (!(T_h > 0.0) || !(dS > 0.0) || !(sigma > 0.0) || !(tau_fb >= 0.0))
        throw InvalidParameterError("low-dissipation family parameters invalid");
    return [=](double tau_h) {
        CycleResult r{};
        r.mode = CycleMode::Analytic;
        r.dS = dS;
        r.sigma = sigma;
        r.tau_circ = sigma / dS;
        r.W_total = T_h * (dS - sigma / tau_h);
        r.W_fb = 0.0;
        r.W_wm = r.W_total;
        r.Q_h = r.W_total;
        r.Q_c = 0.0;
        r.eta = 1.0 - sigma / (dS * tau_h);
        r.P = r.W_total / (tau_h + tau_fb);
        return r;
    };
}

CycleFamily make_analytic_family(double omega_fb, double omega3, double omega4,
                                 const BathCoupling& bath, double tau_fb) {
    return [=](double tau_h) {
        return run_cycle_analytic(
            derive_cycle(omega_fb, omega3, omega4, bath, tau_fb, tau_h));
    };
}

CycleFamily make_numeric_family(double omega_fb, double omega3, double omega4,
                                const BathCoupling& bath, double tau_fb,
                                double reference_tau_h, int steps) {
    const CycleResult ref = run_cycle_numeric(
        derive_cycle(omega_fb, omega3, omega4, bath, tau_fb, reference_tau_h),
        steps);
    const CycleFamily curve = make_low_dissipation_family(
        1.0 / bath.beta_h, ref.dS, ref.sigma, tau_fb);
    return [curve](double tau_h) {
        CycleResult r = curve(tau_h);
        r.mode = CycleMode::Numeric;
        return r;
    };
}

OptimizationReport optimize_power_analytic(double T_h, double dS,
                                           double tau_circ, double tau_fb) {
    return {optimal_hot_time(tau_circ, tau_fb), tau_circ,
            eta_star(tau_circ, tau_fb), p_star(T_h, dS, tau_circ, tau_fb),
            OptimizationReport::Method::Analytic};
}

OptimizationReport brute_force_max_power(const CycleFamily& family,
                                         double tau_lo, double tau_hi,
                                         double rel_tol) {
    if (!(tau_lo > 0.0) || !(tau_hi > tau_lo))
        throw InvalidParameterError("bracket must satisfy 0 < tau_lo < tau_hi");
    if (!(rel_tol > 0.0)) throw InvalidParameterError("rel_tol must be positive");

    const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = tau_lo, b = tau_hi;
    double c = b - inv_gr * (b - a);
    double d = a + inv_gr * (b - a);
    const double p_lo = family(a).P;
    const double p_hi = family(b).P;
    double pc = family(c).P;
    double pd = family(d).P;

    // An interior minimum shows as power rising toward both bracket ends.
    if (pc < p_lo && pd < p_hi)
        throw BracketError("power increases toward both bracket ends");

    while (b - a > rel_tol * (std::abs(a) + std::abs(b)) / 2.0) {
        if (pc > pd) {
            b = d;
            d = c;
            pd = pc;
            c = b - inv_gr * (b - a);
            pc = family(c).P;
        } else {
            a = c;
            c = d;
            pc = pd;
            d = a + inv_gr * (b - a);
            pd = family(d).P;
        }
    }
    double tau_star = (a + b) / 2.0;
    const double width = tau_hi - tau_lo;
    if (tau_star - tau_lo < 4.0 * rel_tol * width ||
        tau_hi - tau_star < 4.0 * rel_tol * width)
        throw BracketError("maximum sits on a bracket boundary");

    // Function comparisons alone cannot place a quadratic maximum closer than
    // ~sqrt(eps); one parabolic vertex fit through fresh samples removes that
    // floor.
    {
        const double h = 1e-5 * tau_star;
        if (tau_star - h > tau_lo && tau_star + h < tau_hi) {
            const double fm = family(tau_star - h).P;
            const double f0 = family(tau_star).P;
            const double fp = family(tau_star + h).P;
            const double curv = fm - 2.0 * f0 + fp;
            if (curv < 0.0) {
                const double shift = h * (fm - fp) / (2.0 * curv);
                if (std::abs(shift) <= h) tau_star += shift;
            }
        }
    }

    const CycleResult at_star = family(tau_star);
    return {tau_star,
            at_star.dS > 0.0 ? at_star.sigma / at_star.dS : 0.0,
            at_star.eta, at_star.P,
            OptimizationReport::Method::GoldenSection};
}

std::vector<SweepRow> sweep_power_curves(
    const std::function<CycleFamily(double tau_fb)>& family_for_tau_fb,
    double tau_circ, std::span<const double> tau_fb_over_circ,
    const SweepGrid& grid) {
    if (!(tau_circ > 0.0)) throw InvalidParameterError("tau_circ must be positive");
    if (grid.points < 2 || !(grid.hi > grid.lo))
        throw InvalidParameterError("sweep grid invalid");

    std::vector<double> fb(tau_fb_over_circ.begin(), tau_fb_over_circ.end());
    std::sort(fb.begin(), fb.end());

    std::vector<SweepRow> rows;
    rows.reserve(fb.size() * (grid.points + 1));
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (double fbr : fb) {
        const double tau_fb = fbr * tau_circ;
        const CycleFamily family = family_for_tau_fb(tau_fb);
        const double tau_star_r = optimal_hot_time(tau_circ, tau_fb) / tau_circ;
        const double p_peak = family(tau_star_r * tau_circ).P;

        std::vector<double> taus;
        taus.reserve(grid.points + 1);
        for (int i = 0; i < grid.points; ++i)
            taus.push_back(grid.lo +
                           (grid.hi - grid.lo) * i / (grid.points - 1));
        taus.push_back(tau_star_r);
        std::sort(taus.begin(), taus.end());

        for (double tr : taus) {
            SweepRow row{fbr, tr, nan, nan, nan, false};
            if (tr > 1.0) {
                try {
                    const CycleResult res = family(tr * tau_circ);
                    row.power = res.P;
                    row.eta = res.eta;
                    row.power_over_pstar = res.P / p_peak;
                    row.feasible = true;
                } catch (const InfeasibleDurationError&) {
                    // leave the row flagged
                }
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace qie

#pragma once

// Adaptive embedded Dormand-Prince 5(4) integrator for small dense systems.
// The right-hand side is f(t, y, dydt) with y as std::array<double, N>.

#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>

#include "qie/errors.hpp"

namespace qie {

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 0.0;   // 0: pick from the interval
    long max_steps = 2'000'000;
};

namespace detail {

// Dormand-Prince coefficients (RK45, FSAL not exploited for simplicity).
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                        c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order embedded weights.
inline constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695,
                        e4 = 393.0 / 640, e5 = -92097.0 / 339200,
                        e6 = 187.0 / 2100, e7 = 1.0 / 40;

}  // namespace detail

/// Integrates y' = f(t, y) from t0 to t1 (t1 >= t0) and returns y(t1).
/// Throws NumericFailureError with step diagnostics when the controller
/// stalls or exceeds max_steps.
template <std::size_t N, class F>
std::array<double, N> integrate_adaptive(F&& f, std::array<double, N> y,
                                         double t0, double t1,
                                         const OdeOptions& opt = {}) {
    using State = std::array<double, N>;
    namespace d = detail;

    if (!(t1 >= t0)) throw InvalidParameterError("ode: t1 < t0");
    const double span = t1 - t0;
    if (span == 0.0) return y;

    double t = t0;
    double h = opt.initial_step > 0.0 ? opt.initial_step : span / 100.0;
    h = std::min(h, span);

    State k1, k2, k3, k4, k5, k6, k7, ytmp, y5;
    long steps = 0;
    while (t < t1) {
        if (++steps > opt.max_steps) {
            std::ostringstream os;
            os << "ode: step limit " << opt.max_steps << " exceeded at t=" << t
               << " h=" << h;
            throw NumericFailureError(os.str());
        }
        h = std::min(h, t1 - t);

        f(t, y, k1);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * d::a21 * k1[i];
        f(t + d::c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (d::a31 * k1[i] + d::a32 * k2[i]);
        f(t + d::c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (d::a41 * k1[i] + d::a42 * k2[i] + d::a43 * k3[i]);
        f(t + d::c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (d::a51 * k1[i] + d::a52 * k2[i] +
                                  d::a53 * k3[i] + d::a54 * k4[i]);
        f(t + d::c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (d::a61 * k1[i] + d::a62 * k2[i] +
                                  d::a63 * k3[i] + d::a64 * k4[i] +
                                  d::a65 * k5[i]);
        f(t + h, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            y5[i] = y[i] + h * (d::b1 * k1[i] + d::b3 * k3[i] + d::b4 * k4[i] +
                                d::b5 * k5[i] + d::b6 * k6[i]);
        f(t + h, y5, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double y4 = y[i] + h * (d::e1 * k1[i] + d::e3 * k3[i] +
                                          d::e4 * k4[i] + d::e5 * k5[i] +
                                          d::e6 * k6[i] + d::e7 * k7[i]);
            const double scale =
                opt.abs_tol +
                opt.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(y5[i] - y4) / scale);
        }

        if (err <= 1.0) {
            t += h;
            y = y5;
        }
        const double factor =
            err > 0.0 ? 0.9 * std::pow(err, -0.2)
                      : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        if (!(h > 0.0) || t + h == t) {
            std::ostringstream os;
            os << "ode: step size underflow at t=" << t << " err=" << err;
            throw NumericFailureError(os.str());
        }
    }
    return y;
}

}  // namespace qie

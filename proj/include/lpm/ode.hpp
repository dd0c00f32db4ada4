#pragma once

#include <algorithm>
#include <cmath>

namespace lpm {

// Adaptive Dormand-Prince 5(4) integrator for scalar autonomous ODEs.
// Step control follows the usual PI-free rule: accept when the embedded
// error estimate is below atol + rtol*max(|x|, |x_next|).
struct Dopri5Options {
    double rtol = 1e-3;
    double atol = 1e-6;
    double initial_step = 1e-2;
    double max_step = 10.0;
    double min_step = 1e-12;
};

struct OdeOutcome {
    double t = 0.0;
    double x = 0.0;
    bool stopped = false;  // stop predicate fired before t_max
};

// Integrates dx/dt = f(x) from (0, x0) until stop(x) returns true or t
// reaches t_max. The stop predicate is evaluated on the initial state and
// after every accepted step.
template <class F, class Stop>
OdeOutcome integrate_dopri5(F&& f, double x0, double t_max, Stop&& stop,
                            const Dopri5Options& opt = {}) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeOutcome out{0.0, x0, false};
    if (stop(out.x)) {
        out.stopped = true;
        return out;
    }

    double h = opt.initial_step;
    double k1 = f(out.x);
    while (out.t < t_max) {
        h = std::min({h, opt.max_step, t_max - out.t});
        const double k2 = f(out.x + h * (a21 * k1));
        const double k3 = f(out.x + h * (a31 * k1 + a32 * k2));
        const double k4 = f(out.x + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = f(out.x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = f(out.x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double x_next = out.x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = f(x_next);  // FSAL stage
        const double err =
            std::fabs(h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
        const double tol = opt.atol + opt.rtol * std::max(std::fabs(out.x), std::fabs(x_next));

        if (err <= tol || h <= opt.min_step) {
            out.t += h;
            out.x = x_next;
            k1 = k7;
            if (stop(out.x)) {
                out.stopped = true;
                return out;
            }
        }
        const double scale = (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 5.0;
        h *= std::clamp(scale, 0.2, 5.0);
        h = std::max(h, opt.min_step);
    }
    return out;
}

}  // namespace lpm

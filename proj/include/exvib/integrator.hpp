// integrator.hpp — embedded Dormand-Prince 5(4) propagation with PI step
// control and exact landing on a sample grid
//
// The error norm mixes absolute and relative tolerance per complex element
// across the whole state vector. Sampling clamps the step so every grid point
// is hit exactly; no interpolation is involved, which keeps output
// deterministic for a fixed configuration.

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "exvib/types.hpp"

namespace exvib {

struct IntegratorControls {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double initial_step_ps = 1e-4;
    double max_step_ps = 0.0;  // 0 = no cap
    double min_step_ps = 1e-8; // controller underflow threshold

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
            throw std::invalid_argument("integrator tolerances must be > 0");
        }
        if (!(initial_step_ps > 0.0)) {
            throw std::invalid_argument("integrator initial step must be > 0");
        }
    }
};

struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PropagationStats {
    std::int64_t steps_accepted = 0;
    std::int64_t steps_rejected = 0;
    std::int64_t rhs_evaluations = 0;
};

namespace detail {

inline double error_norm(const Vector& err, const Vector& y0, const Vector& y1,
                         double atol, double rtol) {
    double sum = 0.0;
    const Eigen::Index n = err.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double scale =
            atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        const double e = std::abs(err(i)) / scale;
        sum += e * e;
    }
    return std::sqrt(sum / double(n));
}

} // namespace detail

// Propagates y through every time in `samples` (ascending, samples[0] >= t0),
// invoking on_sample(t, y) at each grid point. t0 itself is emitted when it
// equals the first sample.
template <class Rhs, class Sampler>
PropagationStats propagate(Rhs&& rhs, Vector& y, double t0,
                           std::span<const double> samples,
                           const IntegratorControls& ctl, Sampler&& on_sample,
                           const std::string& stiffness_context = {}) {
    ctl.validate();
    PropagationStats stats;
    if (samples.empty()) return stats;

    // Dormand-Prince 5(4)
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const Eigen::Index n = y.size();
    Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), errv(n);

    double t = t0;
    std::size_t next = 0;
    const auto reached = [&](double target) {
        return std::abs(t - target) <= 1e-12 * std::max(1.0, std::abs(target));
    };
    while (next < samples.size() && reached(samples[next])) {
        on_sample(t, y);
        ++next;
    }
    if (next >= samples.size()) return stats;

    rhs(y, k1);
    ++stats.rhs_evaluations;

    double h = ctl.initial_step_ps;
    if (ctl.max_step_ps > 0.0) h = std::min(h, ctl.max_step_ps);
    double facold = 1e-4;
    bool just_rejected = false;

    while (next < samples.size()) {
        const double target = samples[next];
        bool clamped = false;
        double hstep = h;
        if (t + hstep >= target) {
            hstep = target - t;
            clamped = true;
        }

        ytmp = y + (hstep * a21) * k1;
        rhs(ytmp, k2);
        ytmp = y + hstep * (a31 * k1 + a32 * k2);
        rhs(ytmp, k3);
        ytmp = y + hstep * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(ytmp, k4);
        ytmp = y + hstep * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(ytmp, k5);
        ytmp = y + hstep * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(ytmp, k6);
        ynew = y + hstep * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(ynew, k7);
        stats.rhs_evaluations += 6;

        errv = hstep * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err = detail::error_norm(errv, y, ynew, ctl.abs_tol, ctl.rel_tol);

        if (std::isfinite(err) && err <= 1.0) {
            // accept
            ++stats.steps_accepted;
            t = clamped ? target : t + hstep;
            y.swap(ynew);
            k1.swap(k7); // FSAL

            while (next < samples.size() && reached(samples[next])) {
                on_sample(t, y);
                ++next;
            }

            if (!clamped) {
                // PI controller (beta = 0.04, order 5)
                const double fac11 = std::pow(std::max(err, 1e-16), 0.17);
                const double fac = fac11 / std::pow(facold, 0.04);
                const double facmax = just_rejected ? 1.0 : 5.0;
                h = hstep / std::max(1.0 / facmax, std::min(5.0, fac / 0.9));
                facold = std::max(err, 1e-4);
            }
            // a clamped step's error says nothing about the proposed h; keep it
            just_rejected = false;
        } else {
            ++stats.steps_rejected;
            just_rejected = true;
            const double fac11 = std::isfinite(err)
                                     ? std::pow(std::max(err, 1e-16), 0.17)
                                     : 10.0;
            h = hstep * std::max(0.1, 0.9 / fac11);
        }
        if (ctl.max_step_ps > 0.0) h = std::min(h, ctl.max_step_ps);
        if (h < ctl.min_step_ps) {
            throw StiffnessError(
                "integrator step underflow below " + std::to_string(ctl.min_step_ps) +
                " ps at t = " + std::to_string(t) +
                (stiffness_context.empty() ? "" : " (" + stiffness_context + ")"));
        }
    }
    return stats;
}

} // namespace exvib

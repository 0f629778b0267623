// Copyright 2026 The pidtune Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pidtune/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pidtune {

namespace {

constexpr double kDivergenceLimit = 1e6;

// Strictly-proper remainder realization of num/den in phase-variable form:
//   x1' = x2, ..., xn' = -(a_n x1 + ... + a_1 xn) + u
//   y   = c_n x1 + ... + c_1 xn + b0 u
struct CanonicalForm {
    int n = 0;
    std::vector<double> a_rev;  // [a_n, ..., a_1]
    std::vector<double> c_rev;  // [c_n, ..., c_1]
    double b0 = 0.0;            // direct feedthrough
};

CanonicalForm to_canonical(const RationalTf& tf) {
    const auto& num = tf.num().coeffs();
    const auto& den = tf.den().coeffs();
    if (num.size() > den.size()) {
        throw std::invalid_argument("simulation requires a proper rational part");
    }
    CanonicalForm cf;
    cf.n = static_cast<int>(den.size()) - 1;
    const double lead = den[0];
    std::vector<double> a(den.size());
    for (std::size_t i = 0; i < den.size(); ++i) {
        a[i] = den[i] / lead;
    }
    std::vector<double> b(den.size(), 0.0);
    const std::size_t pad = den.size() - num.size();
    for (std::size_t i = 0; i < num.size(); ++i) {
        b[pad + i] = num[i] / lead;
    }
    cf.b0 = b[0];
    cf.a_rev.resize(static_cast<std::size_t>(cf.n));
    cf.c_rev.resize(static_cast<std::size_t>(cf.n));
    for (int i = 0; i < cf.n; ++i) {
        // a_rev[i] = a_{n-i}, c_rev[i] = b_{n-i} - b0*a_{n-i}
        const std::size_t k = static_cast<std::size_t>(cf.n - i);
        cf.a_rev[static_cast<std::size_t>(i)] = a[k];
        cf.c_rev[static_cast<std::size_t>(i)] = b[k] - cf.b0 * a[k];
    }
    return cf;
}

struct Stepper {
    const CanonicalForm& cf;
    double kp, ki_inv_ti, td, filter_n;
    bool has_deriv;
    bool closed_loop;

    // state layout: [x(0..n-1), xi, xf, u_integral]
    int n_states() const { return cf.n + 3; }

    double plant_output(const std::vector<double>& s, double w) const {
        double y = cf.b0 * w;
        for (int i = 0; i < cf.n; ++i) {
            y += cf.c_rev[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
        }
        return y;
    }

    // Controller output as a function of the current state and plant input.
    double control(const std::vector<double>& s, double w) const {
        const double e = 1.0 - plant_output(s, w);
        const double xi = s[static_cast<std::size_t>(cf.n)];
        const double xf = s[static_cast<std::size_t>(cf.n) + 1];
        const double dterm = has_deriv ? filter_n * (e - xf) : 0.0;
        return kp * (e + ki_inv_ti * xi + dterm);
    }

    void deriv(const std::vector<double>& s, double w, std::vector<double>& ds) const {
        const int n = cf.n;
        for (int i = 0; i + 1 < n; ++i) {
            ds[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i) + 1];
        }
        if (n > 0) {
            double acc = w;
            for (int i = 0; i < n; ++i) {
                acc -= cf.a_rev[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
            }
            ds[static_cast<std::size_t>(n) - 1] = acc;
        }
        if (closed_loop) {
            const double e = 1.0 - plant_output(s, w);
            const double xf = s[static_cast<std::size_t>(n) + 1];
            ds[static_cast<std::size_t>(n)] = e;
            ds[static_cast<std::size_t>(n) + 1] = has_deriv ? (e - xf) * filter_n / td : 0.0;
            ds[static_cast<std::size_t>(n) + 2] = control(s, w);
        } else {
            ds[static_cast<std::size_t>(n)] = 0.0;
            ds[static_cast<std::size_t>(n) + 1] = 0.0;
            ds[static_cast<std::size_t>(n) + 2] = 1.0;  // open loop: u == r == 1
        }
    }
};

void rk4_step(const Stepper& st, std::vector<double>& s, double w, double dt,
              std::vector<double>& k1, std::vector<double>& k2, std::vector<double>& k3,
              std::vector<double>& k4, std::vector<double>& tmp) {
    const std::size_t m = s.size();
    st.deriv(s, w, k1);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = s[i] + 0.5 * dt * k1[i];
    st.deriv(tmp, w, k2);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = s[i] + 0.5 * dt * k2[i];
    st.deriv(tmp, w, k3);
    for (std::size_t i = 0; i < m; ++i) tmp[i] = s[i] + dt * k3[i];
    st.deriv(tmp, w, k4);
    for (std::size_t i = 0; i < m; ++i) {
        s[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

StepResult run(const DeadTimePlant& plant, const Stepper& st, const SimConfig& config) {
    double dt = config.dt;
    int delay_steps = 0;
    if (plant.delay > 0.0) {
        delay_steps = static_cast<int>(std::ceil(plant.delay / dt - 1e-9));
        dt = plant.delay / delay_steps;
    }
    const int steps = static_cast<int>(std::ceil(config.horizon / dt - 1e-9));

    StepResult out;
    out.dt = dt;
    out.t.reserve(static_cast<std::size_t>(steps) + 1);
    out.y.reserve(static_cast<std::size_t>(steps) + 1);
    out.e.reserve(static_cast<std::size_t>(steps) + 1);

    // Ring buffer of per-step means of the controller output; entry k covers
    // [t_k, t_{k+1}). Windows before the start have zero mean.
    std::vector<double> u_mean(static_cast<std::size_t>(steps) + 1, 0.0);

    std::vector<double> state(static_cast<std::size_t>(st.n_states()), 0.0);
    std::vector<double> k1(state.size()), k2(state.size()), k3(state.size()), k4(state.size()),
        tmp(state.size());

    double w0 = 0.0;  // plant input during the first step when there is no delay
    if (delay_steps == 0) {
        w0 = st.closed_loop ? st.control(state, 0.0) : 1.0;
    }
    out.t.push_back(0.0);
    out.y.push_back(st.plant_output(state, delay_steps == 0 ? w0 : 0.0));
    out.e.push_back(1.0 - out.y.back());

    double point_sample = w0;
    for (int k = 0; k < steps; ++k) {
        double w;
        if (delay_steps == 0) {
            w = point_sample;
        } else {
            const int src = k - delay_steps;
            w = (src >= 0) ? u_mean[static_cast<std::size_t>(src)] : 0.0;
        }
        const double u_int_before = state.back();
        rk4_step(st, state, w, dt, k1, k2, k3, k4, tmp);
        u_mean[static_cast<std::size_t>(k)] = (state.back() - u_int_before) / dt;

        double w_next;
        if (delay_steps == 0) {
            point_sample = st.closed_loop ? st.control(state, w) : 1.0;
            w_next = point_sample;
        } else {
            const int src = k + 1 - delay_steps;
            w_next = (src >= 0) ? u_mean[static_cast<std::size_t>(src)] : 0.0;
        }
        const double y = st.plant_output(state, w_next);
        out.t.push_back(static_cast<double>(k + 1) * dt);
        out.y.push_back(y);
        out.e.push_back(1.0 - y);
        if (std::abs(y) > kDivergenceLimit) {
            out.divergent = true;
            break;
        }
    }
    return out;
}

}  // namespace

SimConfig make_sim_config(double dt, double horizon, double deriv_filter_n) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("SimConfig: dt must be > 0");
    }
    if (!(horizon >= 10.0 * dt)) {
        throw std::invalid_argument("SimConfig: horizon must be at least 10*dt");
    }
    if (!(deriv_filter_n > 0.0)) {
        throw std::invalid_argument("SimConfig: derivative filter coefficient must be > 0");
    }
    return SimConfig{dt, horizon, deriv_filter_n};
}

StepResult step_closed_loop(const DeadTimePlant& plant, const PidController& controller,
                            const SimConfig& config) {
    make_sim_config(config.dt, config.horizon, config.deriv_filter_n);
    const CanonicalForm cf = to_canonical(plant.tf);
    Stepper st{cf,
               controller.kp(),
               std::isinf(controller.ti()) ? 0.0 : 1.0 / controller.ti(),
               controller.td(),
               config.deriv_filter_n,
               controller.td() > 0.0,
               /*closed_loop=*/true};
    return run(plant, st, config);
}

StepResult step_open_loop(const DeadTimePlant& plant, const SimConfig& config) {
    make_sim_config(config.dt, config.horizon, config.deriv_filter_n);
    const CanonicalForm cf = to_canonical(plant.tf);
    Stepper st{cf, 1.0, 0.0, 0.0, config.deriv_filter_n, false, /*closed_loop=*/false};
    return run(plant, st, config);
}

Metrics compute_metrics(const StepResult& result) {
    const std::size_t n = result.y.size();
    if (n < 2) {
        throw std::invalid_argument("compute_metrics: empty trajectory");
    }
    double itae = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        const double fa = result.t[i - 1] * std::abs(result.e[i - 1]);
        const double fb = result.t[i] * std::abs(result.e[i]);
        itae += 0.5 * (fa + fb) * (result.t[i] - result.t[i - 1]);
    }

    const std::size_t tail = std::max<std::size_t>(1, n / 20);
    double y_final = 0.0;
    for (std::size_t i = n - tail; i < n; ++i) {
        y_final += result.y[i];
    }
    y_final /= static_cast<double>(tail);
    if (std::abs(y_final) < 1e-9) {
        throw std::runtime_error("overshoot undefined: final value is zero");
    }

    const double peak = *std::max_element(result.y.begin(), result.y.end());
    const double overshoot = std::max(0.0, (peak - y_final) / y_final);

    const double band = 0.02 * std::abs(y_final);
    double settling = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        if (std::abs(result.y[i] - y_final) > band) {
            settling = result.t[i];
            break;
        }
    }
    return Metrics{itae, overshoot, settling, std::abs(1.0 - y_final)};
}

}  // namespace pidtune

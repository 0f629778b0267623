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

#pragma once

#include <vector>

#include "pidtune/lti.hpp"
#include "pidtune/pid.hpp"

namespace pidtune {

/// Fixed-step simulation settings. dt is reduced internally when needed so
/// that the dead time is an integer number of steps.
struct SimConfig {
    double dt = 0.01;            // seconds
    double horizon = 60.0;       // seconds
    double deriv_filter_n = 100; // derivative filter coefficient N
};

SimConfig make_sim_config(double dt, double horizon, double deriv_filter_n);

struct Metrics {
    double itae;                // integral of t*|e(t)| dt
    double overshoot;           // fraction of final value, clamped >= 0
    double settling_time_2pct;  // seconds
    double steady_state_error;  // |1 - y_final|
};

/// Uniformly sampled closed-loop (or open-loop) step trajectory.
struct StepResult {
    std::vector<double> t;
    std::vector<double> y;
    std::vector<double> e;  // r - y with r = unit step
    double dt = 0.0;        // actual step used (after delay alignment)
    bool divergent = false; // |y| exceeded 1e6 and the run was cut short
};

/// Unit-step response of the unity-feedback loop r -> PID -> delay -> plant.
///
/// The rational part is realized in controllable canonical state-space form;
/// the pure delay is an integer-step ring buffer on the plant input (the
/// buffer holds per-step means of the controller output so the delayed
/// window's flux is preserved); the PID integrator and the filtered
/// derivative Td*s / (1 + Td*s/N) act on the error; integration is
/// fixed-step classical Runge-Kutta with the delayed sample held constant
/// over each step.
///
/// An unstable run (|y| > 1e6) returns a result flagged divergent rather
/// than throwing. Throws std::invalid_argument for an improper rational
/// part.
StepResult step_closed_loop(const DeadTimePlant& plant, const PidController& controller,
                            const SimConfig& config);

/// Unit step applied directly to the plant input (no feedback); same
/// integrator and delay machinery as the closed-loop path.
StepResult step_open_loop(const DeadTimePlant& plant, const SimConfig& config);

/// Trapezoidal ITAE, overshoot and settling time relative to the mean of the
/// last 5% of samples, and |1 - y_final|. Throws when the final value is
/// within 1e-9 of zero (overshoot undefined).
Metrics compute_metrics(const StepResult& result);

}  // namespace pidtune

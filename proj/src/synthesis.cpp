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

#include "pidtune/synthesis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pidtune {

namespace {

constexpr double kPi = std::numbers::pi;

double tan_checked(double angle, const char* what) {
    if (std::abs(std::cos(angle)) < 1e-12) {
        throw std::runtime_error(what);
    }
    return std::tan(angle);
}

}  // namespace

DesignSpec make_design_spec(double omega_c, double phi_d, double psi_d) {
    if (!(omega_c > 0.0)) {
        throw std::invalid_argument("DesignSpec: omega_c must be > 0");
    }
    if (!(phi_d > 0.0 && phi_d < kPi)) {
        throw std::invalid_argument("DesignSpec: phase margin must lie in (0, pi)");
    }
    return DesignSpec{omega_c, phi_d, psi_d};
}

PidController synthesize_pid(double phi_c, double mag_c, const SlopeEstimate& slopes,
                             const DesignSpec& spec) {
    if (!(mag_c > 0.0)) {
        throw std::invalid_argument("synthesize_pid: measured magnitude must be > 0");
    }
    if (std::abs(slopes.omega0 - spec.omega_c) > 1e-9 * std::max(1.0, spec.omega_c)) {
        throw std::invalid_argument("synthesize_pid: slope estimate frequency != spec crossover");
    }
    const double wc = spec.omega_c;
    const double a1 = spec.phi_d - phi_c;
    const double a2 = spec.psi_d - phi_c;
    const double t1 = tan_checked(a1, "degenerate spec angle: phi_d - phi_c at tangent pole");
    const double t2 = tan_checked(a2, "degenerate spec angle: psi_d - phi_c at tangent pole");

    const double kp = std::abs(std::cos(a1)) / mag_c;
    const double td =
        1.0 / (2.0 * wc) *
        ((slopes.s_a - slopes.s_p * t1) * t2 + (1.0 - slopes.s_a) * t1 - slopes.s_p);
    if (td < 0.0) {
        throw std::runtime_error("spec infeasible for PID structure at this frequency (Td < 0)");
    }
    const double ti = 1.0 / (wc * (td * wc - t1));
    if (!(ti > 0.0)) {
        throw std::runtime_error("spec infeasible for PID structure at this frequency (Ti <= 0)");
    }
    return PidController(kp, ti, td);
}

double nyquist_slope_psi(double ti, double td, double omega0, double phi0,
                         const SlopeEstimate& slopes) {
    if (!(ti > 0.0)) {
        throw std::invalid_argument("nyquist_slope_psi: ti must be > 0");
    }
    const double x = td * ti * omega0 * omega0;
    const double num = (x + 1.0) + (x - 1.0) * slopes.s_a + slopes.s_p * ti * omega0;
    const double den = slopes.s_a * ti * omega0 - (x - 1.0) * slopes.s_p;
    if (num == 0.0 && den == 0.0) {
        throw std::runtime_error("slope undefined (vanishing derivative direction)");
    }
    return phi0 + std::atan2(num, den);
}

double td_from_ti(double ti, double omega0, double phi0, double psi,
                  const SlopeEstimate& slopes) {
    if (!(ti > 0.0)) {
        throw std::invalid_argument("td_from_ti: ti must be > 0");
    }
    const double t = tan_checked(psi - phi0, "degenerate: psi - phi0 at tangent pole");
    const double den = omega0 * omega0 * ti * (1.0 + slopes.s_a + slopes.s_p * t);
    if (std::abs(den) < 1e-12) {
        throw std::runtime_error("degenerate: slope relation denominator vanishes");
    }
    const double td =
        (slopes.s_a - 1.0 + slopes.s_p * t - ti * omega0 * (slopes.s_p - slopes.s_a * t)) / den;
    if (td < 0.0) {
        throw std::runtime_error("infeasible slope for PI(D) at this frequency (Td < 0)");
    }
    return td;
}

double measure_loop_slope(const DeadTimePlant& plant, const PidController& controller,
                          double omega_c, std::optional<double> psi_ref) {
    constexpr double h = 1e-4;
    const std::complex<double> hi = loop_eval(plant, controller, omega_c * (1.0 + h));
    const std::complex<double> lo = loop_eval(plant, controller, omega_c * (1.0 - h));
    const std::complex<double> dl = (hi - lo) / (2.0 * omega_c * h);
    if (std::abs(dl) < 1e-14) {
        throw std::runtime_error("stationary point: loop derivative vanishes");
    }
    double psi = std::arg(dl);
    if (psi_ref) {
        // Shift by multiples of pi into the half-turn containing psi_ref.
        psi -= kPi * std::round((psi - *psi_ref) / kPi);
    }
    return psi;
}

DesignReport verify_design(const DeadTimePlant& plant, const PidController& controller,
                           const DesignSpec& spec) {
    const double wc = crossover_frequency(plant, controller);
    const double pm = kPi + loop_phase(plant, controller, wc);
    const double psi = measure_loop_slope(plant, controller, wc, spec.psi_d);
    const double err = std::abs(psi - spec.psi_d) / std::abs(spec.psi_d);
    return DesignReport{pm, wc, psi, err};
}

}  // namespace pidtune

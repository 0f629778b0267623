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

#include <optional>

#include "pidtune/bode_slopes.hpp"
#include "pidtune/lti.hpp"
#include "pidtune/pid.hpp"

namespace pidtune {

/// Target loop shape: gain crossover frequency, phase margin, and Nyquist
/// slope (phase of dL/dw) at the crossover. Angles in radians.
struct DesignSpec {
    double omega_c;
    double phi_d;
    double psi_d;
};

DesignSpec make_design_spec(double omega_c, double phi_d, double psi_d);

/// Numerical verification of an achieved design.
struct DesignReport {
    double achieved_pm;          // radians
    double achieved_crossover;   // rad/s
    double achieved_psi;         // radians, reduced mod 180 deg near psi_d
    double slope_error_fraction; // |psi - psi_d| / |psi_d|
};

/// PID synthesis for a desired crossover, phase margin, and Nyquist slope
/// from a single measured frequency-response point (phi_c, mag_c) and a
/// slope estimate at the same frequency:
///
///   Kp = |cos(phi_d - phi_c)| / mag_c
///   Td = 1/(2 wc) * [(s_a - s_p t1) t2 + (1 - s_a) t1 - s_p]
///   Ti = 1 / (wc (Td wc - t1))
///
/// with t1 = tan(phi_d - phi_c), t2 = tan(psi_d - phi_c). Kp and Ti enforce
/// the crossover and margin exactly regardless of the slope estimates; only
/// the achieved Nyquist slope depends on their quality.
///
/// Throws std::runtime_error when the formulas yield Ti <= 0 or Td < 0
/// (spec infeasible for the PID structure at this frequency) or when either
/// tangent is evaluated at a pole.
PidController synthesize_pid(double phi_c, double mag_c, const SlopeEstimate& slopes,
                             const DesignSpec& spec);

/// Nyquist slope of the loop at omega0 predicted from the controller's
/// (Ti, Td) and the plant's slope estimates:
///   psi = phi0 + atan2((Td Ti w^2 + 1) + (Td Ti w^2 - 1) s_a + s_p Ti w,
///                       s_a Ti w - (Td Ti w^2 - 1) s_p)
/// The two-argument arctangent fixes the branch.
double nyquist_slope_psi(double ti, double td, double omega0, double phi0,
                         const SlopeEstimate& slopes);

/// Inverse relation: the Td that realizes slope psi at omega0 for a given Ti.
/// Throws on a degenerate denominator or a negative resulting Td.
double td_from_ti(double ti, double omega0, double phi0, double psi,
                  const SlopeEstimate& slopes);

/// Ground-truth Nyquist slope: phase of the central finite-difference
/// derivative of L(jw) at omega_c (relative step 1e-4). When psi_ref is
/// given the result is reduced modulo 180 degrees into the half-turn
/// containing psi_ref, otherwise it is the principal value.
double measure_loop_slope(const DeadTimePlant& plant, const PidController& controller,
                          double omega_c, std::optional<double> psi_ref = std::nullopt);

/// Measures what the closed design actually achieves: crossover by search,
/// phase margin from the unwrapped loop phase there, Nyquist slope at the
/// achieved crossover reduced near the spec's psi_d, and the slope error
/// fraction after that reduction.
DesignReport verify_design(const DeadTimePlant& plant, const PidController& controller,
                           const DesignSpec& spec);

}  // namespace pidtune

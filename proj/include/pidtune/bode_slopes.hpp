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

#include "pidtune/lti.hpp"

namespace pidtune {

enum class SlopeMethod { exact, bode, bode_delayed };

/// Normalized logarithmic slopes of a frequency response at omega0:
///   s_a = w * d(ln|G|)/dw   (log-amplitude slope, dimensionless)
///   s_p = w * d(arg G)/dw   (phase slope, radians)
/// tagged by the estimation method that produced them.
struct SlopeEstimate {
    double omega0;
    double s_a;
    double s_p;
    SlopeMethod method;
};

const char* to_string(SlopeMethod method);

/// Numeric realization of the slope definitions: central finite differences
/// in ln(omega) with relative step h. This is the oracle all approximations
/// are judged against.
SlopeEstimate slopes_exact(const DeadTimePlant& plant, double omega0, double h = 1e-5);

/// Bode-integral point approximation for a delay-free plant:
///   s_a ~ (2/pi) * arg G(jw0)
///   s_p ~ arg G(jw0) + (2/pi) * (ln|Kg| - ln|G(jw0)|)
/// Valid for stable minimum-phase responses with finite nonzero static gain
/// Kg; the validity of the approximation itself is not checked (it can be
/// far off even where the formulas apply).
SlopeEstimate slopes_bode(const RationalTf& tf, double omega0);

/// Delay-corrected variant for plants with dead time: the amplitude slope
/// removes the delay's phase contribution (arg G_tau + tau*w0) while the
/// phase slope uses the delayed response directly.
SlopeEstimate slopes_bode_delayed(const DeadTimePlant& plant, double omega0);

}  // namespace pidtune

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

/// Order-r Pade approximant of the transport delay e^(-s*L):
///
///     N_r(sL) = sum_{k=0..r} (2r-k)! / (k! (r-k)!) * (-sL)^k
///     D_r(sL) = sum_{k=0..r} (2r-k)! / (k! (r-k)!) * (+sL)^k
///
/// Coefficients are returned verbatim (not normalized to monic); the
/// factorial weights are computed in exact integer arithmetic, which caps
/// the order at r <= 10. L = 0 collapses to 1/1 for any r. The result is
/// all-pass: the denominator mirrors the numerator with the signs of the
/// odd-power terms flipped.
RationalTf pade_tf(double delay, int order);

/// Delay-free approximation of a dead-time plant: the rational part in
/// series with pade_tf(plant.delay, order). The result carries no delay.
RationalTf rationalize(const DeadTimePlant& plant, int order);

}  // namespace pidtune

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

#include "pidtune/bode_slopes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pidtune {

namespace {

// Shared core so that slopes_bode(tf) and slopes_bode_delayed(plant, tau=0)
// produce bit-identical numbers (tau*w0 contributes an exact 0.0).
SlopeEstimate bode_core(const DeadTimePlant& plant, double omega0, SlopeMethod method) {
    if (!(omega0 > 0.0)) {
        throw std::invalid_argument("bode slopes: omega0 must be > 0");
    }
    const double kg = static_gain(plant);
    if (kg == 0.0 || !std::isfinite(kg)) {
        throw std::runtime_error("Bode amplitude relation requires finite nonzero static gain");
    }
    const FrequencyPoint fp = freq_response(plant, omega0);
    const double two_over_pi = 2.0 / std::numbers::pi;
    const double s_a = two_over_pi * (fp.phase + plant.delay * omega0);
    const double s_p = fp.phase + two_over_pi * (std::log(std::abs(kg)) - std::log(fp.magnitude));
    return SlopeEstimate{omega0, s_a, s_p, method};
}

}  // namespace

const char* to_string(SlopeMethod method) {
    switch (method) {
        case SlopeMethod::exact:
            return "exact";
        case SlopeMethod::bode:
            return "bode";
        case SlopeMethod::bode_delayed:
            return "bode_delayed";
    }
    return "unknown";
}

SlopeEstimate slopes_exact(const DeadTimePlant& plant, double omega0, double h) {
    if (!(omega0 > 0.0)) {
        throw std::invalid_argument("slopes_exact: omega0 must be > 0");
    }
    if (!(h > 0.0)) {
        throw std::invalid_argument("slopes_exact: step must be > 0");
    }
    const FrequencyPoint hi = freq_response(plant, omega0 * std::exp(h));
    const FrequencyPoint lo = freq_response(plant, omega0 * std::exp(-h));
    const double s_a = (std::log(hi.magnitude) - std::log(lo.magnitude)) / (2.0 * h);
    const double s_p = (hi.phase - lo.phase) / (2.0 * h);
    if (!std::isfinite(s_a) || !std::isfinite(s_p)) {
        throw std::runtime_error("slopes_exact: response not finite near omega0");
    }
    return SlopeEstimate{omega0, s_a, s_p, SlopeMethod::exact};
}

SlopeEstimate slopes_bode(const RationalTf& tf, double omega0) {
    return bode_core(DeadTimePlant{tf, 0.0}, omega0, SlopeMethod::bode);
}

SlopeEstimate slopes_bode_delayed(const DeadTimePlant& plant, double omega0) {
    return bode_core(plant, omega0, SlopeMethod::bode_delayed);
}

}  // namespace pidtune

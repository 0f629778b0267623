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

#include "pidtune/lti.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pidtune {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Anchor frequency for pinning the unwrapped-phase branch; well below any
// pole or zero of the plants this library targets.
constexpr double kAnchorOmega = 1e-9;

// Signed phase contribution of one factor (jw - r), continuous in w > 0.
// The point x + j(w - b) with x = -Re(r) moves up a vertical line as w
// grows; for x < 0 the principal atan2 would jump across the branch cut at
// w = Im(r), so that side uses the continuous branch through pi instead.
double factor_phase(std::complex<double> root, double omega) {
    const double x = -root.real();
    const double t = omega - root.imag();
    if (x > 0.0) {
        return std::atan2(t, x);
    }
    if (x < 0.0) {
        return std::numbers::pi - std::atan(t / -x);
    }
    return std::atan2(t, 0.0);
}

}  // namespace

RationalTf::RationalTf(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) {
        throw std::invalid_argument("RationalTf: zero denominator");
    }
    try {
        num_roots_ = num_.roots();
        den_roots_ = den_.roots();
        roots_ok_ = true;
    } catch (const std::runtime_error&) {
        roots_ok_ = false;
    }
    if (roots_ok_) {
        // Fix the 2*pi branch so the root-sum phase matches the principal
        // value at the anchor; the difference is an exact multiple of 2*pi.
        const double raw = phase_root_sum(kAnchorOmega);
        const double principal = std::arg(eval(std::complex<double>(0.0, kAnchorOmega)));
        phase_offset_ = kTwoPi * std::round((raw - principal) / kTwoPi);
    }
}

std::complex<double> RationalTf::eval(std::complex<double> s) const {
    return num_.eval(s) / den_.eval(s);
}

double RationalTf::magnitude(double omega) const {
    const std::complex<double> jw(0.0, omega);
    const std::complex<double> d = den_.eval(jw);
    if (std::abs(d) == 0.0) {
        throw std::runtime_error("evaluation at pole");
    }
    return std::abs(num_.eval(jw)) / std::abs(d);
}

double RationalTf::phase_root_sum(double omega) const {
    double phi = 0.0;
    if (num_.leading() < 0.0) {
        phi += std::numbers::pi;
    }
    if (den_.leading() < 0.0) {
        phi -= std::numbers::pi;
    }
    for (const auto& r : num_roots_) {
        phi += factor_phase(r, omega);
    }
    for (const auto& r : den_roots_) {
        phi -= factor_phase(r, omega);
    }
    return phi;
}

double RationalTf::phase(double omega) const {
    if (!roots_ok_) {
        return phase_numeric(omega);
    }
    return phase_root_sum(omega) - phase_offset_;
}

double RationalTf::phase_numeric(double omega) const {
    const double anchor = std::min(kAnchorOmega, omega);
    double acc = std::arg(eval(std::complex<double>(0.0, anchor)));
    if (omega <= anchor) {
        return acc;
    }
    // 1000 points per decade from the anchor up to omega.
    const double decades = std::log10(omega / anchor);
    const int steps = std::max(1, static_cast<int>(std::ceil(decades * 1000.0)));
    const double ratio = std::pow(omega / anchor, 1.0 / steps);
    double prev_principal = acc;
    double w = anchor;
    for (int i = 1; i <= steps; ++i) {
        w = (i == steps) ? omega : w * ratio;
        const double p = std::arg(eval(std::complex<double>(0.0, w)));
        acc += std::remainder(p - prev_principal, kTwoPi);
        prev_principal = p;
    }
    return acc;
}

DeadTimePlant make_plant(const std::vector<double>& num, const std::vector<double>& den,
                         double delay) {
    Polynomial n(num);
    Polynomial d(den);
    if (d.is_zero()) {
        throw std::invalid_argument("make_plant: zero denominator");
    }
    if (!(delay >= 0.0)) {
        throw std::invalid_argument("make_plant: negative delay");
    }
    return DeadTimePlant{RationalTf(std::move(n), std::move(d)), delay};
}

FrequencyPoint freq_response(const DeadTimePlant& plant, double omega) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("freq_response: omega must be > 0");
    }
    const double mag = plant.tf.magnitude(omega);
    const double phi = plant.tf.phase(omega) - plant.delay * omega;
    return FrequencyPoint{omega, mag, phi};
}

double static_gain(const DeadTimePlant& plant) {
    const double d0 = plant.tf.den().constant_term();
    if (d0 == 0.0) {
        throw std::runtime_error(
            "static gain undefined for integrating plant; Bode amplitude relation inapplicable");
    }
    return plant.tf.num().constant_term() / d0;
}

RationalTf series_rational(const RationalTf& a, const RationalTf& b) {
    return RationalTf(a.num() * b.num(), a.den() * b.den());
}

std::complex<double> loop_eval(const DeadTimePlant& plant, const PidController& controller,
                               double omega) {
    const std::complex<double> jw(0.0, omega);
    const std::complex<double> delay = std::exp(std::complex<double>(0.0, -plant.delay * omega));
    return plant.tf.eval(jw) * delay * controller.response(omega);
}

double loop_phase(const DeadTimePlant& plant, const PidController& controller, double omega) {
    return freq_response(plant, omega).phase + controller.phase(omega);
}

double crossover_frequency(const DeadTimePlant& plant, const PidController& controller) {
    constexpr double kLow = 1e-4;   // search interval [1e-4, 1e4] rad/s
    constexpr int kDecades = 8;
    constexpr int kPerDecade = 200;

    const auto excess = [&](double w) {
        return std::log(plant.tf.magnitude(w) * std::abs(controller.response(w)));
    };

    const int points = kDecades * kPerDecade;
    double wa = kLow;
    double fa = excess(wa);
    if (fa == 0.0) {
        return wa;
    }
    for (int i = 1; i <= points; ++i) {
        const double wb = kLow * std::pow(10.0, static_cast<double>(i) / kPerDecade);
        const double fb = excess(wb);
        if (fb == 0.0) {
            return wb;
        }
        if (fa * fb < 0.0) {
            // Bisection on log(omega) to 1e-10 relative width.
            double lo = wa;
            double hi = wb;
            double flo = fa;
            while ((hi - lo) > 1e-10 * lo) {
                const double mid = std::sqrt(lo * hi);
                const double fm = excess(mid);
                if (fm == 0.0) {
                    return mid;
                }
                if (flo * fm < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            return std::sqrt(lo * hi);
        }
        wa = wb;
        fa = fb;
    }
    throw std::runtime_error("no gain crossover found on [1e-4, 1e4] rad/s");
}

}  // namespace pidtune

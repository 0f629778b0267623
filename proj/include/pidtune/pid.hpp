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

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace pidtune {

/// PID controller in series-of-terms form
///     K(jw) = kp * (1 + 1/(jw*ti) + jw*td).
/// ti may be +infinity to disable the integral term (pure P/PD control).
class PidController {
  public:
    PidController(double kp, double ti, double td) : kp_(kp), ti_(ti), td_(td) {
        if (!(kp > 0.0)) {
            throw std::invalid_argument("PidController: kp must be > 0");
        }
        if (!(ti > 0.0)) {
            throw std::invalid_argument("PidController: ti must be > 0");
        }
        if (!(td >= 0.0)) {
            throw std::invalid_argument("PidController: td must be >= 0");
        }
    }

    double kp() const { return kp_; }
    double ti() const { return ti_; }
    double td() const { return td_; }

    // Parallel-form gains.
    double ki() const { return std::isinf(ti_) ? 0.0 : kp_ / ti_; }
    double kd() const { return kp_ * td_; }

    std::complex<double> response(double omega) const {
        const std::complex<double> jw(0.0, omega);
        std::complex<double> integral =
            std::isinf(ti_) ? std::complex<double>(0.0) : 1.0 / (jw * ti_);
        return kp_ * (1.0 + integral + jw * td_);
    }

    /// Controller phase at omega, in (-pi/2, pi/2); the real part of
    /// 1 + 1/(jw ti) + jw td is always 1, so no unwrapping is needed.
    double phase(double omega) const {
        return std::atan(omega * td_ - (std::isinf(ti_) ? 0.0 : 1.0 / (omega * ti_)));
    }

    /// Unity controller (K = 1): kp = 1, integral and derivative disabled.
    static PidController unity() {
        return PidController(1.0, std::numeric_limits<double>::infinity(), 0.0);
    }

  private:
    double kp_;
    double ti_;
    double td_;
};

}  // namespace pidtune

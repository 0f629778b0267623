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

#include <complex>
#include <vector>

#include "pidtune/pid.hpp"
#include "pidtune/polynomial.hpp"

namespace pidtune {

/// Ratio of two real polynomials in s. Coefficients are preserved exactly as
/// given (no implicit common-factor cancellation). Construction factors both
/// polynomials so that the unwrapped phase can be evaluated from the signed
/// contributions of the individual roots.
class RationalTf {
  public:
    RationalTf(Polynomial num, Polynomial den);
    RationalTf(std::vector<double> num, std::vector<double> den)
        : RationalTf(Polynomial(std::move(num)), Polynomial(std::move(den))) {}

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    std::complex<double> eval(std::complex<double> s) const;

    /// |G(jw)|. Throws if den(jw) == 0.
    double magnitude(double omega) const;

    /// Unwrapped phase of G(jw), continuous in omega > 0 and anchored to the
    /// principal value near omega -> 0+. Root-based summation; falls back to
    /// numeric unwrapping if the root factorization was unavailable.
    double phase(double omega) const;

    /// Unwrapped phase by numeric unwrapping of principal values along a log
    /// grid from the near-zero anchor frequency up to omega. Independent of
    /// the root-based path; the two agree to ~1e-9 rad on ordinary plants.
    double phase_numeric(double omega) const;

    bool roots_available() const { return roots_ok_; }

  private:
    double phase_root_sum(double omega) const;

    Polynomial num_;
    Polynomial den_;
    std::vector<std::complex<double>> num_roots_;
    std::vector<std::complex<double>> den_roots_;
    double phase_offset_ = 0.0;  // multiple of 2*pi fixing the anchor value
    bool roots_ok_ = false;
};

/// Rational transfer function times a pure transport delay e^(-tau*s).
struct DeadTimePlant {
    RationalTf tf;
    double delay = 0.0;  // seconds, >= 0
};

/// Single point of a frequency response: absolute magnitude and unwrapped
/// phase in radians.
struct FrequencyPoint {
    double omega;
    double magnitude;
    double phase;
};

/// Builds a validated plant from descending-power coefficient lists.
/// Throws std::invalid_argument on a zero denominator or negative delay.
DeadTimePlant make_plant(const std::vector<double>& num, const std::vector<double>& den,
                         double delay);

/// Magnitude and unwrapped phase of the delayed plant at omega > 0.
/// The delay subtracts tau*omega from the rational phase and leaves the
/// magnitude untouched.
FrequencyPoint freq_response(const DeadTimePlant& plant, double omega);

/// DC gain num(0)/den(0); the delay has no effect. Throws if the denominator
/// constant term is zero (integrating plant) since the Bode amplitude
/// relation is inapplicable there.
double static_gain(const DeadTimePlant& plant);

/// Series connection: exact polynomial convolution of numerators and
/// denominators.
RationalTf series_rational(const RationalTf& a, const RationalTf& b);

/// Complex value of the loop L(jw) = G(jw) e^(-j tau w) K(jw).
std::complex<double> loop_eval(const DeadTimePlant& plant, const PidController& controller,
                               double omega);

/// Unwrapped loop phase: plant unwrapped phase plus the controller phase.
double loop_phase(const DeadTimePlant& plant, const PidController& controller, double omega);

/// Lowest gain crossover of L = G*K on [1e-4, 1e4] rad/s: the smallest omega
/// with |L(jw)| = 1, bracketed on a log grid and refined by bisection on
/// log(omega) to 1e-10 relative. Throws std::runtime_error when |L|-1 has no
/// sign change on the interval.
double crossover_frequency(const DeadTimePlant& plant, const PidController& controller);

}  // namespace pidtune

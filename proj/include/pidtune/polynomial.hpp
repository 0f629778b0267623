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

namespace pidtune {

/// Real univariate polynomial in s, coefficients stored in descending powers.
/// Leading zeros are trimmed on construction so that the leading coefficient
/// is nonzero unless the polynomial is identically zero.
class Polynomial {
  public:
    Polynomial() : coeffs_{0.0} {}
    explicit Polynomial(std::vector<double> coeffs);

    const std::vector<double>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const;

    double leading() const { return coeffs_.front(); }
    double constant_term() const { return coeffs_.back(); }

    double eval(double x) const;
    std::complex<double> eval(std::complex<double> s) const;

    /// Exact coefficient convolution; no cancellation of common factors.
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    /// All complex roots, via the companion-matrix eigenvalue method.
    /// Empty for constants. Throws std::runtime_error if the eigensolver
    /// fails to converge.
    std::vector<std::complex<double>> roots() const;

  private:
    std::vector<double> coeffs_;
};

}  // namespace pidtune

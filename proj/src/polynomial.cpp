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

#include "pidtune/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>

namespace pidtune {

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        coeffs_ = {0.0};
        return;
    }
    std::size_t first = 0;
    while (first + 1 < coeffs_.size() && coeffs_[first] == 0.0) {
        ++first;
    }
    if (first > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(first));
    }
}

bool Polynomial::is_zero() const {
    return coeffs_.size() == 1 && coeffs_[0] == 0.0;
}

double Polynomial::eval(double x) const {
    double r = 0.0;
    for (double c : coeffs_) {
        r = r * x + c;
    }
    return r;
}

std::complex<double> Polynomial::eval(std::complex<double> s) const {
    std::complex<double> r = 0.0;
    for (double c : coeffs_) {
        r = r * s + c;
    }
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) {
        return Polynomial{};
    }
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Polynomial(std::move(out));
}

std::vector<std::complex<double>> Polynomial::roots() const {
    const int n = degree();
    if (n < 1 || is_zero()) {
        return {};
    }
    // Companion matrix of the monic polynomial.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    const double lead = coeffs_[0];
    for (int i = 0; i < n; ++i) {
        companion(i, n - 1) = -coeffs_[static_cast<std::size_t>(n - i)] / lead;
        if (i > 0) {
            companion(i, i - 1) = 1.0;
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("polynomial root finding failed to converge");
    }
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
    }
    return out;
}

}  // namespace pidtune

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

#include "pidtune/pade.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace pidtune {

namespace {

// 20! is the largest factorial needed (r = 10) and fits in 64 bits.
std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= static_cast<std::uint64_t>(i);
    }
    return f;
}

}  // namespace

RationalTf pade_tf(double delay, int order) {
    if (delay < 0.0) {
        throw std::invalid_argument("pade_tf: negative delay");
    }
    if (order < 0) {
        throw std::invalid_argument("pade_tf: negative order");
    }
    if (order > 10) {
        throw std::invalid_argument("pade_tf: order too large for exact factorial path (max 10)");
    }
    if (delay == 0.0 || order == 0) {
        return RationalTf({1.0}, {1.0});
    }

    const int r = order;
    std::vector<double> num(static_cast<std::size_t>(r) + 1, 0.0);
    std::vector<double> den(static_cast<std::size_t>(r) + 1, 0.0);
    double lpow = 1.0;  // delay^k
    for (int k = 0; k <= r; ++k) {
        const std::uint64_t weight = factorial(2 * r - k) / (factorial(k) * factorial(r - k));
        const double c = static_cast<double>(weight) * lpow;
        // Descending powers: s^k lives at index r-k.
        num[static_cast<std::size_t>(r - k)] = (k % 2 == 0) ? c : -c;
        den[static_cast<std::size_t>(r - k)] = c;
        lpow *= delay;
    }
    return RationalTf(std::move(num), std::move(den));
}

RationalTf rationalize(const DeadTimePlant& plant, int order) {
    return series_rational(plant.tf, pade_tf(plant.delay, order));
}

}  // namespace pidtune

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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "pidtune/pid.hpp"
#include "pidtune/simulate.hpp"
#include "pidtune/synthesis.hpp"

namespace pidtune {

struct ParamBounds {
    double lo;
    double hi;
};

/// Parallel-form PID gains, the GA's decision variables. Converts to the
/// series form via Ti = kp/ki, Td = kd/kp.
struct Candidate {
    double kp;
    double ki;
    double kd;

    PidController to_controller() const { return PidController(kp, kp / ki, kd / kp); }
};

struct GaConfig {
    int population = 50;
    double crossover_fraction = 0.9;
    double mutation_fraction = 0.3;
    int generations = 100;
    std::optional<std::uint64_t> seed;
    std::array<ParamBounds, 3> bounds{};  // kp, ki, kd
    double slope_error_cap = 0.20;
};

/// Throws std::invalid_argument when any GaConfig invariant is violated.
void validate(const GaConfig& config);

struct GaResult {
    Candidate best;
    double best_itae;
    double best_slope_error;
    std::vector<double> history;  // per-generation best fitness, non-increasing
    std::uint64_t used_seed;
    bool seeded;  // false when the seed came from entropy
};

/// Box bounds [g*(1-spread), g*(1+spread)] around the reference controller's
/// parallel gains (kp, ki, kd).
std::array<ParamBounds, 3> derive_bounds(const PidController& reference, double spread = 0.4);

/// Real-coded GA minimizing the closed-loop step ITAE on the true delayed
/// plant over (kp, ki, kd): tournament selection (size 2), BLX-0.5 blend
/// crossover on crossover_fraction of offspring, per-gene Gaussian mutation
/// (sigma = 10% of the parameter range) with probability mutation_fraction,
/// elitism of one. Candidates whose measured Nyquist-slope error exceeds
/// slope_error_cap, or whose simulation diverges, receive +infinity fitness.
/// Deterministic for a given seed. Throws std::runtime_error when ten
/// resampled initial populations contain no feasible candidate.
GaResult evolve(const DeadTimePlant& plant, const DesignSpec& spec, const SimConfig& sim,
                const GaConfig& config);

}  // namespace pidtune

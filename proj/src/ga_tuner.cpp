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

#include "pidtune/ga_tuner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

namespace pidtune {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform and Gaussian draws built directly on the engine output so that
// results do not depend on the standard library's distribution
// implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    double gaussian() {
        // Box-Muller; u1 in (0, 1].
        const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::mt19937_64 engine_;
};

struct Evaluation {
    double fitness = kInf;
    double slope_error = std::numeric_limits<double>::quiet_NaN();
};

Evaluation evaluate(const Candidate& cand, const DeadTimePlant& plant, const DesignSpec& spec,
                    const SimConfig& sim, double cap) {
    Evaluation ev;
    try {
        const PidController ctrl = cand.to_controller();
        const DesignReport rep = verify_design(plant, ctrl, spec);
        ev.slope_error = rep.slope_error_fraction;
        if (rep.slope_error_fraction > cap) {
            return ev;  // death penalty
        }
        const StepResult res = step_closed_loop(plant, ctrl, sim);
        if (res.divergent) {
            return ev;
        }
        ev.fitness = compute_metrics(res).itae;
    } catch (const std::exception&) {
        ev.fitness = kInf;
    }
    return ev;
}

double clamp(double v, const ParamBounds& b) { return std::clamp(v, b.lo, b.hi); }

}  // namespace

void validate(const GaConfig& config) {
    if (config.population < 2) {
        throw std::invalid_argument("GaConfig: population must be >= 2");
    }
    if (config.crossover_fraction < 0.0 || config.crossover_fraction > 1.0 ||
        config.mutation_fraction < 0.0 || config.mutation_fraction > 1.0) {
        throw std::invalid_argument("GaConfig: fractions must lie in [0, 1]");
    }
    if (config.generations < 1) {
        throw std::invalid_argument("GaConfig: generations must be >= 1");
    }
    if (!(config.slope_error_cap > 0.0)) {
        throw std::invalid_argument("GaConfig: slope_error_cap must be > 0");
    }
    for (const auto& b : config.bounds) {
        if (!(b.lo < b.hi)) {
            throw std::invalid_argument("GaConfig: bounds must satisfy low < high");
        }
        if (!(b.lo > 0.0)) {
            throw std::invalid_argument("GaConfig: bounds must be positive");
        }
    }
}

std::array<ParamBounds, 3> derive_bounds(const PidController& reference, double spread) {
    if (!(spread > 0.0 && spread < 1.0)) {
        throw std::invalid_argument("derive_bounds: spread must lie in (0, 1)");
    }
    const std::array<double, 3> gains{reference.kp(), reference.ki(), reference.kd()};
    std::array<ParamBounds, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) {
        out[i] = ParamBounds{gains[i] * (1.0 - spread), gains[i] * (1.0 + spread)};
    }
    return out;
}

GaResult evolve(const DeadTimePlant& plant, const DesignSpec& spec, const SimConfig& sim,
                const GaConfig& config) {
    validate(config);
    const bool seeded = config.seed.has_value();
    const std::uint64_t seed = seeded ? *config.seed : std::random_device{}();
    Rng rng(seed);

    const int pop_size = config.population;
    const auto& bounds = config.bounds;

    std::vector<Candidate> pop(static_cast<std::size_t>(pop_size));
    std::vector<Evaluation> evals(static_cast<std::size_t>(pop_size));

    const auto sample = [&](Candidate& c) {
        c.kp = rng.uniform(bounds[0].lo, bounds[0].hi);
        c.ki = rng.uniform(bounds[1].lo, bounds[1].hi);
        c.kd = rng.uniform(bounds[2].lo, bounds[2].hi);
    };
    // Fitness evaluations are pure and consume no randomness, so running
    // them on a pool and storing by candidate index gives results identical
    // to the serial order for any thread count.
    const auto evaluate_all = [&](int from) {
        const unsigned workers =
            std::min(std::max(1u, std::thread::hardware_concurrency()),
                     static_cast<unsigned>(pop_size - from));
        if (workers <= 1) {
            for (int i = from; i < pop_size; ++i) {
                evals[static_cast<std::size_t>(i)] =
                    evaluate(pop[static_cast<std::size_t>(i)], plant, spec, sim,
                             config.slope_error_cap);
            }
            return;
        }
        std::atomic<int> cursor{from};
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) {
            threads.emplace_back([&]() {
                for (;;) {
                    const int i = cursor.fetch_add(1);
                    if (i >= pop_size) {
                        return;
                    }
                    evals[static_cast<std::size_t>(i)] =
                        evaluate(pop[static_cast<std::size_t>(i)], plant, spec, sim,
                                 config.slope_error_cap);
                }
            });
        }
        for (auto& th : threads) {
            th.join();
        }
    };
    const auto best_index = [&]() {
        int best = 0;
        for (int i = 1; i < pop_size; ++i) {
            if (evals[static_cast<std::size_t>(i)].fitness <
                evals[static_cast<std::size_t>(best)].fitness) {
                best = i;
            }
        }
        return best;
    };

    // Initial population; resample wholesale while nothing is feasible.
    int attempts = 0;
    for (;;) {
        for (auto& c : pop) {
            sample(c);
        }
        evaluate_all(0);
        if (std::isfinite(evals[static_cast<std::size_t>(best_index())].fitness)) {
            break;
        }
        if (++attempts >= 10) {
            throw std::runtime_error("bounds inconsistent with slope cap: no feasible candidate "
                                     "in 10 initial populations");
        }
    }

    std::vector<double> history;
    history.reserve(static_cast<std::size_t>(config.generations) + 1);
    history.push_back(evals[static_cast<std::size_t>(best_index())].fitness);

    const auto tournament = [&]() {
        const auto pick = [&]() {
            return std::min(static_cast<int>(rng.uniform01() * pop_size), pop_size - 1);
        };
        const int a = pick();
        const int b = pick();
        return evals[static_cast<std::size_t>(a)].fitness <=
                       evals[static_cast<std::size_t>(b)].fitness
                   ? a
                   : b;
    };

    std::vector<Candidate> next(static_cast<std::size_t>(pop_size));
    for (int gen = 0; gen < config.generations; ++gen) {
        const int elite = best_index();
        next[0] = pop[static_cast<std::size_t>(elite)];
        const Evaluation elite_eval = evals[static_cast<std::size_t>(elite)];

        for (int slot = 1; slot < pop_size; ++slot) {
            const Candidate& a = pop[static_cast<std::size_t>(tournament())];
            Candidate child = a;
            if (rng.uniform01() < config.crossover_fraction) {
                const Candidate& b = pop[static_cast<std::size_t>(tournament())];
                // BLX-0.5 per gene.
                const auto blx = [&](double ga, double gb, const ParamBounds& pb) {
                    const double lo = std::min(ga, gb);
                    const double hi = std::max(ga, gb);
                    const double d = hi - lo;
                    return clamp(rng.uniform(lo - 0.5 * d, hi + 0.5 * d), pb);
                };
                child.kp = blx(a.kp, b.kp, bounds[0]);
                child.ki = blx(a.ki, b.ki, bounds[1]);
                child.kd = blx(a.kd, b.kd, bounds[2]);
            }
            const auto mutate = [&](double g, const ParamBounds& pb) {
                if (rng.uniform01() < config.mutation_fraction) {
                    return clamp(g + rng.gaussian() * 0.1 * (pb.hi - pb.lo), pb);
                }
                return g;
            };
            child.kp = mutate(child.kp, bounds[0]);
            child.ki = mutate(child.ki, bounds[1]);
            child.kd = mutate(child.kd, bounds[2]);
            next[static_cast<std::size_t>(slot)] = child;
        }
        pop.swap(next);
        evals[0] = elite_eval;
        evaluate_all(1);
        history.push_back(evals[static_cast<std::size_t>(best_index())].fitness);
    }

    const int final_best = best_index();
    const Evaluation& be = evals[static_cast<std::size_t>(final_best)];
    return GaResult{pop[static_cast<std::size_t>(final_best)], be.fitness, be.slope_error,
                    std::move(history), seed, seeded};
}

}  // namespace pidtune

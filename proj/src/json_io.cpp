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

#include "pidtune/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace pidtune {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

double require_number(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number()) {
        throw std::invalid_argument(std::string("missing or non-numeric field \"") + key + "\"");
    }
    return doc[key].get<double>();
}

std::vector<double> require_number_array(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty()) {
        throw std::invalid_argument(std::string("missing or empty array field \"") + key + "\"");
    }
    std::vector<double> out;
    out.reserve(doc[key].size());
    for (const auto& v : doc[key]) {
        if (!v.is_number()) {
            throw std::invalid_argument(std::string("non-numeric entry in \"") + key + "\"");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open file: " + path);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("invalid JSON in " + path + ": " + err.what());
    }
    return doc;
}

void save_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << doc.dump(2) << "\n";
}

DeadTimePlant plant_from_json(const json& doc) {
    const auto num = require_number_array(doc, "num");
    const auto den = require_number_array(doc, "den");
    const double delay = doc.contains("delay") ? require_number(doc, "delay") : 0.0;
    return make_plant(num, den, delay);
}

json plant_to_json(const DeadTimePlant& plant) {
    return json{{"num", plant.tf.num().coeffs()},
                {"den", plant.tf.den().coeffs()},
                {"delay", plant.delay}};
}

DesignSpec spec_from_json(const json& doc) {
    const double wc = require_number(doc, "wc");
    const double pm = require_number(doc, "pm_deg") / kDegPerRad;
    const double psi = require_number(doc, "psi_deg") / kDegPerRad;
    return make_design_spec(wc, pm, psi);
}

json spec_to_json(const DesignSpec& spec) {
    return json{{"wc", spec.omega_c},
                {"pm_deg", spec.phi_d * kDegPerRad},
                {"psi_deg", spec.psi_d * kDegPerRad}};
}

PidController controller_from_json(const json& doc) {
    return PidController(require_number(doc, "kp"), require_number(doc, "ti"),
                         require_number(doc, "td"));
}

json controller_to_json(const PidController& controller) {
    return json{{"kp", controller.kp()},
                {"ti", controller.ti()},
                {"td", controller.td()},
                {"ki", controller.ki()},
                {"kd", controller.kd()}};
}

GaConfig ga_config_from_json(const json& doc) {
    GaConfig config;
    if (doc.contains("population")) config.population = doc["population"].get<int>();
    if (doc.contains("crossover_fraction"))
        config.crossover_fraction = require_number(doc, "crossover_fraction");
    if (doc.contains("mutation_fraction"))
        config.mutation_fraction = require_number(doc, "mutation_fraction");
    if (doc.contains("generations")) config.generations = doc["generations"].get<int>();
    if (doc.contains("seed") && !doc["seed"].is_null()) {
        config.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("slope_error_cap"))
        config.slope_error_cap = require_number(doc, "slope_error_cap");
    if (doc.contains("bounds")) {
        const auto& b = doc["bounds"];
        const char* names[3] = {"kp", "ki", "kd"};
        for (std::size_t i = 0; i < 3; ++i) {
            const auto pair = require_number_array(b, names[i]);
            if (pair.size() != 2) {
                throw std::invalid_argument("ga bounds entries must be [low, high]");
            }
            config.bounds[i] = ParamBounds{pair[0], pair[1]};
        }
    }
    return config;
}

json ga_config_to_json(const GaConfig& config) {
    json doc{{"population", config.population},
             {"crossover_fraction", config.crossover_fraction},
             {"mutation_fraction", config.mutation_fraction},
             {"generations", config.generations},
             {"slope_error_cap", config.slope_error_cap},
             {"bounds",
              {{"kp", {config.bounds[0].lo, config.bounds[0].hi}},
               {"ki", {config.bounds[1].lo, config.bounds[1].hi}},
               {"kd", {config.bounds[2].lo, config.bounds[2].hi}}}}};
    if (config.seed) {
        doc["seed"] = *config.seed;
    }
    return doc;
}

json sim_config_to_json(const SimConfig& config) {
    return json{{"dt", config.dt},
                {"horizon", config.horizon},
                {"deriv_filter_n", config.deriv_filter_n}};
}

json design_report_to_json(const DesignReport& report) {
    return json{{"achieved_pm_deg", report.achieved_pm * kDegPerRad},
                {"achieved_crossover", report.achieved_crossover},
                {"achieved_psi_deg", report.achieved_psi * kDegPerRad},
                {"slope_error_fraction", report.slope_error_fraction}};
}

json metrics_to_json(const Metrics& metrics) {
    return json{{"itae", metrics.itae},
                {"overshoot", metrics.overshoot},
                {"settling_time_2pct", metrics.settling_time_2pct},
                {"steady_state_error", metrics.steady_state_error}};
}

json slope_estimate_to_json(const SlopeEstimate& estimate) {
    return json{{"omega0", estimate.omega0},
                {"s_a", estimate.s_a},
                {"s_p", estimate.s_p},
                {"method", to_string(estimate.method)}};
}

json tune_report_to_json(const TuneReport& report) {
    json doc{{"method", report.method},
             {"controller", controller_to_json(report.controller)},
             {"design", design_report_to_json(report.design)},
             {"metrics", metrics_to_json(report.metrics)},
             {"inputs",
              {{"plant", plant_to_json(report.plant)},
               {"spec", spec_to_json(report.spec)},
               {"sim", sim_config_to_json(report.sim)},
               {"pade_order", report.pade_order}}},
             {"notes", report.notes}};
    if (!report.ga.is_null()) {
        doc["inputs"]["ga"] = report.ga;
    }
    return doc;
}

void write_step_csv(const std::string& path, const StepResult& result) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr) {
        throw std::runtime_error("cannot write file: " + path);
    }
    std::fputs("t,y,e\n", f);
    for (std::size_t i = 0; i < result.t.size(); ++i) {
        std::fprintf(f, "%.9g,%.9g,%.9g\n", result.t[i], result.y[i], result.e[i]);
    }
    std::fclose(f);
}

}  // namespace pidtune

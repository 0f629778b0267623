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

#include <string>
#include <vector>

#include "json.hpp"
#include "pidtune/ga_tuner.hpp"
#include "pidtune/lti.hpp"
#include "pidtune/pid.hpp"
#include "pidtune/simulate.hpp"
#include "pidtune/synthesis.hpp"

namespace pidtune {

using json = nlohmann::json;

// File formats. Angles cross this boundary in degrees (suffix _deg);
// everything behind it is radians.
//
//   plant:      {"num": [...], "den": [...], "delay": 0.1}      (descending powers)
//   spec:       {"wc": 0.4, "pm_deg": 50, "psi_deg": 65}
//   controller: {"kp": ..., "ti": ..., "td": ...}               (+ derived ki/kd on output)
//   ga config:  {"population": 50, "crossover_fraction": 0.9, ...}

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& doc);

DeadTimePlant plant_from_json(const json& doc);
json plant_to_json(const DeadTimePlant& plant);

DesignSpec spec_from_json(const json& doc);
json spec_to_json(const DesignSpec& spec);

PidController controller_from_json(const json& doc);
json controller_to_json(const PidController& controller);

/// Reads GA settings; "bounds" (object with kp/ki/kd [lo, hi] pairs) may be
/// omitted and filled in later from a reference controller.
GaConfig ga_config_from_json(const json& doc);
json ga_config_to_json(const GaConfig& config);

json sim_config_to_json(const SimConfig& config);
json design_report_to_json(const DesignReport& report);
json metrics_to_json(const Metrics& metrics);
json slope_estimate_to_json(const SlopeEstimate& estimate);

/// One tuning run's full machine-readable result.
struct TuneReport {
    std::string method;  // "bode-delay" | "pade" | "ga"
    PidController controller;
    DesignReport design;
    Metrics metrics;
    DeadTimePlant plant;
    DesignSpec spec;
    SimConfig sim;
    int pade_order = 1;
    json ga = json(nullptr);  // GA echo (config + result) for method "ga"
    std::vector<std::string> notes;
};

json tune_report_to_json(const TuneReport& report);

/// CSV with header "t,y,e", one row per sample, 9 significant digits.
void write_step_csv(const std::string& path, const StepResult& result);

}  // namespace pidtune

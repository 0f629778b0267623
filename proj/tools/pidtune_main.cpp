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

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "pidtune/bode_slopes.hpp"
#include "pidtune/ga_tuner.hpp"
#include "pidtune/json_io.hpp"
#include "pidtune/lti.hpp"
#include "pidtune/pade.hpp"
#include "pidtune/pid.hpp"
#include "pidtune/simulate.hpp"
#include "pidtune/svg.hpp"
#include "pidtune/synthesis.hpp"

namespace {

using namespace pidtune;

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

struct SimOptions {
    double dt = 0.01;
    double horizon = 60.0;
    double deriv_filter_n = 100.0;

    SimConfig to_config() const { return make_sim_config(dt, horizon, deriv_filter_n); }
};

void add_sim_options(CLI::App* cmd, SimOptions& opts) {
    cmd->add_option("--dt", opts.dt, "simulation step [s]")->capture_default_str();
    cmd->add_option("--horizon", opts.horizon, "simulation horizon [s]")->capture_default_str();
    cmd->add_option("--deriv-filter-n", opts.deriv_filter_n,
                    "derivative filter coefficient N")
        ->capture_default_str();
}

std::string svg_path_for(const std::string& csv_path) {
    std::filesystem::path p(csv_path);
    p.replace_extension(".svg");
    return p.string();
}

// One tuning pipeline; returns the report and the simulated trajectory.
struct PipelineOutput {
    TuneReport report;
    StepResult trajectory;
};

PipelineOutput run_pipeline(const std::string& method, const DeadTimePlant& plant,
                            const DesignSpec& spec, const SimConfig& sim, int pade_order,
                            GaConfig ga_config, bool ga_config_has_bounds) {
    std::vector<std::string> notes;
    json ga_echo(nullptr);

    std::optional<PidController> controller;
    if (method == "bode-delay") {
        const FrequencyPoint fp = freq_response(plant, spec.omega_c);
        const SlopeEstimate slopes = slopes_bode_delayed(plant, spec.omega_c);
        controller = synthesize_pid(fp.phase, fp.magnitude, slopes, spec);
    } else if (method == "pade" || method == "ga") {
        const RationalTf approx = rationalize(plant, pade_order);
        const DeadTimePlant delay_free{approx, 0.0};
        const FrequencyPoint fp = freq_response(delay_free, spec.omega_c);
        const SlopeEstimate slopes = slopes_bode(approx, spec.omega_c);
        const PidController reference = synthesize_pid(fp.phase, fp.magnitude, slopes, spec);
        if (pade_order == 0) {
            notes.push_back("delay ignored (order 0)");
        }
        if (method == "pade") {
            controller = reference;
        } else {
            if (!ga_config_has_bounds) {
                ga_config.bounds = derive_bounds(reference);
            }
            const GaResult result = evolve(plant, spec, sim, ga_config);
            controller = result.best.to_controller();
            GaConfig echoed = ga_config;
            echoed.seed = result.used_seed;
            ga_echo = json{{"config", ga_config_to_json(echoed)},
                           {"reproducible", result.seeded},
                           {"best", {{"kp", result.best.kp},
                                     {"ki", result.best.ki},
                                     {"kd", result.best.kd}}},
                           {"best_itae", result.best_itae},
                           {"best_slope_error", result.best_slope_error},
                           {"history", result.history}};
            if (!result.seeded) {
                notes.push_back("non-reproducible (seed drawn from entropy)");
            }
        }
    } else {
        throw std::invalid_argument("unknown method: " + method);
    }

    // Verification and metrics always target the true delayed plant.
    const DesignReport design = verify_design(plant, *controller, spec);
    StepResult trajectory = step_closed_loop(plant, *controller, sim);
    const Metrics metrics = compute_metrics(trajectory);
    if (trajectory.divergent) {
        notes.push_back("simulation divergent");
    }
    return PipelineOutput{TuneReport{method, *controller, design, metrics, plant, spec, sim,
                                     pade_order, std::move(ga_echo), std::move(notes)},
                          std::move(trajectory)};
}

int cmd_analyze(const std::string& plant_path, double wc) {
    const DeadTimePlant plant = plant_from_json(load_json_file(plant_path));
    const FrequencyPoint fp = freq_response(plant, wc);
    json doc{{"omega", fp.omega},
             {"magnitude", fp.magnitude},
             {"phase_rad", fp.phase},
             {"phase_deg", fp.phase * kDegPerRad},
             {"static_gain", static_gain(plant)},
             {"slopes",
              {{"exact", slope_estimate_to_json(slopes_exact(plant, wc))},
               {"bode", slope_estimate_to_json(slopes_bode(plant.tf, wc))},
               {"bode_delayed", slope_estimate_to_json(slopes_bode_delayed(plant, wc))}}}};
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_tune(const std::string& method, const std::string& plant_path,
             const std::string& spec_path, const std::string& out_path,
             const std::string& csv_path, bool svg, int pade_order,
             const std::string& ga_config_path, std::optional<std::uint64_t> seed,
             const SimOptions& sim_opts) {
    const DeadTimePlant plant = plant_from_json(load_json_file(plant_path));
    const DesignSpec spec = spec_from_json(load_json_file(spec_path));
    const SimConfig sim = sim_opts.to_config();

    GaConfig ga_config;
    bool has_bounds = false;
    if (!ga_config_path.empty()) {
        const json doc = load_json_file(ga_config_path);
        ga_config = ga_config_from_json(doc);
        has_bounds = doc.contains("bounds");
    }
    if (seed) {
        ga_config.seed = *seed;
    }

    PipelineOutput out = run_pipeline(method, plant, spec, sim, pade_order, ga_config, has_bounds);
    save_json_file(out_path, tune_report_to_json(out.report));
    if (!csv_path.empty()) {
        write_step_csv(csv_path, out.trajectory);
        if (svg) {
            write_svg_chart(svg_path_for(csv_path), "closed-loop step response (" + method + ")",
                            {{method, &out.trajectory.t, &out.trajectory.y}});
        }
    }
    std::cout << "tune " << method << ": kp=" << out.report.controller.kp()
              << " ti=" << out.report.controller.ti() << " td=" << out.report.controller.td()
              << " itae=" << out.report.metrics.itae << "\n";
    return 0;
}

int cmd_simulate(const std::string& plant_path, const std::string& controller_path,
                 const std::string& out_path, bool svg, const SimOptions& sim_opts) {
    const DeadTimePlant plant = plant_from_json(load_json_file(plant_path));
    const PidController controller = controller_from_json(load_json_file(controller_path));
    const StepResult result = step_closed_loop(plant, controller, sim_opts.to_config());
    write_step_csv(out_path, result);
    if (svg) {
        write_svg_chart(svg_path_for(out_path), "closed-loop step response",
                        {{"y(t)", &result.t, &result.y}});
    }
    json doc{{"metrics", metrics_to_json(compute_metrics(result))},
             {"divergent", result.divergent},
             {"dt", result.dt}};
    std::cout << doc.dump(2) << "\n";
    return 0;
}

int cmd_compare(const std::string& plant_path, const std::string& spec_path,
                const std::string& out_path, const std::string& csv_dir, bool svg, int pade_order,
                const std::string& ga_config_path, std::optional<std::uint64_t> seed,
                const SimOptions& sim_opts) {
    const DeadTimePlant plant = plant_from_json(load_json_file(plant_path));
    const DesignSpec spec = spec_from_json(load_json_file(spec_path));
    const SimConfig sim = sim_opts.to_config();

    GaConfig ga_config;
    bool has_bounds = false;
    if (!ga_config_path.empty()) {
        const json doc = load_json_file(ga_config_path);
        ga_config = ga_config_from_json(doc);
        has_bounds = doc.contains("bounds");
    }
    if (seed) {
        ga_config.seed = *seed;
    }

    std::filesystem::create_directories(csv_dir);

    json methods_doc;
    std::vector<std::pair<std::string, PipelineOutput>> outputs;
    for (const std::string method : {"bode-delay", "pade", "ga"}) {
        PipelineOutput out =
            run_pipeline(method, plant, spec, sim, pade_order, ga_config, has_bounds);
        write_step_csv((std::filesystem::path(csv_dir) / (method + ".csv")).string(),
                       out.trajectory);
        methods_doc[method] = tune_report_to_json(out.report);
        outputs.emplace_back(method, std::move(out));
    }

    std::vector<std::string> ranking{"bode-delay", "pade", "ga"};
    std::sort(ranking.begin(), ranking.end(),
              [&](const std::string& a, const std::string& b) {
                  const double ia = methods_doc[a]["metrics"]["itae"];
                  const double ib = methods_doc[b]["metrics"]["itae"];
                  return ia < ib;
              });

    json doc{{"plant", plant_to_json(plant)},
             {"spec", spec_to_json(spec)},
             {"sim", sim_config_to_json(sim)},
             {"methods", methods_doc},
             {"ranking_by_itae", ranking}};
    save_json_file(out_path, doc);

    if (svg) {
        std::vector<SvgSeries> series;
        for (const auto& [method, out] : outputs) {
            series.push_back({method, &out.trajectory.t, &out.trajectory.y});
        }
        write_svg_chart((std::filesystem::path(csv_dir) / "compare.svg").string(),
                        "closed-loop step responses", series);
    }

    std::cout << "method      itae       overshoot  pm_deg   slope_err\n";
    for (const auto& [method, out] : outputs) {
        std::printf("%-11s %-10.4f %-10.4f %-8.3f %.4f\n", method.c_str(),
                    out.report.metrics.itae, out.report.metrics.overshoot,
                    out.report.design.achieved_pm * kDegPerRad,
                    out.report.design.slope_error_fraction);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PID auto-tuning for dead-time plants: Bode-integral synthesis, "
                 "Pade rationalization, and GA/ITAE optimization"};
    app.require_subcommand(1);

    // analyze
    std::string plant_path, spec_path, out_path, csv_path, csv_dir, controller_path;
    std::string method = "pade", ga_config_path;
    double wc = 0.0;
    int pade_order = 1;
    bool svg = false;
    std::optional<std::uint64_t> seed;
    SimOptions sim_opts;

    auto* analyze = app.add_subcommand("analyze", "frequency point, static gain, slope estimates");
    analyze->add_option("--plant", plant_path, "plant JSON file")->required();
    analyze->add_option("--wc", wc, "frequency of interest [rad/s]")->required();

    auto* tune = app.add_subcommand("tune", "synthesize a controller and verify it");
    tune->add_option("--method", method, "bode-delay | pade | ga")
        ->check(CLI::IsMember({"bode-delay", "pade", "ga"}))
        ->required();
    tune->add_option("--plant", plant_path, "plant JSON file")->required();
    tune->add_option("--spec", spec_path, "design spec JSON file")->required();
    tune->add_option("--out", out_path, "report JSON output path")->required();
    tune->add_option("--csv", csv_path, "step-response CSV output path");
    tune->add_option("--pade-order", pade_order, "Pade order")->capture_default_str();
    tune->add_option("--ga-config", ga_config_path, "GA config JSON file");
    tune->add_option("--seed", seed, "GA seed (overrides config)");
    tune->add_flag("--svg", svg, "also emit an SVG chart next to the CSV");
    add_sim_options(tune, sim_opts);

    auto* simulate = app.add_subcommand("simulate", "closed-loop step response to CSV");
    simulate->add_option("--plant", plant_path, "plant JSON file")->required();
    simulate->add_option("--controller", controller_path, "controller JSON file")->required();
    simulate->add_option("--out", out_path, "CSV output path")->required();
    simulate->add_flag("--svg", svg, "also emit an SVG chart next to the CSV");
    add_sim_options(simulate, sim_opts);

    auto* compare = app.add_subcommand("compare", "run all three methods side by side");
    compare->add_option("--plant", plant_path, "plant JSON file")->required();
    compare->add_option("--spec", spec_path, "design spec JSON file")->required();
    compare->add_option("--out", out_path, "comparison JSON output path")->required();
    compare->add_option("--csv-dir", csv_dir, "directory for per-method CSV files")->required();
    compare->add_option("--pade-order", pade_order, "Pade order")->capture_default_str();
    compare->add_option("--ga-config", ga_config_path, "GA config JSON file");
    compare->add_option("--seed", seed, "GA seed (overrides config)");
    compare->add_flag("--svg", svg, "also emit a combined SVG chart into csv-dir");
    add_sim_options(compare, sim_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return 2;
    }

    try {
        if (analyze->parsed()) {
            return cmd_analyze(plant_path, wc);
        }
        if (tune->parsed()) {
            return cmd_tune(method, plant_path, spec_path, out_path, csv_path, svg, pade_order,
                            ga_config_path, seed, sim_opts);
        }
        if (simulate->parsed()) {
            return cmd_simulate(plant_path, controller_path, out_path, svg, sim_opts);
        }
        if (compare->parsed()) {
            return cmd_compare(plant_path, spec_path, out_path, csv_dir, svg, pade_order,
                               ga_config_path, seed, sim_opts);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

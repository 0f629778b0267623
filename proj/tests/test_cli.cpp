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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "pidtune/json_io.hpp"
#include "schema_check.hpp"
#include "test_util.hpp"

using namespace pidtune;
using namespace testutil;
namespace fs = std::filesystem;

namespace {

#ifndef PIDTUNE_CLI_PATH
#error "PIDTUNE_CLI_PATH must be defined by the build"
#endif
#ifndef PIDTUNE_SCHEMA_DIR
#error "PIDTUNE_SCHEMA_DIR must be defined by the build"
#endif

const char* kCli = PIDTUNE_CLI_PATH;
const char* kSchemaDir = PIDTUNE_SCHEMA_DIR;

struct RunResult {
    int exit_code;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(kCli) + " " + args + " 2>/dev/null";
    std::FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::fgets(buf, sizeof(buf), pipe) != nullptr) {
        out += buf;
    }
    const int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), out};
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "pidtune_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    return path;
}

fs::path bench_plant_file() {
    return write_file(scratch_dir() / "plant.json",
                      R"({"num": [1], "den": [1, 5, 10, 10, 5, 1], "delay": 0.1})");
}

fs::path bench_spec_file() {
    return write_file(scratch_dir() / "spec.json", R"({"wc": 0.4, "pm_deg": 50, "psi_deg": 65})");
}

}  // namespace

TEST_CASE("analyze emits the frequency point, static gain, and all three slope estimates") {
    const auto plant = bench_plant_file();
    const RunResult res = run_cli("analyze --plant " + plant.string() + " --wc 0.4");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.stdout_text);
    CHECK(doc["static_gain"].get<double>() == doctest::Approx(1.0));
    CHECK(doc["magnitude"].get<double>() == doctest::Approx(std::pow(1.16, -2.5)).epsilon(1e-9));
    CHECK(doc["slopes"]["exact"]["method"] == "exact");
    CHECK(doc["slopes"]["bode"]["method"] == "bode");
    CHECK(doc["slopes"]["bode_delayed"]["method"] == "bode_delayed");
    CHECK(doc["slopes"]["bode_delayed"]["s_a"].get<double>() ==
          doctest::Approx(-1.2111894).epsilon(1e-4));
}

TEST_CASE("analyze on the unity plant: zero slopes, unit gain") {
    const auto plant = write_file(scratch_dir() / "unity.json",
                                  R"({"num": [1], "den": [1], "delay": 0})");
    const RunResult res = run_cli("analyze --plant " + plant.string() + " --wc 1.0");
    REQUIRE(res.exit_code == 0);
    const json doc = json::parse(res.stdout_text);
    CHECK(doc["static_gain"].get<double>() == 1.0);
    for (const char* method : {"exact", "bode", "bode_delayed"}) {
        CHECK(std::abs(doc["slopes"][method]["s_a"].get<double>()) < 1e-9);
        CHECK(std::abs(doc["slopes"][method]["s_p"].get<double>()) < 1e-9);
    }
}

TEST_CASE("tune --method pade writes a schema-valid report matching the reference values") {
    const auto dir = scratch_dir();
    const auto report_path = dir / "report.json";
    const RunResult res = run_cli("tune --method pade --plant " + bench_plant_file().string() +
                                  " --spec " + bench_spec_file().string() + " --out " +
                                  report_path.string() + " --csv " + (dir / "step.csv").string() +
                                  " --svg");
    REQUIRE(res.exit_code == 0);
    const json report = load_json_file(report_path.string());

    const json schema =
        load_json_file((fs::path(kSchemaDir) / "tune_report.schema.json").string());
    std::string error;
    CHECK_MESSAGE(schemacheck::validate(schema, report, &error), error);

    CHECK(report["method"] == "pade");
    CHECK(report["controller"]["kp"].get<double>() == doctest::Approx(1.3726).epsilon(0.01));
    CHECK(report["controller"]["ti"].get<double>() == doctest::Approx(2.86).epsilon(0.02));
    CHECK(report["controller"]["td"].get<double>() == doctest::Approx(1.3327).epsilon(0.02));
    CHECK(report["design"]["achieved_pm_deg"].get<double>() ==
          doctest::Approx(50.0).epsilon(0.02));
    CHECK(fs::exists(dir / "step.csv"));
    CHECK(fs::exists(dir / "step.svg"));

    // CSV format: header + t,y,e rows.
    std::ifstream csv(dir / "step.csv");
    std::string line;
    std::getline(csv, line);
    CHECK(line == "t,y,e");
    std::getline(csv, line);
    CHECK(line.substr(0, 2) == "0,");
}

TEST_CASE("tune --method pade --pade-order 0 flags that the delay was ignored") {
    const auto dir = scratch_dir();
    const auto report_path = dir / "report_r0.json";
    const RunResult res = run_cli("tune --method pade --pade-order 0 --plant " +
                                  bench_plant_file().string() + " --spec " +
                                  bench_spec_file().string() + " --out " + report_path.string());
    REQUIRE(res.exit_code == 0);
    const json report = load_json_file(report_path.string());
    bool found = false;
    for (const auto& note : report["notes"]) {
        found = found || note.get<std::string>().find("delay ignored") != std::string::npos;
    }
    CHECK(found);
}

TEST_CASE("controller JSON round-trips through simulate with bit-identical metrics") {
    const auto dir = scratch_dir();
    const auto report_path = dir / "report_rt.json";
    REQUIRE(run_cli("tune --method bode-delay --plant " + bench_plant_file().string() +
                    " --spec " + bench_spec_file().string() + " --out " + report_path.string())
                .exit_code == 0);
    const json report = load_json_file(report_path.string());

    const auto ctrl_path = dir / "ctrl_rt.json";
    save_json_file(ctrl_path.string(), report["controller"]);

    const RunResult sim = run_cli("simulate --plant " + bench_plant_file().string() +
                                  " --controller " + ctrl_path.string() + " --out " +
                                  (dir / "rt.csv").string());
    REQUIRE(sim.exit_code == 0);
    const json metrics = json::parse(sim.stdout_text)["metrics"];
    // Bit-identical: the JSON writer round-trips doubles exactly.
    CHECK(metrics["itae"] == report["metrics"]["itae"]);
    CHECK(metrics["overshoot"] == report["metrics"]["overshoot"]);
    CHECK(metrics["settling_time_2pct"] == report["metrics"]["settling_time_2pct"]);
    CHECK(metrics["steady_state_error"] == report["metrics"]["steady_state_error"]);
}

TEST_CASE("compare runs all three methods deterministically with a fixed seed") {
    const auto dir = scratch_dir();
    const auto ga_cfg = write_file(dir / "ga_small.json",
                                   R"({"population": 8, "generations": 2, "seed": 11})");
    const std::string base = "compare --plant " + bench_plant_file().string() + " --spec " +
                             bench_spec_file().string() + " --ga-config " + ga_cfg.string() +
                             " --csv-dir " + (dir / "cmp_csv").string() + " --svg --out ";
    const auto out1 = dir / "cmp1.json";
    const auto out2 = dir / "cmp2.json";
    REQUIRE(run_cli(base + out1.string()).exit_code == 0);
    REQUIRE(run_cli(base + out2.string()).exit_code == 0);

    std::ifstream f1(out1), f2(out2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());

    const json doc = json::parse(s1.str());
    for (const char* m : {"bode-delay", "pade", "ga"}) {
        CHECK(doc["methods"].contains(m));
    }
    CHECK(fs::exists(dir / "cmp_csv" / "bode-delay.csv"));
    CHECK(fs::exists(dir / "cmp_csv" / "pade.csv"));
    CHECK(fs::exists(dir / "cmp_csv" / "ga.csv"));
    CHECK(fs::exists(dir / "cmp_csv" / "compare.svg"));

    // The SVG is a plain line chart with one polyline per method.
    std::ifstream svg(dir / "cmp_csv" / "compare.svg");
    std::stringstream svg_text;
    svg_text << svg.rdbuf();
    std::size_t polylines = 0;
    std::string text = svg_text.str();
    for (std::size_t pos = text.find("<polyline"); pos != std::string::npos;
         pos = text.find("<polyline", pos + 1)) {
        ++polylines;
    }
    CHECK(polylines == 3);
}

TEST_CASE("argument errors exit 2, module errors exit 1") {
    CHECK(run_cli("tune --method nonsense --plant x --spec y --out z").exit_code == 2);
    CHECK(run_cli("bogus-subcommand").exit_code == 2);
    const auto bad_plant = write_file(scratch_dir() / "bad.json",
                                      R"({"num": [1], "den": [0], "delay": 0})");
    CHECK(run_cli("analyze --plant " + bad_plant.string() + " --wc 0.4").exit_code == 1);
    const auto missing = scratch_dir() / "does_not_exist.json";
    CHECK(run_cli("analyze --plant " + missing.string() + " --wc 0.4").exit_code == 1);
}

TEST_CASE("plant and controller JSON parsing errors are informative") {
    CHECK_THROWS_AS(plant_from_json(json{{"num", json::array()}, {"den", {1.0}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(plant_from_json(json{{"den", {1.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(controller_from_json(json{{"kp", 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(spec_from_json(json{{"wc", 0.4}, {"pm_deg", 50}}), std::invalid_argument);
    // Angles cross the CLI boundary in degrees.
    const DesignSpec spec = spec_from_json(json{{"wc", 0.4}, {"pm_deg", 50}, {"psi_deg", 65}});
    CHECK(spec.phi_d == doctest::Approx(rad(50.0)));
    CHECK(spec.psi_d == doctest::Approx(rad(65.0)));
}

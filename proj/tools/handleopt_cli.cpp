// Copyright 2026 The handleopt Authors
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

// handleopt command-line tool. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "handleopt/handleopt.h"

namespace {

enum Exit { kOk = 0, kValidation = 1, kIoParse = 2, kNumerical = 3 };

int exit_code_for(ho_status status) {
  switch (status) {
    case HO_OK: return kOk;
    case HO_ERR_VALIDATION:
    case HO_ERR_INVALID_ARGUMENT:
    case HO_ERR_INDEX_OUT_OF_RANGE: return kValidation;
    case HO_ERR_IO:
    case HO_ERR_PARSE:
    case HO_ERR_SCHEMA: return kIoParse;
    default: return kNumerical;
  }
}

// Single line, greppable: "error: E_CODE: message".
int report_failure(ho_status status) {
  std::string msg = ho_last_error_message();
  for (char& c : msg) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::fprintf(stderr, "error: %s: %s\n", ho_status_name(status), msg.c_str());
  return exit_code_for(status);
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Scenario = Handle<ho_scenario, ho_scenario_free>;
using Result = Handle<ho_result, ho_result_free>;
using Findings = Handle<ho_findings, ho_findings_free>;

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { ho_string_free(ptr); }
};

struct Options {
  std::string scenario;
  std::string out = ".";
  std::optional<double> grid_step_deg;
  std::optional<double> a;
  std::string force_model;
  std::vector<double> tau;
  std::vector<double> limits_deg;
  std::string com_divisor;
  bool constrained = false;
  std::optional<std::size_t> frame;
  bool no_placement = false;
  std::string sweep_param = "a";
  std::vector<double> sweep_values{0.0, 1.0, 11.0};
  unsigned threads = 0;
  int verbosity = 0;
};

void log(const Options& opt, const char* what, const std::string& detail) {
  if (opt.verbosity > 0) std::fprintf(stderr, "[handleopt] %s %s\n", what, detail.c_str());
}

ho_status load(const Options& opt, Scenario& scenario) {
  log(opt, "loading", opt.scenario);
  ho_status st = ho_scenario_load(opt.scenario.c_str(), scenario.out());
  if (st != HO_OK) return st;

  ho_overrides ov;
  ho_overrides_init(&ov);
  if (opt.grid_step_deg) { ov.has_grid_step = 1; ov.grid_step_deg = *opt.grid_step_deg; }
  if (opt.a) { ov.has_a = 1; ov.a = *opt.a; }
  if (!opt.force_model.empty()) {
    ov.has_force_model = 1;
    ov.force_model = opt.force_model == "lsq" ? HO_FORCE_LSQ : HO_FORCE_EXPANDED;
  }
  if (!opt.tau.empty()) {
    ov.has_torques = 1;
    for (int i = 0; i < 3; ++i) ov.torque_magnitudes_nm[i] = opt.tau[i];
  }
  if (!opt.limits_deg.empty()) {
    ov.has_limits = 1;
    for (int i = 0; i < 4; ++i) ov.limits_deg[i] = opt.limits_deg[i];
  }
  if (!opt.com_divisor.empty()) {
    ov.has_com_divisor = 1;
    ov.com_divisor = opt.com_divisor == "nonarm" ? HO_COM_NONARM_MASS : HO_COM_TOTAL_MASS;
  }
  ov.constrained = opt.constrained ? 1 : 0;
  ov.threads = opt.threads;
  return ho_scenario_apply_overrides(scenario.get(), &ov);
}

int ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: E_IO: cannot create %s: %s\n", dir.c_str(), ec.message().c_str());
    return kIoParse;
  }
  return kOk;
}

int run_validate(const Options& opt) {
  Scenario scenario;
  if (ho_status st = load(opt, scenario); st != HO_OK) return report_failure(st);
  Findings findings;
  if (ho_status st = ho_scenario_validate(scenario.get(), findings.out()); st != HO_OK) {
    return report_failure(st);
  }
  const size_t n = ho_findings_count(findings.get());
  for (size_t i = 0; i < n; ++i) {
    int is_error = 0;
    const char* code = nullptr;
    const char* message = nullptr;
    ho_findings_get(findings.get(), i, &is_error, &code, &message);
    std::printf("%s %s: %s\n", is_error ? "error" : "warning", code, message);
  }
  const size_t errors = ho_findings_error_count(findings.get());
  std::printf("%s: %zu error(s), %zu warning(s)\n", ho_scenario_name(scenario.get()), errors,
              n - errors);
  if (errors > 0) {
    std::fprintf(stderr, "error: E_VALIDATION: scenario has %zu error(s)\n", errors);
    return kValidation;
  }
  return kOk;
}

int run_analyze(const Options& opt) {
  Scenario scenario;
  if (ho_status st = load(opt, scenario); st != HO_OK) return report_failure(st);
  const size_t frames = ho_scenario_frame_count(scenario.get());
  std::printf("frame,time_s,com_x_m,com_y_m\n");
  for (size_t i = 0; i < frames; ++i) {
    double t = 0.0;
    double c[2];
    if (ho_status st = ho_scenario_frame_com(scenario.get(), i, &t, c); st != HO_OK) {
      return report_failure(st);
    }
    std::printf("%zu,%.9g,%.9g,%.9g\n", i, t, c[0], c[1]);
  }
  const size_t index = opt.frame ? *opt.frame : ho_scenario_max_effort_index(scenario.get());
  ho_com_state state;
  if (ho_status st = ho_scenario_com_state(scenario.get(), index, &state); st != HO_OK) {
    return report_failure(st);
  }
  std::printf("com_state frame %zu: position_m %.9g %.9g direction %.9g %.9g speed_mps %.9g\n",
              index, state.position_m[0], state.position_m[1], state.direction[0],
              state.direction[1], state.speed_mps);
  return kOk;
}

void print_placement(const ho_result* result) {
  ho_placement_info p;
  ho_result_placement(result, &p);
  std::printf("theta5_deg %.9g\ntheta6_deg %.9g\nhandle_m %.9g %.9g\nobjective %.9g\n"
              "f_arm_n %.9g %.9g\ntorque_signs %d %d %d\n",
              p.theta5_deg, p.theta6_deg, p.handle_m[0], p.handle_m[1], p.objective,
              p.f_arm_n[0], p.f_arm_n[1], p.torque_signs[0], p.torque_signs[1],
              p.torque_signs[2]);
  for (size_t i = 0; i < p.violation_count; ++i) {
    const char* code = nullptr;
    const char* message = nullptr;
    ho_result_violation(result, i, &code, &message);
    std::printf("feasibility %s: %s\n", code, message);
  }
}

int run_optimize(const Options& opt) {
  Scenario scenario;
  if (ho_status st = load(opt, scenario); st != HO_OK) return report_failure(st);
  Result result;
  log(opt, "optimizing", ho_scenario_name(scenario.get()));
  if (ho_status st = ho_optimize(scenario.get(), result.out()); st != HO_OK) {
    return report_failure(st);
  }
  if (int rc = ensure_dir(opt.out); rc != kOk) return rc;
  if (ho_status st = ho_write_report(scenario.get(), result.get(), opt.out.c_str()); st != HO_OK) {
    return report_failure(st);
  }
  print_placement(result.get());
  log(opt, "wrote", opt.out + "/report.json and landscape.csv");
  return kOk;
}

int run_sweep(const Options& opt) {
  Scenario base;
  if (ho_status st = load(opt, base); st != HO_OK) return report_failure(st);
  if (opt.sweep_values.size() != 3 || opt.sweep_values[2] < 1.0 ||
      opt.sweep_values[2] != std::floor(opt.sweep_values[2])) {
    std::fprintf(stderr, "error: E_INVALID_ARGUMENT: --sweep-values needs FROM,TO,COUNT with "
                         "an integer COUNT >= 1\n");
    return kValidation;
  }
  if (int rc = ensure_dir(opt.out); rc != kOk) return rc;
  const auto count = static_cast<size_t>(opt.sweep_values[2]);
  std::string table = "param,value,theta5_deg,theta6_deg,objective,handle_x_m,handle_y_m\n";
  std::printf("%s", table.c_str());
  for (size_t i = 0; i < count; ++i) {
    const double value =
        count == 1 ? opt.sweep_values[0]
                   : opt.sweep_values[0] + (opt.sweep_values[1] - opt.sweep_values[0]) *
                                               static_cast<double>(i) / static_cast<double>(count - 1);
    Scenario scenario;
    if (ho_status st = ho_scenario_clone(base.get(), scenario.out()); st != HO_OK) {
      return report_failure(st);
    }
    ho_overrides ov;
    ho_overrides_init(&ov);
    if (opt.sweep_param == "a") {
      ov.has_a = 1;
      ov.a = value;
    } else {
      // tau5 / tau6 / tau7: vary one magnitude, keep the others
      const int k = opt.sweep_param[3] - '5';
      ov.has_torques = 1;
      for (int j = 0; j < 3; ++j) ov.torque_magnitudes_nm[j] = opt.tau.empty() ? 1.0 : opt.tau[j];
      ov.torque_magnitudes_nm[k] = value;
    }
    if (ho_status st = ho_scenario_apply_overrides(scenario.get(), &ov); st != HO_OK) {
      return report_failure(st);
    }
    Result result;
    if (ho_status st = ho_optimize(scenario.get(), result.out()); st != HO_OK) {
      return report_failure(st);
    }
    const std::string stem = opt.out + "/landscape_" + std::to_string(i);
    if (ho_status st = ho_write_landscape_csv(result.get(), (stem + ".csv").c_str()); st != HO_OK) {
      return report_failure(st);
    }
    OwnedString svg;
    if (ho_status st = ho_render_landscape(result.get(), &svg.ptr); st != HO_OK) {
      return report_failure(st);
    }
    if (ho_status st = ho_write_text((stem + ".svg").c_str(), svg.ptr); st != HO_OK) {
      return report_failure(st);
    }
    ho_placement_info p;
    ho_result_placement(result.get(), &p);
    char row[256];
    std::snprintf(row, sizeof row, "%s,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", opt.sweep_param.c_str(),
                  value, p.theta5_deg, p.theta6_deg, p.objective, p.handle_m[0], p.handle_m[1]);
    table += row;
    std::printf("%s", row);
  }
  if (ho_status st = ho_write_text((opt.out + "/sweep.csv").c_str(), table.c_str()); st != HO_OK) {
    return report_failure(st);
  }
  return kOk;
}

int run_render(const Options& opt) {
  Scenario scenario;
  if (ho_status st = load(opt, scenario); st != HO_OK) return report_failure(st);
  const size_t max_effort = ho_scenario_max_effort_index(scenario.get());
  const size_t frame = opt.frame ? *opt.frame : max_effort;
  Result result;
  if (frame == max_effort && !opt.no_placement) {
    if (ho_status st = ho_optimize(scenario.get(), result.out()); st != HO_OK) {
      return report_failure(st);
    }
  }
  OwnedString svg;
  if (ho_status st = ho_render_scene(scenario.get(), frame, result.get(), &svg.ptr); st != HO_OK) {
    return report_failure(st);
  }
  if (int rc = ensure_dir(opt.out); rc != kOk) return rc;
  const std::string path = opt.out + "/scene.svg";
  if (ho_status st = ho_write_text(path.c_str(), svg.ptr); st != HO_OK) return report_failure(st);
  std::printf("wrote %s\n", path.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Handlebar placement optimizer for postural-change support"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--scenario", opt.scenario, "Scenario JSON file")->required();
  app.add_option("--out", opt.out, "Output directory");
  app.add_option("--grid-step-deg", opt.grid_step_deg, "Grid step in degrees");
  app.add_option("--a", opt.a, "Weight of the |cos theta6| penalty");
  app.add_option("--force-model", opt.force_model, "Force model")
      ->check(CLI::IsMember({"expanded", "lsq"}));
  app.add_option("--tau", opt.tau, "Torque magnitudes |tau5|,|tau6|,|tau7| in N m")
      ->delimiter(',')
      ->expected(3);
  app.add_option("--limits-deg", opt.limits_deg, "theta5 min,max,theta6 min,max in degrees")
      ->delimiter(',')
      ->expected(4);
  app.add_option("--com-divisor", opt.com_divisor, "Mass dividing the COM sum")
      ->check(CLI::IsMember({"total", "nonarm"}));
  app.add_flag("--constrained", opt.constrained, "Exclude robot-infeasible handle positions");
  app.add_option("--frame", opt.frame, "Frame index (analyze, render)");
  app.add_option("--threads", opt.threads, "Worker threads for the grid search");
  app.add_flag("-v,--verbose", opt.verbosity, "Progress messages on stderr");

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  auto* analyze = app.add_subcommand("analyze", "Per-frame COM table and max-effort COM state");
  auto* optimize = app.add_subcommand("optimize", "Write report.json and landscape.csv");
  auto* sweep = app.add_subcommand("sweep", "Optimize over a range of one parameter");
  sweep->add_option("--sweep-param", opt.sweep_param, "Parameter to vary")
      ->check(CLI::IsMember({"a", "tau5", "tau6", "tau7"}));
  sweep->add_option("--sweep-values", opt.sweep_values, "FROM,TO,COUNT")
      ->delimiter(',')
      ->expected(3);
  auto* render = app.add_subcommand("render", "Write scene.svg");
  render->add_flag("--no-placement", opt.no_placement, "Do not draw the optimal arm and handle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n') c = ' ';
    }
    std::fprintf(stderr, "error: E_USAGE: %s\n", msg.c_str());
    return kIoParse;
  }

  if (*validate) return run_validate(opt);
  if (*analyze) return run_analyze(opt);
  if (*optimize) return run_optimize(opt);
  if (*sweep) return run_sweep(opt);
  if (*render) return run_render(opt);
  return kValidation;
}

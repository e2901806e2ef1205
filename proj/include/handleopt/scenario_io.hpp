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

#ifndef HANDLEOPT_SCENARIO_IO_HPP_
#define HANDLEOPT_SCENARIO_IO_HPP_

// Scenario files, validation and placement reports.
//
// A scenario is a UTF-8 JSON document (schema_version "1") holding the
// anthropometry, a timed pose sequence, the max-effort frame, joint limits,
// objective settings and robot parameters. Angles are in degrees and lengths
// in meters on disk; everything is converted to radians on load. Unknown
// fields are rejected.

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "handleopt/body_model.hpp"
#include "handleopt/finding.hpp"
#include "handleopt/placement.hpp"

namespace handleopt {

inline constexpr std::string_view kScenarioSchemaVersion = "1";
inline constexpr std::string_view kReportVersion = "1";
inline constexpr std::string_view kLandscapeHeader = "theta5_deg,theta6_deg,objective,feasible";

// Below this COM speed at the max-effort frame a warning is issued.
inline constexpr double kSlowComSpeed = 1e-3;

struct Scenario {
  std::string name;
  SegmentSet segments;
  std::vector<PoseFrame> frames;
  std::size_t max_effort_index = 1;
  JointLimits limits;
  ObjectiveConfig objective;
  RobotParams robot;
  double floor_y = 0.0;
  ComDivisor com_divisor = ComDivisor::kTotalMass;
};

// Throws Error with kIo, kParse, kSchema or kValidation. Validation errors
// name the violated rule, e.g. "mass_closure: ...".
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(std::string_view json_text);

std::string scenario_to_json(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

// Reads a bare anthropometry document ({total_mass_kg, segments[7]}).
SegmentSet load_anthropometry(const std::filesystem::path& path);

// Errors for invariant breaches and warnings for suspicious but legal input.
std::vector<Finding> validate_scenario(const Scenario& scenario);

// Shoulder frame and COM state at the max-effort frame.
PlacementContext make_context(const Scenario& scenario);

// Command-line style overrides applied on top of a loaded scenario.
struct Overrides {
  std::optional<double> grid_step_deg;
  std::optional<double> a;
  std::optional<ForceModel> force_model;
  std::optional<std::array<double, 3>> torque_magnitudes;
  std::optional<std::array<double, 4>> limits_deg;  // theta5 min, max, theta6 min, max
  std::optional<ComDivisor> com_divisor;
};

void apply_overrides(Scenario& scenario, const Overrides& overrides);

std::string_view force_model_name(ForceModel model);
std::optional<ForceModel> parse_force_model(std::string_view name);
std::string_view com_divisor_name(ComDivisor divisor);
std::optional<ComDivisor> parse_com_divisor(std::string_view name);

// The landscape table: kLandscapeHeader, then one row per grid point.
std::string landscape_csv(const Landscape& landscape);

struct ForceModelValue {
  std::optional<Vec2> f_arm;
  std::optional<double> directed;
  std::optional<std::array<int, 3>> torque_signs;
  std::string error;  // set when the model fails at the optimum
};

// Contents of report.json, as written and as read back.
struct PlacementReport {
  std::string scenario;
  std::size_t max_effort_index = 0;
  Vec2 com;
  Vec2 com_direction;
  double com_speed = 0.0;
  Vec2 shoulder;
  double theta_04_deg = 0.0;
  double theta5_deg = 0.0;
  double theta6_deg = 0.0;
  Vec2 handle;
  double objective = 0.0;
  std::array<int, 3> torque_signs{};
  Vec2 f_arm;
  double mechanical_advantage = 0.0;
  double directed_advantage = 0.0;
  ForceModelValue expanded;
  ForceModelValue least_squares;
  double a = 0.0;
  std::array<double, 3> torque_magnitudes{};
  std::string force_model;
  double grid_step_deg = 0.0;
  bool constrained = false;
  std::array<double, 4> limits_deg{};
  std::size_t theta5_count = 0;
  std::size_t theta6_count = 0;
  std::size_t feasible_count = 0;
  std::vector<Violation> feasibility;
};

PlacementReport make_report(const Scenario& scenario, const OptimizationResult& result,
                            bool constrained);
std::string report_to_json(const PlacementReport& report);
PlacementReport parse_report(std::string_view json_text);
PlacementReport read_placement_report(const std::filesystem::path& path);

struct ReportFiles {
  std::filesystem::path report;
  std::filesystem::path landscape;
};

// Writes report.json and landscape.csv into out_dir (created if missing).
ReportFiles write_placement_report(const Scenario& scenario, const OptimizationResult& result,
                                   const std::filesystem::path& out_dir, bool constrained);

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace handleopt

#endif  // HANDLEOPT_SCENARIO_IO_HPP_

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

#ifndef HANDLEOPT_PLACEMENT_HPP_
#define HANDLEOPT_PLACEMENT_HPP_

// Exhaustive search for the handle placement that maximizes
//
//   J(theta5, theta6) = F_arm . v_com - a |cos theta6|
//
// over a regular grid of shoulder and elbow angles.

#include <array>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "handleopt/arm_kinetics.hpp"
#include "handleopt/body_model.hpp"
#include "handleopt/finding.hpp"
#include "handleopt/vec2.hpp"

namespace handleopt {

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

// The elbow range must stay this far from full extension and full fold.
inline constexpr double kElbowLimitMargin = deg_to_rad(2.0);

struct JointLimits {
  double theta5_min = deg_to_rad(-60.0);
  double theta5_max = deg_to_rad(185.0);
  double theta6_min = deg_to_rad(5.0);
  double theta6_max = deg_to_rad(175.0);
};

std::vector<Finding> check_limits(const JointLimits& limits);

enum class ForceModel { kExpanded, kLeastSquares };

struct ObjectiveConfig {
  double a = 0.2;
  std::array<double, 3> torque_magnitudes{1.0, 1.0, 1.0};  // |tau5|, |tau6|, |tau7|
  ForceModel force_model = ForceModel::kExpanded;
  double grid_step = deg_to_rad(0.5);
};

std::vector<Finding> check_objective(const ObjectiveConfig& config);

struct RobotParams {
  double reach_limit = 0.44;  // m, horizontal
  double handle_height_min = 0.2;
  double handle_height_max = 1.5;  // m above the floor
  double handle_length = 0.46;
  double handle_diameter = 0.038;
  // x of the robot arm's vertical axis; the reach check is skipped without it.
  std::optional<double> base_x;
};

std::vector<Finding> check_robot(const RobotParams& robot);

// Everything the objective needs about the body at the max-effort frame.
struct PlacementContext {
  ShoulderFrame shoulder;
  ComState com;
  SegmentSet segments;
};

// Sign rule for the per-joint sum: s_i = +1 when the push direction of
// joint i has a non-negative component along v, else -1. Each term of F.v is
// then non-negative, which maximizes F.v over the 8 sign patterns.
TorqueSet torque_signs(const VirtualChain& chain, const Vec2& v,
                       const std::array<double, 3>& magnitudes);

// Signed torques maximizing F.v under `model`. For kExpanded this is
// torque_signs; for kLeastSquares the signs follow J^T (J J^T)^-1 v.
TorqueSet select_torques(const VirtualChain& chain, const Vec2& v,
                         const std::array<double, 3>& magnitudes, ForceModel model);

Vec2 arm_force(const VirtualChain& chain, const TorqueSet& torques, ForceModel model);

struct PointEvaluation {
  VirtualChain chain;
  TorqueSet torques;
  Vec2 f_arm;
  double directed = 0.0;  // F_arm . v
  double objective = 0.0;
};

// Full evaluation at one (theta5, theta6). Throws kSingularChain or
// kIllConditioned for unusable configurations.
PointEvaluation evaluate_point(const PlacementContext& ctx, double theta5, double theta6,
                               const ObjectiveConfig& config);

double objective(const PlacementContext& ctx, double theta5, double theta6,
                 const ObjectiveConfig& config);

Vec2 handle_position(const Vec2& shoulder, double theta_04, double theta5, double theta6,
                     const SegmentSet& segments);

// Grid coordinates in degrees: lo, lo + step, ... up to hi. Values are
// snapped to 1e-9 degree so a grid and its refinement share points exactly.
std::vector<double> grid_axis_deg(double lo_deg, double hi_deg, double step_deg);

struct Violation {
  std::string code;  // "robot_reach", "handle_height", "arm_reach"
  std::string message;
};

struct Placement {
  double theta5 = 0.0;  // rad
  double theta6 = 0.0;  // rad
  double theta5_deg = 0.0;  // exact grid coordinate
  double theta6_deg = 0.0;
  Vec2 handle;
  double objective_value = 0.0;
  Vec2 f_arm;
  std::array<int, 3> torque_signs{1, 1, 1};  // (s5, s6, s7)
  Vec2 shoulder;
  double arm_reach = 0.0;
  std::vector<Violation> feasibility;
};

std::vector<Violation> feasibility_check(const Placement& placement, const RobotParams& robot,
                                         double floor_y);

struct LandscapeCell {
  double objective = 0.0;  // NaN when not evaluable
  bool evaluable = false;  // chain not singular
  bool feasible = false;   // evaluable and, in constrained mode, passes robot checks
};

// Objective values on the search grid, theta5-major.
struct Landscape {
  std::vector<double> theta5_deg;
  std::vector<double> theta6_deg;
  std::vector<LandscapeCell> cells;

  const LandscapeCell& at(std::size_t i5, std::size_t i6) const {
    return cells[i5 * theta6_deg.size() + i6];
  }
};

struct OptimizeOptions {
  bool constrained = false;  // drop grid points that fail the robot checks
  double floor_y = 0.0;
  unsigned threads = 0;      // 0: hardware concurrency
};

struct OptimizationResult {
  Placement placement;
  Landscape landscape;
};

// Evaluates every grid point inside `limits` and returns the argmax. Ties go
// to the smaller theta6, then the smaller theta5. Robot feasibility is
// reported on the placement; it restricts the search only in constrained
// mode. Throws Error(kNoFeasiblePoint) when nothing on the grid qualifies.
OptimizationResult optimize_placement(const PlacementContext& ctx, const JointLimits& limits,
                                      const ObjectiveConfig& config, const RobotParams& robot,
                                      const OptimizeOptions& options = {});

}  // namespace handleopt

#endif  // HANDLEOPT_PLACEMENT_HPP_

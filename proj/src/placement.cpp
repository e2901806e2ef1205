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

#include "handleopt/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "handleopt/error.hpp"

namespace handleopt {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGridSnap = 1e9;  // grid coordinates are multiples of 1e-9 degree

double snap_deg(double deg) { return std::round(deg * kGridSnap) / kGridSnap; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

Finding error(std::string code, std::string message) {
  return {Severity::kError, std::move(code), std::move(message)};
}

bool finite_all(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

std::vector<Finding> check_limits(const JointLimits& l) {
  std::vector<Finding> out;
  if (!finite_all({l.theta5_min, l.theta5_max, l.theta6_min, l.theta6_max})) {
    out.push_back(error("joint_limits", "joint limits must be finite"));
    return out;
  }
  if (!(l.theta5_min < l.theta5_max)) {
    out.push_back(error("joint_limits", "theta5 range is empty (min must be < max)"));
  } else if (l.theta5_max - l.theta5_min > 2.0 * kPi) {
    out.push_back(error("joint_limits", "theta5 range spans more than a full turn"));
  }
  if (!(l.theta6_min < l.theta6_max)) {
    out.push_back(error("joint_limits", "theta6 range is empty (min must be < max)"));
  } else {
    const double lo = kElbowLimitMargin;
    const double hi = kPi - kElbowLimitMargin;
    const bool positive = l.theta6_min >= lo && l.theta6_max <= hi;
    const bool negative = l.theta6_min >= -hi && l.theta6_max <= -lo;
    if (!positive && !negative) {
      out.push_back(error("joint_limits",
                          "theta6 range must stay at least 2 degrees away from 0 and +/-180 "
                          "degrees (full extension and full fold are singular)"));
    }
  }
  return out;
}

std::vector<Finding> check_objective(const ObjectiveConfig& c) {
  std::vector<Finding> out;
  if (!(std::isfinite(c.a) && c.a >= 0.0)) {
    out.push_back(error("objective_a", "penalty weight a must be >= 0"));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(std::isfinite(c.torque_magnitudes[i]) && c.torque_magnitudes[i] > 0.0)) {
      out.push_back(error("torque_magnitudes",
                          "torque magnitude " + std::to_string(i + 5) + " must be > 0"));
    }
  }
  if (!(std::isfinite(c.grid_step) && c.grid_step > 0.0)) {
    out.push_back(error("grid_step", "grid step must be > 0"));
  }
  return out;
}

std::vector<Finding> check_robot(const RobotParams& r) {
  std::vector<Finding> out;
  if (!(std::isfinite(r.reach_limit) && r.reach_limit > 0.0)) {
    out.push_back(error("robot", "reach limit must be > 0"));
  }
  if (!(std::isfinite(r.handle_height_min) && std::isfinite(r.handle_height_max) &&
        r.handle_height_min >= 0.0 && r.handle_height_min < r.handle_height_max)) {
    out.push_back(error("robot", "handle height range must satisfy 0 <= min < max"));
  }
  if (!(std::isfinite(r.handle_length) && r.handle_length > 0.0 &&
        std::isfinite(r.handle_diameter) && r.handle_diameter > 0.0)) {
    out.push_back(error("robot", "handle length and diameter must be > 0"));
  }
  if (r.base_x && !std::isfinite(*r.base_x)) {
    out.push_back(error("robot", "robot base x must be finite"));
  }
  return out;
}

TorqueSet torque_signs(const VirtualChain& chain, const Vec2& v,
                       const std::array<double, 3>& magnitudes) {
  const auto dirs = joint_force_directions(chain);
  auto sign = [&](std::size_t i) { return dot(dirs[i], v) >= 0.0 ? 1.0 : -1.0; };
  return {sign(0) * magnitudes[0], sign(1) * magnitudes[1], sign(2) * magnitudes[2]};
}

TorqueSet select_torques(const VirtualChain& chain, const Vec2& v,
                         const std::array<double, 3>& magnitudes, ForceModel model) {
  if (model == ForceModel::kExpanded) return torque_signs(chain, v, magnitudes);
  // weights are ordered (tau7, tau6, tau5)
  const auto w = lsq_projection_weights(chain, v);
  auto sign = [](double x) { return x >= 0.0 ? 1.0 : -1.0; };
  return {sign(w[2]) * magnitudes[0], sign(w[1]) * magnitudes[1], sign(w[0]) * magnitudes[2]};
}

Vec2 arm_force(const VirtualChain& chain, const TorqueSet& torques, ForceModel model) {
  return model == ForceModel::kExpanded ? arm_force_expanded(chain, torques)
                                        : arm_force_lsq(chain, torques);
}

PointEvaluation evaluate_point(const PlacementContext& ctx, double theta5, double theta6,
                               const ObjectiveConfig& config) {
  PointEvaluation e;
  e.chain = build_virtual_chain(ctx.shoulder.origin, ctx.shoulder.theta_04, theta5, theta6,
                                ctx.segments, ctx.com.position);
  e.torques = select_torques(e.chain, ctx.com.direction, config.torque_magnitudes,
                             config.force_model);
  e.f_arm = arm_force(e.chain, e.torques, config.force_model);
  e.directed = dot(e.f_arm, ctx.com.direction);
  e.objective = e.directed - config.a * std::abs(std::cos(theta6));
  return e;
}

double objective(const PlacementContext& ctx, double theta5, double theta6,
                 const ObjectiveConfig& config) {
  return evaluate_point(ctx, theta5, theta6, config).objective;
}

Vec2 handle_position(const Vec2& shoulder, double theta_04, double theta5, double theta6,
                     const SegmentSet& segments) {
  return shoulder + segments[kUpperArm].length * unit_at(theta_04 + theta5) +
         segments[kForearm].length * unit_at(theta_04 + theta5 + theta6);
}

std::vector<double> grid_axis_deg(double lo_deg, double hi_deg, double step_deg) {
  if (!(step_deg > 0.0) || !(hi_deg >= lo_deg) || !std::isfinite(lo_deg) ||
      !std::isfinite(hi_deg)) {
    throw Error(ErrorCode::kInvalidArgument, "grid axis needs finite lo <= hi and step > 0");
  }
  lo_deg = snap_deg(lo_deg);
  hi_deg = snap_deg(hi_deg);
  const auto count = static_cast<std::size_t>(std::floor((hi_deg - lo_deg) / step_deg + 1e-9)) + 1;
  std::vector<double> axis(count);
  for (std::size_t k = 0; k < count; ++k) {
    axis[k] = snap_deg(lo_deg + static_cast<double>(k) * step_deg);
  }
  return axis;
}

std::vector<Violation> feasibility_check(const Placement& p, const RobotParams& robot,
                                         double floor_y) {
  std::vector<Violation> out;
  if (robot.base_x) {
    const double reach = std::abs(p.handle.x - *robot.base_x);
    if (reach > robot.reach_limit) {
      out.push_back({"robot_reach", "handle is " + fmt(reach) +
                                        " m from the robot arm axis; reach limit is " +
                                        fmt(robot.reach_limit) + " m"});
    }
  }
  const double height = p.handle.y - floor_y;
  if (height < 0.0) {
    out.push_back({"handle_height", "handle is " + fmt(-height) + " m below the floor"});
  } else if (height < robot.handle_height_min || height > robot.handle_height_max) {
    out.push_back({"handle_height", "handle height " + fmt(height) + " m is outside [" +
                                        fmt(robot.handle_height_min) + ", " +
                                        fmt(robot.handle_height_max) + "] m"});
  }
  const double arm = norm(p.handle - p.shoulder);
  if (arm > p.arm_reach + 1e-12) {
    out.push_back({"arm_reach", "handle is " + fmt(arm) + " m from the shoulder; arm reach is " +
                                    fmt(p.arm_reach) + " m"});
  }
  return out;
}

OptimizationResult optimize_placement(const PlacementContext& ctx, const JointLimits& limits,
                                      const ObjectiveConfig& config, const RobotParams& robot,
                                      const OptimizeOptions& options) {
  {
    auto findings = check_limits(limits);
    auto more = check_objective(config);
    findings.insert(findings.end(), more.begin(), more.end());
    if (has_errors(findings)) {
      throw Error(ErrorCode::kValidation, findings.front().code + ": " + findings.front().message);
    }
  }

  OptimizationResult result;
  Landscape& land = result.landscape;
  const double step_deg = rad_to_deg(config.grid_step);
  land.theta5_deg = grid_axis_deg(rad_to_deg(limits.theta5_min), rad_to_deg(limits.theta5_max), step_deg);
  land.theta6_deg = grid_axis_deg(rad_to_deg(limits.theta6_min), rad_to_deg(limits.theta6_max), step_deg);
  const std::size_t n5 = land.theta5_deg.size();
  const std::size_t n6 = land.theta6_deg.size();
  land.cells.assign(n5 * n6, LandscapeCell{});

  Placement probe;
  probe.shoulder = ctx.shoulder.origin;
  probe.arm_reach = ctx.segments.arm_reach();

  auto evaluate_rows = [&](std::size_t row_begin, std::size_t row_end) {
    Placement local = probe;
    for (std::size_t i5 = row_begin; i5 < row_end; ++i5) {
      const double t5 = deg_to_rad(land.theta5_deg[i5]);
      for (std::size_t i6 = 0; i6 < n6; ++i6) {
        const double t6 = deg_to_rad(land.theta6_deg[i6]);
        LandscapeCell& cell = land.cells[i5 * n6 + i6];
        cell.objective = std::numeric_limits<double>::quiet_NaN();
        try {
          cell.objective = objective(ctx, t5, t6, config);
          cell.evaluable = true;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kSingularChain && e.code() != ErrorCode::kIllConditioned) {
            throw;
          }
          continue;
        }
        cell.feasible = true;
        if (options.constrained) {
          local.handle = handle_position(ctx.shoulder.origin, ctx.shoulder.theta_04, t5, t6,
                                         ctx.segments);
          cell.feasible = feasibility_check(local, robot, options.floor_y).empty();
        }
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n5)));
  if (threads == 1) {
    evaluate_rows(0, n5);
  } else {
    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> pool;
    const std::size_t chunk = (n5 + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n5, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          evaluate_rows(begin, end);
        } catch (...) {
          failures[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  // Deterministic reduction: highest objective, then smaller theta6, then smaller theta5.
  std::size_t best = land.cells.size();
  for (std::size_t i6 = 0; i6 < n6; ++i6) {
    for (std::size_t i5 = 0; i5 < n5; ++i5) {
      const std::size_t k = i5 * n6 + i6;
      if (!land.cells[k].feasible) continue;
      if (best == land.cells.size() || land.cells[k].objective > land.cells[best].objective) {
        best = k;
      }
    }
  }
  if (best == land.cells.size()) {
    throw Error(ErrorCode::kNoFeasiblePoint,
                options.constrained ? "no grid point is both non-singular and robot-feasible"
                                    : "every grid point is singular");
  }

  Placement& p = result.placement;
  p = probe;
  p.theta5_deg = land.theta5_deg[best / n6];
  p.theta6_deg = land.theta6_deg[best % n6];
  p.theta5 = deg_to_rad(p.theta5_deg);
  p.theta6 = deg_to_rad(p.theta6_deg);
  const PointEvaluation e = evaluate_point(ctx, p.theta5, p.theta6, config);
  p.handle = e.chain.handle;
  p.objective_value = e.objective;
  p.f_arm = e.f_arm;
  auto sgn = [](double t) { return t >= 0.0 ? 1 : -1; };
  p.torque_signs = {sgn(e.torques.tau5), sgn(e.torques.tau6), sgn(e.torques.tau7)};
  p.feasibility = feasibility_check(p, robot, options.floor_y);
  return result;
}

}  // namespace handleopt

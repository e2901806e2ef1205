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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <unistd.h>

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "handleopt/arm_kinetics.hpp"
#include "handleopt/body_model.hpp"
#include "handleopt/placement.hpp"
#include "handleopt/scenario_io.hpp"
#include "test_support.hpp"

namespace {

using namespace handleopt;
using handleopt::testing::fixture_path;
using handleopt::testing::kFixtureNames;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// COM endpoint of the handle-anchored chain, parameterized by relative joint
// angles (q7 at the handle, q6 at the elbow, q5 at the shoulder).
Vec2 chain_tip(const Vec2& handle, double l6, double l5, double d, double q7, double q6,
               double q5) {
  const Vec2 elbow = handle + l6 * unit_at(q7);
  const Vec2 shoulder = elbow + l5 * unit_at(q7 + q6);
  return shoulder + d * unit_at(q7 + q6 + q5);
}

Outcome jacobian_finite_difference() {
  testing::RandomChains gen(101);
  const auto t0 = Clock::now();
  const int n = 200;
  const double h = 1e-6;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const VirtualChain c = gen.next();
    const double l6 = norm(c.r6);
    const double l5 = norm(c.r5);
    const double d = norm(c.r_com);
    const double q7 = angle_of(c.elbow - c.handle);
    const double q6 = angle_of(c.shoulder - c.elbow) - q7;
    const double q5 = angle_of(c.com - c.shoulder) - q7 - q6;
    const Jacobian2x3 j = arm_jacobian(c);
    for (int k = 0; k < 3; ++k) {
      std::array<double, 3> qp{q7, q6, q5};
      std::array<double, 3> qm{q7, q6, q5};
      qp[k] += h;
      qm[k] -= h;
      const Vec2 fd = (chain_tip(c.handle, l6, l5, d, qp[0], qp[1], qp[2]) -
                       chain_tip(c.handle, l6, l5, d, qm[0], qm[1], qm[2])) /
                      (2.0 * h);
      worst = std::max(worst, norm(fd - j.columns[k]) / norm(j.columns[k]));
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-5 && secs < 1.0,
          fmt("%d chains, max relative error %.3g, %.3f s", n, worst, secs)};
}

Outcome inner_product_identity() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> mag(0.0, 100.0);
  const int n = 5000;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec2 f = mag(rng) * unit_at(ang(rng));
    const Vec2 v = unit_at(ang(rng));
    const double theta_vf = std::atan2(f.y, f.x) - std::atan2(v.y, v.x);
    const double expected = std::hypot(f.x, f.y) * std::hypot(v.x, v.y) * std::cos(theta_vf);
    worst = std::max(worst, std::abs(directed_advantage(f, v) - expected));
  }
  return {worst < 1e-9, fmt("%d pairs, max deviation %.3g", n, worst)};
}

Outcome expanded_force_superposition() {
  testing::RandomChains gen(303);
  std::uniform_real_distribution<double> tau(-50.0, 50.0);
  std::mt19937_64 rng(304);
  const int n = 1000;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const VirtualChain c = gen.next();
    const TorqueSet a{tau(rng), tau(rng), tau(rng)};
    const TorqueSet b{tau(rng), tau(rng), tau(rng)};
    const TorqueSet ab{a.tau5 + b.tau5, a.tau6 + b.tau6, a.tau7 + b.tau7};
    const Vec2 lhs = arm_force_expanded(c, ab);
    const Vec2 rhs = arm_force_expanded(c, a) + arm_force_expanded(c, b);
    worst = std::max(worst, std::max(std::abs(lhs.x - rhs.x), std::abs(lhs.y - rhs.y)));
  }
  // single shoulder term: lever 0.5 m along +x
  const SegmentSet segs = default_segment_set();
  const VirtualChain single =
      build_virtual_chain({0.0, 0.0}, 0.0, std::numbers::pi / 2.0, std::numbers::pi / 2.0, segs,
                          {0.5, 0.0});
  const Vec2 f = arm_force_expanded(single, TorqueSet{1.0, 0.0, 0.0});
  const bool exact = f.x == 0.0 && f.y == 2.0;
  return {worst < 1e-12 && exact,
          fmt("%d chains, max deviation %.3g; single term (%.17g, %.17g)", n, worst, f.x, f.y)};
}

Outcome torque_sign_optimality() {
  testing::RandomChains gen(404);
  std::mt19937_64 rng(405);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> mag(0.1, 5.0);
  const int n = 1000;
  int failures = 0;
  for (int i = 0; i < n; ++i) {
    const VirtualChain c = gen.next();
    const Vec2 v = unit_at(ang(rng));
    const std::array<double, 3> m{mag(rng), mag(rng), mag(rng)};
    const double chosen = dot(arm_force_expanded(c, torque_signs(c, v, m)), v);
    double best = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < 8; ++s) {
      const TorqueSet t{(s & 1 ? -1.0 : 1.0) * m[0], (s & 2 ? -1.0 : 1.0) * m[1],
                        (s & 4 ? -1.0 : 1.0) * m[2]};
      best = std::max(best, dot(arm_force_expanded(c, t), v));
    }
    if (chosen < best - 1e-12 * std::max(1.0, std::abs(best))) ++failures;
  }
  return {failures == 0, fmt("%d chains, %d beaten by another sign pattern", n, failures)};
}

struct FixtureRun {
  Scenario scenario;
  OptimizationResult result;
  double seconds = 0.0;
};

FixtureRun run_fixture(const std::string& name, double step_deg) {
  FixtureRun run;
  run.scenario = load_scenario(fixture_path(name));
  Overrides ov;
  ov.grid_step_deg = step_deg;
  ov.limits_deg = std::array<double, 4>{-60.0, 185.0, 5.0, 175.0};
  apply_overrides(run.scenario, ov);
  const auto t0 = Clock::now();
  run.result = optimize_placement(make_context(run.scenario), run.scenario.limits,
                                  run.scenario.objective, run.scenario.robot);
  run.seconds = seconds_since(t0);
  return run;
}

int count_near_max(const Landscape& l, double max_value) {
  int n = 0;
  for (const LandscapeCell& c : l.cells) {
    if (c.feasible && std::abs(c.objective - max_value) <= 1e-9) ++n;
  }
  return n;
}

Outcome unique_convergence() {
  bool ok = true;
  std::string detail;
  for (const char* name : kFixtureNames) {
    const FixtureRun run = run_fixture(name, 0.5);
    const Placement& p = run.result.placement;
    const int near = count_near_max(run.result.landscape, p.objective_value);
    ok = ok && near == 1 && run.seconds < 10.0;
    detail += fmt("%s (%g, %g) %d at max, %.2f s; ", name, p.theta5_deg, p.theta6_deg, near,
                  run.seconds);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome oracle_grid_equivalence() {
  bool ok = true;
  std::string detail;
  for (const char* name : kFixtureNames) {
    const Placement coarse = run_fixture(name, 0.5).result.placement;
    const Placement fine = run_fixture(name, 0.1).result.placement;
    const bool near = std::abs(coarse.theta5_deg - fine.theta5_deg) <= 0.5 + 1e-9 &&
                      std::abs(coarse.theta6_deg - fine.theta6_deg) <= 0.5 + 1e-9;
    const bool bounded = coarse.objective_value <= fine.objective_value;
    ok = ok && near && bounded;
    detail += fmt("%s coarse (%g, %g) fine (%g, %g); ", name, coarse.theta5_deg,
                  coarse.theta6_deg, fine.theta5_deg, fine.theta6_deg);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome rotation_equivariance() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  bool ok = true;
  double worst_angle = 0.0;
  double worst_obj = 0.0;
  double worst_handle = 0.0;
  for (const char* name : kFixtureNames) {
    const Scenario s = load_scenario(fixture_path(name));
    const PlacementContext ctx = make_context(s);
    const Placement base = optimize_placement(ctx, s.limits, s.objective, s.robot).placement;
    for (int k = 0; k < 10; ++k) {
      const double phi = ang(rng);
      const Placement r =
          optimize_placement(testing::rotate_context(ctx, phi), s.limits, s.objective, s.robot)
              .placement;
      worst_angle = std::max({worst_angle, std::abs(r.theta5 - base.theta5),
                              std::abs(r.theta6 - base.theta6)});
      worst_obj = std::max(worst_obj, std::abs(r.objective_value - base.objective_value));
      worst_handle = std::max(worst_handle, norm(r.handle - rotated(base.handle, phi)));
    }
  }
  ok = worst_angle < 1e-9 && worst_obj < 1e-9 && worst_handle < 1e-9;
  return {ok, fmt("40 rotations, max angle change %.3g rad, objective %.3g, "
                  "handle %.3g m",
                  worst_angle, worst_obj, worst_handle)};
}

Outcome mass_model() {
  const SegmentSet d = default_segment_set();
  const SegmentSet file = load_anthropometry(std::string(HANDLEOPT_DATA_DIR) +
                                             "/default_anthropometry.json");
  const double share = d.nonarm_mass() / d.total_mass;
  const double closure = std::abs(d.link_mass_sum() - d.total_mass) / d.total_mass;
  bool same = file.total_mass == d.total_mass;
  for (std::size_t i = 0; i < kLinkCount; ++i) {
    same = same && file[i].mass == d[i].mass && file[i].length == d[i].length &&
           file[i].com_fraction == d[i].com_fraction;
  }
  const bool ok = d.total_mass == 60.0 && share >= 0.90 && share <= 0.95 && closure <= 1e-9 &&
                  same && !has_errors(check_segments(d));
  return {ok, fmt("total %.9g kg, non-arm share %.4f, closure %.3g, data file %s", d.total_mass,
                  share, closure, same ? "matches" : "differs")};
}

// Shoulder at the origin, trunk upright, COM behind and below the shoulder
// and out of arm reach. Only the motion direction differs between runs.
Placement directional_run(const Vec2& direction) {
  PlacementContext ctx;
  ctx.segments = default_segment_set();
  ctx.shoulder.origin = {0.0, 0.0};
  ctx.shoulder.theta_04 = std::numbers::pi / 2.0;
  ctx.com.position = {0.4, -0.6};
  ctx.com.direction = direction;
  ctx.com.speed = 1.0;
  ObjectiveConfig cfg;
  cfg.grid_step = deg_to_rad(0.1);
  return optimize_placement(ctx, JointLimits{}, cfg, RobotParams{}).placement;
}

Outcome directional_strength() {
  const Placement vertical = directional_run({0.0, 1.0});
  const Placement horizontal = directional_run({-1.0, 0.0});
  const double dv = std::abs(vertical.theta6_deg - 90.0);
  const double dh = std::abs(horizontal.theta6_deg - 90.0);
  return {dv < dh, fmt("vertical theta6* %g deg, horizontal theta6* %g deg (0.1 deg grid)",
                       vertical.theta6_deg, horizontal.theta6_deg)};
}

Outcome feasibility_reach() {
  Placement p;
  p.handle = {0.5, 0.8};
  p.shoulder = {0.2, 1.0};
  p.arm_reach = default_segment_set().arm_reach();
  RobotParams robot;
  robot.base_x = 0.0;
  const auto flagged = feasibility_check(p, robot, 0.0);
  bool reach = false;
  for (const Violation& v : flagged) reach = reach || v.code == "robot_reach";
  p.handle = {0.4, 0.8};
  bool inside = true;
  for (const Violation& v : feasibility_check(p, robot, 0.0)) {
    inside = inside && v.code != "robot_reach";
  }
  return {reach && inside, fmt("0.5 m %s, 0.4 m %s", reach ? "flagged" : "not flagged",
                               inside ? "accepted" : "flagged")};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / ("handleopt_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  const std::string scenario = fixture_path("sit_to_stand_bed");
  for (const char* run : {"a", "b"}) {
    const std::string cmd = std::string("\"") + HANDLEOPT_CLI_PATH + "\" optimize --scenario \"" +
                            scenario + "\" --out \"" + (root / run).string() + "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "optimize invocation failed"};
  }
  bool same = true;
  for (const char* file : {"report.json", "landscape.csv"}) {
    const std::string a = testing::read_file((root / "a" / file).string());
    const std::string b = testing::read_file((root / "b" / file).string());
    same = same && !a.empty() && a == b;
  }
  fs::remove_all(root);
  return {same, same ? "report.json and landscape.csv identical" : "outputs differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"jacobian_finite_difference", jacobian_finite_difference},
      {"inner_product_identity", inner_product_identity},
      {"expanded_force_superposition", expanded_force_superposition},
      {"torque_sign_optimality", torque_sign_optimality},
      {"unique_convergence", unique_convergence},
      {"oracle_grid_equivalence", oracle_grid_equivalence},
      {"rotation_equivariance", rotation_equivariance},
      {"mass_model", mass_model},
      {"directional_strength", directional_strength},
      {"feasibility_reach", feasibility_reach},
      {"determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}

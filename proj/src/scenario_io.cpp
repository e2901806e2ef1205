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

#include "handleopt/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "handleopt/arm_kinetics.hpp"
#include "handleopt/error.hpp"

namespace handleopt {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSchema, where + ": " + what);
}

// Strict view over one JSON object: every key must be consumed or declared
// optional, and types are checked on access.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) schema_error(where_, "expected an object");
  }

  const json& required(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) schema_error(where_, "missing field \"" + key + "\"");
    return *it;
  }

  const json* optional(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key) { return as_number(required(key), path(key)); }

  std::string string(const std::string& key) {
    const json& v = required(key);
    if (!v.is_string()) schema_error(path(key), "expected a string");
    return v.get<std::string>();
  }

  template <std::size_t N>
  std::array<double, N> numbers(const std::string& key) {
    return as_numbers<N>(required(key), path(key));
  }

  std::string path(const std::string& key) const { return where_ + "." + key; }

  // Rejects keys that were never asked for.
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) schema_error(where_, "unknown field \"" + it.key() + "\"");
    }
  }

  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) schema_error(where, "expected a number");
    return v.get<double>();
  }

  template <std::size_t N>
  static std::array<double, N> as_numbers(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != N) {
      schema_error(where, "expected an array of " + std::to_string(N) + " numbers");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = as_number(v[i], where + "[" + std::to_string(i) + "]");
    return out;
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "failed reading " + path.string());
  return ss.str();
}

SegmentSet read_segments(ObjectReader& root) {
  SegmentSet s;
  s.total_mass = root.number("total_mass_kg");
  const json& segs = root.required("segments");
  if (!segs.is_array() || segs.size() != kLinkCount) {
    schema_error(root.path("segments"), "expected exactly 7 segments");
  }
  for (std::size_t i = 0; i < kLinkCount; ++i) {
    ObjectReader r(segs[i], root.path("segments") + "[" + std::to_string(i) + "]");
    s.links[i].name = r.string("name");
    s.links[i].length = r.number("length_m");
    s.links[i].mass = r.number("mass_kg");
    s.links[i].com_fraction = r.number("com_fraction");
    r.finish();
  }
  return s;
}

Scenario scenario_from_json(const json& doc) {
  ObjectReader root(doc, "scenario");
  const json& version = root.required("schema_version");
  if (!version.is_string()) schema_error("scenario.schema_version", "expected a string");
  if (version.get<std::string>() != kScenarioSchemaVersion) {
    schema_error("scenario.schema_version",
                 "unsupported version \"" + version.get<std::string>() + "\"");
  }

  Scenario s;
  s.name = root.string("name");
  s.segments = read_segments(root);

  const json& frames = root.required("frames");
  if (!frames.is_array()) schema_error("scenario.frames", "expected an array");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    ObjectReader r(frames[i], "scenario.frames[" + std::to_string(i) + "]");
    PoseFrame f;
    f.time = r.number("time_s");
    const auto base = r.numbers<2>("base_xy_m");
    f.pose.base = {base[0], base[1]};
    const auto theta = r.numbers<kJointAngleCount>("theta_deg");
    for (std::size_t k = 0; k < kJointAngleCount; ++k) f.pose.theta[k] = deg_to_rad(theta[k]);
    r.finish();
    s.frames.push_back(f);
  }

  const json& idx = root.required("max_effort_index");
  if (!idx.is_number_integer()) schema_error("scenario.max_effort_index", "expected an integer");
  if (idx.get<long long>() < 0) {
    throw Error(ErrorCode::kValidation,
                "central_difference: max_effort_index must be > 0 so that a frame precedes it");
  }
  s.max_effort_index = idx.get<std::size_t>();

  {
    ObjectReader r(root.required("joint_limits_deg"), "scenario.joint_limits_deg");
    s.limits.theta5_min = deg_to_rad(r.number("theta5_min"));
    s.limits.theta5_max = deg_to_rad(r.number("theta5_max"));
    s.limits.theta6_min = deg_to_rad(r.number("theta6_min"));
    s.limits.theta6_max = deg_to_rad(r.number("theta6_max"));
    r.finish();
  }
  {
    ObjectReader r(root.required("objective"), "scenario.objective");
    s.objective.a = r.number("a");
    s.objective.torque_magnitudes = r.numbers<3>("torque_magnitudes_nm");
    const std::string model = r.string("force_model");
    const auto parsed = parse_force_model(model);
    if (!parsed) schema_error("scenario.objective.force_model", "unknown model \"" + model + "\"");
    s.objective.force_model = *parsed;
    s.objective.grid_step = deg_to_rad(r.number("grid_step_deg"));
    r.finish();
  }
  {
    ObjectReader r(root.required("robot"), "scenario.robot");
    s.robot.reach_limit = r.number("reach_limit_m");
    const auto range = r.numbers<2>("handle_height_range_m");
    s.robot.handle_height_min = range[0];
    s.robot.handle_height_max = range[1];
    s.robot.handle_length = r.number("handle_length_m");
    s.robot.handle_diameter = r.number("handle_diameter_m");
    if (const json* bx = r.optional("base_x_m")) {
      s.robot.base_x = ObjectReader::as_number(*bx, "scenario.robot.base_x_m");
    }
    r.finish();
  }
  s.floor_y = root.number("floor_y_m");
  if (const json* d = root.optional("com_divisor")) {
    if (!d->is_string()) schema_error("scenario.com_divisor", "expected a string");
    const auto parsed = parse_com_divisor(d->get<std::string>());
    if (!parsed) schema_error("scenario.com_divisor", "unknown value \"" + d->get<std::string>() + "\"");
    s.com_divisor = *parsed;
  }
  root.finish();
  return s;
}

void throw_if_invalid(const Scenario& s) {
  for (const Finding& f : validate_scenario(s)) {
    if (f.severity == Severity::kError) {
      throw Error(ErrorCode::kValidation, f.code + ": " + f.message);
    }
  }
}


Vec2 vec_from(const json& j, const std::string& where) {
  const auto a = ObjectReader::as_numbers<2>(j, where);
  return {a[0], a[1]};
}

std::array<int, 3> signs_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) schema_error(where, "expected 3 torque signs");
  std::array<int, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number_integer()) schema_error(where, "expected integers");
    out[i] = j[i].get<int>();
  }
  return out;
}

ForceModelValue evaluate_model(const PlacementContext& ctx, const Placement& p,
                               const ObjectiveConfig& config, ForceModel model) {
  ObjectiveConfig c = config;
  c.force_model = model;
  ForceModelValue out;
  try {
    const PointEvaluation e = evaluate_point(ctx, p.theta5, p.theta6, c);
    out.f_arm = e.f_arm;
    out.directed = e.directed;
    auto sgn = [](double t) { return t >= 0.0 ? 1 : -1; };
    out.torque_signs = std::array<int, 3>{sgn(e.torques.tau5), sgn(e.torques.tau6),
                                          sgn(e.torques.tau7)};
  } catch (const Error& e) {
    out.error = std::string(error_code_name(e.code())) + ": " + e.what();
  }
  return out;
}

ordered_json model_json(const ForceModelValue& v) {
  ordered_json j = ordered_json::object();
  if (v.f_arm) {
    j["f_arm_n"] = {v.f_arm->x, v.f_arm->y};
    j["directed_advantage_n"] = *v.directed;
    j["torque_signs"] = *v.torque_signs;
  } else {
    j["error"] = v.error;
  }
  return j;
}

ForceModelValue model_from(const json& j, const std::string& where) {
  ForceModelValue v;
  ObjectReader r(j, where);
  if (const json* e = r.optional("error")) {
    if (!e->is_string()) schema_error(where + ".error", "expected a string");
    v.error = e->get<std::string>();
  } else {
    v.f_arm = vec_from(r.required("f_arm_n"), where + ".f_arm_n");
    v.directed = r.number("directed_advantage_n");
    v.torque_signs = signs_from(r.required("torque_signs"), where + ".torque_signs");
  }
  r.finish();
  return v;
}

}  // namespace

std::string_view force_model_name(ForceModel model) {
  return model == ForceModel::kExpanded ? "expanded" : "lsq";
}

std::optional<ForceModel> parse_force_model(std::string_view name) {
  if (name == "expanded") return ForceModel::kExpanded;
  if (name == "lsq" || name == "least-squares") return ForceModel::kLeastSquares;
  return std::nullopt;
}

std::string_view com_divisor_name(ComDivisor divisor) {
  return divisor == ComDivisor::kTotalMass ? "total_mass" : "nonarm_mass";
}

std::optional<ComDivisor> parse_com_divisor(std::string_view name) {
  if (name == "total_mass" || name == "total") return ComDivisor::kTotalMass;
  if (name == "nonarm_mass" || name == "nonarm") return ComDivisor::kNonArmMass;
  return std::nullopt;
}

Scenario parse_scenario(std::string_view json_text) {
  Scenario s = scenario_from_json(parse_json(json_text));
  throw_if_invalid(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path));
}

SegmentSet load_anthropometry(const std::filesystem::path& path) {
  const json doc = parse_json(read_text_file(path));
  ObjectReader root(doc, "anthropometry");
  root.optional("description");
  SegmentSet s = read_segments(root);
  root.finish();
  for (const Finding& f : check_segments(s)) {
    if (f.severity == Severity::kError) {
      throw Error(ErrorCode::kValidation, f.code + ": " + f.message);
    }
  }
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  ordered_json j;
  j["schema_version"] = kScenarioSchemaVersion;
  j["name"] = s.name;
  j["total_mass_kg"] = s.segments.total_mass;
  j["segments"] = ordered_json::array();
  for (const auto& link : s.segments.links) {
    ordered_json l;
    l["name"] = link.name;
    l["length_m"] = link.length;
    l["mass_kg"] = link.mass;
    l["com_fraction"] = link.com_fraction;
    j["segments"].push_back(l);
  }
  j["frames"] = ordered_json::array();
  for (const auto& f : s.frames) {
    ordered_json fj;
    fj["time_s"] = f.time;
    fj["base_xy_m"] = {f.pose.base.x, f.pose.base.y};
    ordered_json th = ordered_json::array();
    for (double t : f.pose.theta) th.push_back(rad_to_deg(t));
    fj["theta_deg"] = th;
    j["frames"].push_back(fj);
  }
  j["max_effort_index"] = s.max_effort_index;
  j["joint_limits_deg"] = {{"theta5_min", rad_to_deg(s.limits.theta5_min)},
                           {"theta5_max", rad_to_deg(s.limits.theta5_max)},
                           {"theta6_min", rad_to_deg(s.limits.theta6_min)},
                           {"theta6_max", rad_to_deg(s.limits.theta6_max)}};
  j["objective"] = {{"a", s.objective.a},
                    {"torque_magnitudes_nm", s.objective.torque_magnitudes},
                    {"force_model", force_model_name(s.objective.force_model)},
                    {"grid_step_deg", rad_to_deg(s.objective.grid_step)}};
  ordered_json robot = {{"reach_limit_m", s.robot.reach_limit},
                        {"handle_height_range_m", {s.robot.handle_height_min, s.robot.handle_height_max}},
                        {"handle_length_m", s.robot.handle_length},
                        {"handle_diameter_m", s.robot.handle_diameter}};
  if (s.robot.base_x) robot["base_x_m"] = *s.robot.base_x;
  j["robot"] = robot;
  j["floor_y_m"] = s.floor_y;
  j["com_divisor"] = com_divisor_name(s.com_divisor);
  return j.dump(2) + "\n";
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  write_text_file(path, scenario_to_json(scenario));
}

std::vector<Finding> validate_scenario(const Scenario& s) {
  std::vector<Finding> out = check_segments(s.segments);
  auto add = [&](std::vector<Finding> more) { out.insert(out.end(), more.begin(), more.end()); };
  auto error = [&](std::string code, std::string msg) {
    out.push_back({Severity::kError, std::move(code), std::move(msg)});
  };

  if (s.name.empty()) error("name", "scenario name must not be empty");

  bool frames_ok = true;
  if (s.frames.size() < 3) {
    error("frame_count", "at least 3 frames are required for a central difference");
    frames_ok = false;
  }
  for (std::size_t i = 0; i < s.frames.size(); ++i) {
    const auto& f = s.frames[i];
    bool finite = std::isfinite(f.time) && is_finite(f.pose.base);
    for (double t : f.pose.theta) finite = finite && std::isfinite(t);
    if (!finite) {
      error("frame_values", "frame " + std::to_string(i) + " has non-finite values");
      frames_ok = false;
    }
    if (i > 0 && !(f.time > s.frames[i - 1].time)) {
      error("time_order", "frame times must be strictly increasing (frame " +
                              std::to_string(i) + ")");
      frames_ok = false;
    }
  }
  if (s.max_effort_index == 0 || s.max_effort_index + 1 >= s.frames.size()) {
    error("central_difference",
          "max_effort_index " + std::to_string(s.max_effort_index) +
              " needs a frame before and after it for the central-difference COM velocity "
              "(valid: 1.." + std::to_string(s.frames.size() < 2 ? 0 : s.frames.size() - 2) + ")");
    frames_ok = false;
  }

  add(check_limits(s.limits));
  add(check_objective(s.objective));
  add(check_robot(s.robot));
  if (!std::isfinite(s.floor_y)) error("floor_y", "floor height must be finite");

  if (frames_ok && !has_errors(out)) {
    try {
      const ComState c = com_velocity(s.frames, s.segments, s.max_effort_index, s.com_divisor);
      if (c.speed < kSlowComSpeed) {
        std::ostringstream msg;
        msg.precision(9);
        msg << "COM speed at the max-effort frame is " << c.speed
            << " m/s; the motion direction is poorly defined";
        out.push_back({Severity::kWarning, "slow_com", msg.str()});
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateVelocity) throw;
      error("degenerate_velocity", e.what());
    }
  }
  return out;
}

PlacementContext make_context(const Scenario& s) {
  const PoseFrame& f = s.frames.at(s.max_effort_index);
  return {shoulder_frame(f.pose, s.segments),
          com_velocity(s.frames, s.segments, s.max_effort_index, s.com_divisor), s.segments};
}

void apply_overrides(Scenario& s, const Overrides& o) {
  if (o.grid_step_deg) s.objective.grid_step = deg_to_rad(*o.grid_step_deg);
  if (o.a) s.objective.a = *o.a;
  if (o.force_model) s.objective.force_model = *o.force_model;
  if (o.torque_magnitudes) s.objective.torque_magnitudes = *o.torque_magnitudes;
  if (o.limits_deg) {
    s.limits.theta5_min = deg_to_rad((*o.limits_deg)[0]);
    s.limits.theta5_max = deg_to_rad((*o.limits_deg)[1]);
    s.limits.theta6_min = deg_to_rad((*o.limits_deg)[2]);
    s.limits.theta6_max = deg_to_rad((*o.limits_deg)[3]);
  }
  if (o.com_divisor) s.com_divisor = *o.com_divisor;
}

std::string landscape_csv(const Landscape& land) {
  std::string out(kLandscapeHeader);
  out += '\n';
  char buf[128];
  const std::size_t n6 = land.theta6_deg.size();
  for (std::size_t i5 = 0; i5 < land.theta5_deg.size(); ++i5) {
    for (std::size_t i6 = 0; i6 < n6; ++i6) {
      const LandscapeCell& c = land.cells[i5 * n6 + i6];
      if (c.evaluable) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.17g,%d\n", land.theta5_deg[i5],
                      land.theta6_deg[i6], c.objective, c.feasible ? 1 : 0);
      } else {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,nan,0\n", land.theta5_deg[i5],
                      land.theta6_deg[i6]);
      }
      out += buf;
    }
  }
  return out;
}

PlacementReport make_report(const Scenario& s, const OptimizationResult& result,
                            bool constrained) {
  const PlacementContext ctx = make_context(s);
  const Placement& p = result.placement;
  PlacementReport r;
  r.scenario = s.name;
  r.max_effort_index = s.max_effort_index;
  r.com = ctx.com.position;
  r.com_direction = ctx.com.direction;
  r.com_speed = ctx.com.speed;
  r.shoulder = ctx.shoulder.origin;
  r.theta_04_deg = rad_to_deg(ctx.shoulder.theta_04);
  r.theta5_deg = p.theta5_deg;
  r.theta6_deg = p.theta6_deg;
  r.handle = p.handle;
  r.objective = p.objective_value;
  r.torque_signs = p.torque_signs;
  r.f_arm = p.f_arm;
  const auto& mags = s.objective.torque_magnitudes;
  const TorqueSet signed_torques{p.torque_signs[0] * mags[0], p.torque_signs[1] * mags[1],
                                 p.torque_signs[2] * mags[2]};
  r.mechanical_advantage = mechanical_advantage(p.f_arm, signed_torques);
  r.directed_advantage = directed_advantage(p.f_arm, ctx.com.direction);
  r.expanded = evaluate_model(ctx, p, s.objective, ForceModel::kExpanded);
  r.least_squares = evaluate_model(ctx, p, s.objective, ForceModel::kLeastSquares);
  r.a = s.objective.a;
  r.torque_magnitudes = mags;
  r.force_model = force_model_name(s.objective.force_model);
  r.grid_step_deg = rad_to_deg(s.objective.grid_step);
  r.constrained = constrained;
  r.limits_deg = {rad_to_deg(s.limits.theta5_min), rad_to_deg(s.limits.theta5_max),
                  rad_to_deg(s.limits.theta6_min), rad_to_deg(s.limits.theta6_max)};
  r.theta5_count = result.landscape.theta5_deg.size();
  r.theta6_count = result.landscape.theta6_deg.size();
  for (const auto& c : result.landscape.cells) r.feasible_count += c.feasible ? 1 : 0;
  r.feasibility = p.feasibility;
  return r;
}

std::string report_to_json(const PlacementReport& r) {
  ordered_json j;
  j["report_version"] = kReportVersion;
  j["scenario"] = r.scenario;
  j["max_effort_index"] = r.max_effort_index;
  j["com"] = {{"position_m", {r.com.x, r.com.y}},
              {"direction", {r.com_direction.x, r.com_direction.y}},
              {"speed_mps", r.com_speed}};
  j["shoulder"] = {{"position_m", {r.shoulder.x, r.shoulder.y}}, {"theta_04_deg", r.theta_04_deg}};
  j["optimum"] = {{"theta5_deg", r.theta5_deg},
                  {"theta6_deg", r.theta6_deg},
                  {"handle_m", {r.handle.x, r.handle.y}},
                  {"objective", r.objective},
                  {"torque_signs", r.torque_signs},
                  {"f_arm_n", {r.f_arm.x, r.f_arm.y}},
                  {"mechanical_advantage", r.mechanical_advantage},
                  {"directed_advantage_n", r.directed_advantage}};
  j["force_models"] = {{"expanded", model_json(r.expanded)},
                       {"lsq", model_json(r.least_squares)}};
  j["objective_config"] = {{"a", r.a},
                           {"torque_magnitudes_nm", r.torque_magnitudes},
                           {"force_model", r.force_model},
                           {"grid_step_deg", r.grid_step_deg},
                           {"constrained", r.constrained}};
  j["joint_limits_deg"] = {{"theta5_min", r.limits_deg[0]},
                           {"theta5_max", r.limits_deg[1]},
                           {"theta6_min", r.limits_deg[2]},
                           {"theta6_max", r.limits_deg[3]}};
  j["grid"] = {{"theta5_count", r.theta5_count},
               {"theta6_count", r.theta6_count},
               {"feasible_count", r.feasible_count}};
  ordered_json feas = ordered_json::array();
  for (const auto& v : r.feasibility) feas.push_back({{"code", v.code}, {"message", v.message}});
  j["feasibility"] = feas;
  return j.dump(2) + "\n";
}

PlacementReport parse_report(std::string_view text) {
  const json doc = parse_json(text);
  ObjectReader root(doc, "report");
  const json& version = root.required("report_version");
  if (!version.is_string() || version.get<std::string>() != kReportVersion) {
    schema_error("report.report_version", "unsupported report version");
  }
  PlacementReport r;
  r.scenario = root.string("scenario");
  const json& idx = root.required("max_effort_index");
  if (!idx.is_number_unsigned()) schema_error("report.max_effort_index", "expected an integer");
  r.max_effort_index = idx.get<std::size_t>();
  {
    ObjectReader c(root.required("com"), "report.com");
    r.com = vec_from(c.required("position_m"), "report.com.position_m");
    r.com_direction = vec_from(c.required("direction"), "report.com.direction");
    r.com_speed = c.number("speed_mps");
    c.finish();
  }
  {
    ObjectReader c(root.required("shoulder"), "report.shoulder");
    r.shoulder = vec_from(c.required("position_m"), "report.shoulder.position_m");
    r.theta_04_deg = c.number("theta_04_deg");
    c.finish();
  }
  {
    ObjectReader o(root.required("optimum"), "report.optimum");
    r.theta5_deg = o.number("theta5_deg");
    r.theta6_deg = o.number("theta6_deg");
    r.handle = vec_from(o.required("handle_m"), "report.optimum.handle_m");
    r.objective = o.number("objective");
    r.torque_signs = signs_from(o.required("torque_signs"), "report.optimum.torque_signs");
    r.f_arm = vec_from(o.required("f_arm_n"), "report.optimum.f_arm_n");
    r.mechanical_advantage = o.number("mechanical_advantage");
    r.directed_advantage = o.number("directed_advantage_n");
    o.finish();
  }
  {
    ObjectReader m(root.required("force_models"), "report.force_models");
    r.expanded = model_from(m.required("expanded"), "report.force_models.expanded");
    r.least_squares = model_from(m.required("lsq"), "report.force_models.lsq");
    m.finish();
  }
  {
    ObjectReader c(root.required("objective_config"), "report.objective_config");
    r.a = c.number("a");
    r.torque_magnitudes = c.numbers<3>("torque_magnitudes_nm");
    r.force_model = c.string("force_model");
    r.grid_step_deg = c.number("grid_step_deg");
    const json& con = c.required("constrained");
    if (!con.is_boolean()) schema_error("report.objective_config.constrained", "expected a boolean");
    r.constrained = con.get<bool>();
    c.finish();
  }
  {
    ObjectReader l(root.required("joint_limits_deg"), "report.joint_limits_deg");
    r.limits_deg = {l.number("theta5_min"), l.number("theta5_max"), l.number("theta6_min"),
                    l.number("theta6_max")};
    l.finish();
  }
  {
    ObjectReader g(root.required("grid"), "report.grid");
    auto count = [&](const char* key) {
      const json& v = g.required(key);
      if (!v.is_number_unsigned()) schema_error(g.path(key), "expected a count");
      return v.get<std::size_t>();
    };
    r.theta5_count = count("theta5_count");
    r.theta6_count = count("theta6_count");
    r.feasible_count = count("feasible_count");
    g.finish();
  }
  const json& feas = root.required("feasibility");
  if (!feas.is_array()) schema_error("report.feasibility", "expected an array");
  for (std::size_t i = 0; i < feas.size(); ++i) {
    ObjectReader v(feas[i], "report.feasibility[" + std::to_string(i) + "]");
    r.feasibility.push_back({v.string("code"), v.string("message")});
    v.finish();
  }
  root.finish();
  return r;
}

PlacementReport read_placement_report(const std::filesystem::path& path) {
  return parse_report(read_text_file(path));
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

ReportFiles write_placement_report(const Scenario& scenario, const OptimizationResult& result,
                                   const std::filesystem::path& out_dir, bool constrained) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
  ReportFiles files{out_dir / "report.json", out_dir / "landscape.csv"};
  write_text_file(files.report, report_to_json(make_report(scenario, result, constrained)));
  write_text_file(files.landscape, landscape_csv(result.landscape));
  return files;
}

}  // namespace handleopt

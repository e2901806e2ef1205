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

#include "handleopt/handleopt.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "handleopt/error.hpp"
#include "handleopt/reporting.hpp"
#include "handleopt/scenario_io.hpp"

struct ho_scenario {
  handleopt::Scenario scenario;
  handleopt::OptimizeOptions options;
};

struct ho_findings {
  std::vector<handleopt::Finding> items;
};

struct ho_result {
  handleopt::OptimizationResult result;
  bool constrained = false;
};

namespace {

using handleopt::Error;
using handleopt::ErrorCode;

thread_local std::string g_last_error;

ho_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return HO_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return HO_ERR_IO;
    case ErrorCode::kParse: return HO_ERR_PARSE;
    case ErrorCode::kSchema: return HO_ERR_SCHEMA;
    case ErrorCode::kValidation: return HO_ERR_VALIDATION;
    case ErrorCode::kDegenerateVelocity: return HO_ERR_DEGENERATE_VELOCITY;
    case ErrorCode::kIndexOutOfRange: return HO_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::kSingularChain: return HO_ERR_SINGULAR_CHAIN;
    case ErrorCode::kIllConditioned: return HO_ERR_ILL_CONDITIONED;
    case ErrorCode::kZeroTorque: return HO_ERR_ZERO_TORQUE;
    case ErrorCode::kNoFeasiblePoint: return HO_ERR_NO_FEASIBLE_POINT;
  }
  return HO_ERR_INTERNAL;
}

ho_status fail(ho_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <class Fn>
ho_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HO_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ho_status null_argument(const char* what) {
  return fail(HO_ERR_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* ho_version(void) { return "1.0.0"; }

const char* ho_status_name(ho_status status) {
  switch (status) {
    case HO_OK: return "OK";
    case HO_ERR_INTERNAL: return "E_INTERNAL";
    default: break;
  }
  static const ErrorCode kCodes[] = {
      ErrorCode::kInvalidArgument, ErrorCode::kIo, ErrorCode::kParse, ErrorCode::kSchema,
      ErrorCode::kValidation, ErrorCode::kDegenerateVelocity, ErrorCode::kIndexOutOfRange,
      ErrorCode::kSingularChain, ErrorCode::kIllConditioned, ErrorCode::kZeroTorque,
      ErrorCode::kNoFeasiblePoint};
  for (ErrorCode c : kCodes) {
    if (to_status(c) == status) return handleopt::error_code_name(c).data();
  }
  return "E_UNKNOWN";
}

const char* ho_last_error_message(void) { return g_last_error.c_str(); }

void ho_string_free(char* text) { std::free(text); }

void ho_overrides_init(ho_overrides* o) {
  if (o) *o = ho_overrides{};
}

ho_status ho_scenario_parse(const char* json_text, ho_scenario** out) {
  if (!json_text) return null_argument("json_text");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto s = std::make_unique<ho_scenario>();
    s->scenario = handleopt::parse_scenario(json_text);
    *out = s.release();
    return HO_OK;
  });
}

ho_status ho_scenario_load(const char* path, ho_scenario** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto s = std::make_unique<ho_scenario>();
    s->scenario = handleopt::load_scenario(path);
    *out = s.release();
    return HO_OK;
  });
}

ho_status ho_scenario_clone(const ho_scenario* scenario, ho_scenario** out) {
  if (!scenario) return null_argument("scenario");
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new ho_scenario(*scenario);
    return HO_OK;
  });
}

void ho_scenario_free(ho_scenario* scenario) { delete scenario; }

ho_status ho_scenario_apply_overrides(ho_scenario* scenario, const ho_overrides* o) {
  if (!scenario) return null_argument("scenario");
  if (!o) return null_argument("overrides");
  return guarded([&] {
    handleopt::Overrides ov;
    if (o->has_grid_step) ov.grid_step_deg = o->grid_step_deg;
    if (o->has_a) ov.a = o->a;
    if (o->has_force_model) {
      if (o->force_model != HO_FORCE_EXPANDED && o->force_model != HO_FORCE_LSQ) {
        return fail(HO_ERR_INVALID_ARGUMENT, "unknown force model");
      }
      ov.force_model = o->force_model == HO_FORCE_EXPANDED ? handleopt::ForceModel::kExpanded
                                                           : handleopt::ForceModel::kLeastSquares;
    }
    if (o->has_torques) {
      ov.torque_magnitudes = std::array<double, 3>{
          o->torque_magnitudes_nm[0], o->torque_magnitudes_nm[1], o->torque_magnitudes_nm[2]};
    }
    if (o->has_limits) {
      ov.limits_deg = std::array<double, 4>{o->limits_deg[0], o->limits_deg[1], o->limits_deg[2],
                                            o->limits_deg[3]};
    }
    if (o->has_com_divisor) {
      ov.com_divisor = o->com_divisor == HO_COM_NONARM_MASS ? handleopt::ComDivisor::kNonArmMass
                                                            : handleopt::ComDivisor::kTotalMass;
    }
    handleopt::Scenario updated = scenario->scenario;
    handleopt::apply_overrides(updated, ov);
    for (const auto& f : handleopt::validate_scenario(updated)) {
      if (f.severity == handleopt::Severity::kError) {
        return fail(HO_ERR_VALIDATION, f.code + ": " + f.message);
      }
    }
    scenario->scenario = std::move(updated);
    if (o->constrained) scenario->options.constrained = true;
    if (o->threads) scenario->options.threads = o->threads;
    return HO_OK;
  });
}

ho_status ho_scenario_to_json(const ho_scenario* scenario, char** json_out) {
  if (!scenario) return null_argument("scenario");
  if (!json_out) return null_argument("json_out");
  return guarded([&] {
    *json_out = copy_string(handleopt::scenario_to_json(scenario->scenario));
    return HO_OK;
  });
}

const char* ho_scenario_name(const ho_scenario* scenario) {
  return scenario ? scenario->scenario.name.c_str() : "";
}

size_t ho_scenario_frame_count(const ho_scenario* scenario) {
  return scenario ? scenario->scenario.frames.size() : 0;
}

size_t ho_scenario_max_effort_index(const ho_scenario* scenario) {
  return scenario ? scenario->scenario.max_effort_index : 0;
}

ho_status ho_scenario_frame_com(const ho_scenario* scenario, size_t frame, double* time_s,
                                double com_xy_m[2]) {
  if (!scenario) return null_argument("scenario");
  if (!com_xy_m) return null_argument("com_xy_m");
  return guarded([&] {
    const auto& s = scenario->scenario;
    if (frame >= s.frames.size()) {
      return fail(HO_ERR_INDEX_OUT_OF_RANGE, "frame " + std::to_string(frame) + " does not exist");
    }
    const auto c = handleopt::nonarm_com(s.frames[frame].pose, s.segments, s.com_divisor);
    com_xy_m[0] = c.x;
    com_xy_m[1] = c.y;
    if (time_s) *time_s = s.frames[frame].time;
    return HO_OK;
  });
}

ho_status ho_scenario_com_state(const ho_scenario* scenario, size_t frame, ho_com_state* out) {
  if (!scenario) return null_argument("scenario");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto& s = scenario->scenario;
    const auto c = handleopt::com_velocity(s.frames, s.segments, frame, s.com_divisor);
    *out = ho_com_state{{c.position.x, c.position.y}, {c.direction.x, c.direction.y}, c.speed};
    return HO_OK;
  });
}

ho_status ho_scenario_validate(const ho_scenario* scenario, ho_findings** out) {
  if (!scenario) return null_argument("scenario");
  if (!out) return null_argument("out");
  return guarded([&] {
    auto f = std::make_unique<ho_findings>();
    f->items = handleopt::validate_scenario(scenario->scenario);
    *out = f.release();
    return HO_OK;
  });
}

size_t ho_findings_count(const ho_findings* findings) {
  return findings ? findings->items.size() : 0;
}

size_t ho_findings_error_count(const ho_findings* findings) {
  size_t n = 0;
  if (findings) {
    for (const auto& f : findings->items) n += f.severity == handleopt::Severity::kError ? 1 : 0;
  }
  return n;
}

ho_status ho_findings_get(const ho_findings* findings, size_t index, int* is_error,
                          const char** code, const char** message) {
  if (!findings) return null_argument("findings");
  if (index >= findings->items.size()) {
    return fail(HO_ERR_INDEX_OUT_OF_RANGE, "finding index out of range");
  }
  const auto& f = findings->items[index];
  if (is_error) *is_error = f.severity == handleopt::Severity::kError ? 1 : 0;
  if (code) *code = f.code.c_str();
  if (message) *message = f.message.c_str();
  return HO_OK;
}

void ho_findings_free(ho_findings* findings) { delete findings; }

ho_status ho_optimize(const ho_scenario* scenario, ho_result** out) {
  if (!scenario) return null_argument("scenario");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto& s = scenario->scenario;
    handleopt::OptimizeOptions options = scenario->options;
    options.floor_y = s.floor_y;
    auto r = std::make_unique<ho_result>();
    r->result = handleopt::optimize_placement(handleopt::make_context(s), s.limits, s.objective,
                                              s.robot, options);
    r->constrained = options.constrained;
    *out = r.release();
    return HO_OK;
  });
}

void ho_result_free(ho_result* result) { delete result; }

ho_status ho_result_placement(const ho_result* result, ho_placement_info* out) {
  if (!result) return null_argument("result");
  if (!out) return null_argument("out");
  const auto& p = result->result.placement;
  *out = ho_placement_info{};
  out->theta5_deg = p.theta5_deg;
  out->theta6_deg = p.theta6_deg;
  out->handle_m[0] = p.handle.x;
  out->handle_m[1] = p.handle.y;
  out->objective = p.objective_value;
  out->f_arm_n[0] = p.f_arm.x;
  out->f_arm_n[1] = p.f_arm.y;
  for (int i = 0; i < 3; ++i) out->torque_signs[i] = p.torque_signs[i];
  out->violation_count = p.feasibility.size();
  out->theta5_count = result->result.landscape.theta5_deg.size();
  out->theta6_count = result->result.landscape.theta6_deg.size();
  return HO_OK;
}

ho_status ho_result_violation(const ho_result* result, size_t index, const char** code,
                              const char** message) {
  if (!result) return null_argument("result");
  const auto& v = result->result.placement.feasibility;
  if (index >= v.size()) return fail(HO_ERR_INDEX_OUT_OF_RANGE, "violation index out of range");
  if (code) *code = v[index].code.c_str();
  if (message) *message = v[index].message.c_str();
  return HO_OK;
}

ho_status ho_write_report(const ho_scenario* scenario, const ho_result* result,
                          const char* out_dir) {
  if (!scenario) return null_argument("scenario");
  if (!result) return null_argument("result");
  if (!out_dir) return null_argument("out_dir");
  return guarded([&] {
    handleopt::write_placement_report(scenario->scenario, result->result, out_dir,
                                      result->constrained);
    return HO_OK;
  });
}

ho_status ho_write_landscape_csv(const ho_result* result, const char* path) {
  if (!result) return null_argument("result");
  if (!path) return null_argument("path");
  return guarded([&] {
    handleopt::write_text_file(path, handleopt::landscape_csv(result->result.landscape));
    return HO_OK;
  });
}

ho_status ho_write_text(const char* path, const char* text) {
  if (!path) return null_argument("path");
  if (!text) return null_argument("text");
  return guarded([&] {
    handleopt::write_text_file(path, text);
    return HO_OK;
  });
}

ho_status ho_render_scene(const ho_scenario* scenario, size_t frame, const ho_result* result,
                          char** svg_out) {
  if (!scenario) return null_argument("scenario");
  if (!svg_out) return null_argument("svg_out");
  return guarded([&] {
    *svg_out = copy_string(handleopt::render_scene(
        scenario->scenario, frame, result ? &result->result.placement : nullptr));
    return HO_OK;
  });
}

ho_status ho_render_landscape(const ho_result* result, char** svg_out) {
  if (!result) return null_argument("result");
  if (!svg_out) return null_argument("svg_out");
  return guarded([&] {
    *svg_out = copy_string(
        handleopt::render_landscape(result->result.landscape, &result->result.placement));
    return HO_OK;
  });
}

}  // extern "C"

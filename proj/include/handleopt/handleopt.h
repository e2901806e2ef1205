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

/* C interface to handleopt.
 *
 * All objects are opaque handles created and destroyed by the library.
 * Every fallible call returns an ho_status; on failure a description of the
 * most recent error on the calling thread is available from
 * ho_last_error_message(). Strings returned through `char**` out-parameters
 * are owned by the caller and released with ho_string_free(). Pointers
 * returned as `const char*` stay valid as long as the owning handle. */

#ifndef HANDLEOPT_HANDLEOPT_H_
#define HANDLEOPT_HANDLEOPT_H_

#include <stddef.h>

#if defined(_WIN32)
#  if defined(HANDLEOPT_BUILDING_LIBRARY)
#    define HO_API __declspec(dllexport)
#  else
#    define HO_API __declspec(dllimport)
#  endif
#else
#  define HO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ho_status {
  HO_OK = 0,
  HO_ERR_INVALID_ARGUMENT = 1,
  HO_ERR_IO = 2,
  HO_ERR_PARSE = 3,
  HO_ERR_SCHEMA = 4,
  HO_ERR_VALIDATION = 5,
  HO_ERR_DEGENERATE_VELOCITY = 6,
  HO_ERR_INDEX_OUT_OF_RANGE = 7,
  HO_ERR_SINGULAR_CHAIN = 8,
  HO_ERR_ILL_CONDITIONED = 9,
  HO_ERR_ZERO_TORQUE = 10,
  HO_ERR_NO_FEASIBLE_POINT = 11,
  HO_ERR_INTERNAL = 12
} ho_status;

typedef enum ho_force_model { HO_FORCE_EXPANDED = 0, HO_FORCE_LSQ = 1 } ho_force_model;
typedef enum ho_com_divisor { HO_COM_TOTAL_MASS = 0, HO_COM_NONARM_MASS = 1 } ho_com_divisor;

typedef struct ho_scenario ho_scenario;
typedef struct ho_findings ho_findings;
typedef struct ho_result ho_result;

/* Optional settings applied on top of a loaded scenario. Fields are used
 * only when the matching has_* flag is nonzero. */
typedef struct ho_overrides {
  int has_grid_step;
  double grid_step_deg;
  int has_a;
  double a;
  int has_force_model;
  ho_force_model force_model;
  int has_torques;
  double torque_magnitudes_nm[3]; /* |tau5|, |tau6|, |tau7| */
  int has_limits;
  double limits_deg[4]; /* theta5 min, theta5 max, theta6 min, theta6 max */
  int has_com_divisor;
  ho_com_divisor com_divisor;
  int constrained;   /* nonzero: exclude robot-infeasible grid points */
  unsigned threads;  /* nonzero: worker threads for grid evaluation */
} ho_overrides;

typedef struct ho_com_state {
  double position_m[2];
  double direction[2];
  double speed_mps;
} ho_com_state;

typedef struct ho_placement_info {
  double theta5_deg;
  double theta6_deg;
  double handle_m[2];
  double objective;
  double f_arm_n[2];
  int torque_signs[3]; /* s5, s6, s7 */
  size_t violation_count;
  size_t theta5_count;
  size_t theta6_count;
} ho_placement_info;

HO_API const char* ho_version(void);

/* Stable identifier for a status, e.g. "E_VALIDATION". */
HO_API const char* ho_status_name(ho_status status);

HO_API const char* ho_last_error_message(void);

HO_API void ho_string_free(char* text);

HO_API void ho_overrides_init(ho_overrides* overrides);

HO_API ho_status ho_scenario_load(const char* path, ho_scenario** out);
HO_API ho_status ho_scenario_parse(const char* json_text, ho_scenario** out);
HO_API ho_status ho_scenario_clone(const ho_scenario* scenario, ho_scenario** out);
HO_API void ho_scenario_free(ho_scenario* scenario);

/* Applies the overrides and re-validates; the scenario is left unchanged
 * and HO_ERR_VALIDATION returned if the result would be invalid. */
HO_API ho_status ho_scenario_apply_overrides(ho_scenario* scenario, const ho_overrides* overrides);

HO_API ho_status ho_scenario_to_json(const ho_scenario* scenario, char** json_out);

HO_API const char* ho_scenario_name(const ho_scenario* scenario);
HO_API size_t ho_scenario_frame_count(const ho_scenario* scenario);
HO_API size_t ho_scenario_max_effort_index(const ho_scenario* scenario);

/* Time and non-arm COM of one frame. */
HO_API ho_status ho_scenario_frame_com(const ho_scenario* scenario, size_t frame, double* time_s,
                                       double com_xy_m[2]);

/* COM position and normalized velocity at an interior frame. */
HO_API ho_status ho_scenario_com_state(const ho_scenario* scenario, size_t frame,
                                       ho_com_state* out);

HO_API ho_status ho_scenario_validate(const ho_scenario* scenario, ho_findings** out);
HO_API size_t ho_findings_count(const ho_findings* findings);
HO_API size_t ho_findings_error_count(const ho_findings* findings);
HO_API ho_status ho_findings_get(const ho_findings* findings, size_t index, int* is_error,
                                 const char** code, const char** message);
HO_API void ho_findings_free(ho_findings* findings);

HO_API ho_status ho_optimize(const ho_scenario* scenario, ho_result** out);
HO_API void ho_result_free(ho_result* result);
HO_API ho_status ho_result_placement(const ho_result* result, ho_placement_info* out);
HO_API ho_status ho_result_violation(const ho_result* result, size_t index, const char** code,
                                     const char** message);

/* Writes report.json and landscape.csv into out_dir. */
HO_API ho_status ho_write_report(const ho_scenario* scenario, const ho_result* result,
                                 const char* out_dir);
HO_API ho_status ho_write_landscape_csv(const ho_result* result, const char* path);
HO_API ho_status ho_write_text(const char* path, const char* text);

/* SVG documents. `result` may be NULL to omit the optimal arm and handle. */
HO_API ho_status ho_render_scene(const ho_scenario* scenario, size_t frame,
                                 const ho_result* result, char** svg_out);
HO_API ho_status ho_render_landscape(const ho_result* result, char** svg_out);

#ifdef __cplusplus
}
#endif

#endif /* HANDLEOPT_HANDLEOPT_H_ */

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


#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "handleopt/handleopt.h"

namespace {

std::string fixture(const char* name) {
  return std::string(HANDLEOPT_FIXTURE_DIR) + "/" + name + ".json";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ho_scenario* load(const char* name, double grid_step_deg = 2.0) {
  ho_scenario* s = nullptr;
  EXPECT_EQ(ho_scenario_load(fixture(name).c_str(), &s), HO_OK) << ho_last_error_message();
  ho_overrides ov;
  ho_overrides_init(&ov);
  ov.has_grid_step = 1;
  ov.grid_step_deg = grid_step_deg;
  EXPECT_EQ(ho_scenario_apply_overrides(s, &ov), HO_OK);
  return s;
}

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(ho_version(), "1.0.0");
  EXPECT_STREQ(ho_status_name(HO_OK), "OK");
  EXPECT_STREQ(ho_status_name(HO_ERR_VALIDATION), "E_VALIDATION");
  EXPECT_STREQ(ho_status_name(HO_ERR_SINGULAR_CHAIN), "E_SINGULAR_CHAIN");
}

TEST(CApi, LoadErrorsMapToStatus) {
  ho_scenario* s = nullptr;
  EXPECT_EQ(ho_scenario_load("/nonexistent.json", &s), HO_ERR_IO);
  EXPECT_EQ(s, nullptr);
  EXPECT_GT(std::strlen(ho_last_error_message()), 0u);
  EXPECT_EQ(ho_scenario_parse("{", &s), HO_ERR_PARSE);
  EXPECT_EQ(ho_scenario_parse("{\"schema_version\": \"1\"}", &s), HO_ERR_SCHEMA);
  EXPECT_EQ(ho_scenario_load(nullptr, &s), HO_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ho_scenario_load(fixture("lie_to_sit_bed").c_str(), nullptr), HO_ERR_INVALID_ARGUMENT);
}

TEST(CApi, ScenarioAccessors) {
  ho_scenario* s = load("sit_to_stand_bed");
  EXPECT_STREQ(ho_scenario_name(s), "sit_to_stand_bed");
  EXPECT_EQ(ho_scenario_frame_count(s), 5u);
  EXPECT_EQ(ho_scenario_max_effort_index(s), 2u);
  ho_com_state st;
  ASSERT_EQ(ho_scenario_com_state(s, 2, &st), HO_OK);
  EXPECT_NEAR(std::hypot(st.direction[0], st.direction[1]), 1.0, 1e-12);
  EXPECT_NEAR(st.position_m[0], 0.10847228612709538, 1e-9);
  EXPECT_EQ(ho_scenario_com_state(s, 0, &st), HO_ERR_INDEX_OUT_OF_RANGE);
  double t = 0.0;
  double c[2];
  EXPECT_EQ(ho_scenario_frame_com(s, 4, &t, c), HO_OK);
  EXPECT_DOUBLE_EQ(t, 0.4);
  EXPECT_EQ(ho_scenario_frame_com(s, 5, &t, c), HO_ERR_INDEX_OUT_OF_RANGE);
  ho_findings* f = nullptr;
  ASSERT_EQ(ho_scenario_validate(s, &f), HO_OK);
  EXPECT_EQ(ho_findings_error_count(f), 0u);
  ho_findings_free(f);
  ho_scenario_free(s);
}

TEST(CApi, BadOverridesLeaveScenarioUnchanged) {
  ho_scenario* s = load("lie_to_sit_bed");
  char* before = nullptr;
  ASSERT_EQ(ho_scenario_to_json(s, &before), HO_OK);
  ho_overrides ov;
  ho_overrides_init(&ov);
  ov.has_a = 1;
  ov.a = -1.0;
  EXPECT_EQ(ho_scenario_apply_overrides(s, &ov), HO_ERR_VALIDATION);
  char* after = nullptr;
  ASSERT_EQ(ho_scenario_to_json(s, &after), HO_OK);
  EXPECT_STREQ(before, after);
  ho_string_free(before);
  ho_string_free(after);
  ho_scenario_free(s);
}

TEST(CApi, CloneIsIndependent) {
  ho_scenario* s = load("lie_to_sit_bed");
  ho_scenario* c = nullptr;
  ASSERT_EQ(ho_scenario_clone(s, &c), HO_OK);
  ho_overrides ov;
  ho_overrides_init(&ov);
  ov.has_a = 1;
  ov.a = 0.0;
  ASSERT_EQ(ho_scenario_apply_overrides(c, &ov), HO_OK);
  char* a = nullptr;
  char* b = nullptr;
  ho_scenario_to_json(s, &a);
  ho_scenario_to_json(c, &b);
  EXPECT_STRNE(a, b);
  ho_string_free(a);
  ho_string_free(b);
  ho_scenario_free(c);
  ho_scenario_free(s);
}

TEST(CApi, OptimizeAndWrite) {
  ho_scenario* s = load("toilet_sit_to_stand");
  ho_result* r = nullptr;
  ASSERT_EQ(ho_optimize(s, &r), HO_OK) << ho_last_error_message();
  ho_placement_info p;
  ASSERT_EQ(ho_result_placement(r, &p), HO_OK);
  EXPECT_EQ(p.theta5_count, 123u);  // -60..184 step 2
  EXPECT_EQ(p.theta6_count, 86u);   // 5..175 step 2
  EXPECT_TRUE(std::isfinite(p.objective));
  for (size_t i = 0; i < p.violation_count; ++i) {
    const char* code = nullptr;
    const char* msg = nullptr;
    EXPECT_EQ(ho_result_violation(r, i, &code, &msg), HO_OK);
    EXPECT_NE(code, nullptr);
  }
  const char* code = nullptr;
  const char* msg = nullptr;
  EXPECT_EQ(ho_result_violation(r, p.violation_count, &code, &msg), HO_ERR_INDEX_OUT_OF_RANGE);

  const auto dir = std::filesystem::temp_directory_path() / "handleopt_capi_test";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(ho_write_report(s, r, dir.string().c_str()), HO_OK) << ho_last_error_message();
  EXPECT_NE(slurp((dir / "report.json").string()).find("\"theta5_deg\""), std::string::npos);
  const std::string csv = slurp((dir / "landscape.csv").string());
  EXPECT_EQ(csv.rfind("theta5_deg,theta6_deg,objective,feasible\n", 0), 0u);

  char* svg = nullptr;
  ASSERT_EQ(ho_render_scene(s, 2, r, &svg), HO_OK);
  EXPECT_NE(std::strstr(svg, "id=\"handle\""), nullptr);
  ho_string_free(svg);
  ASSERT_EQ(ho_render_scene(s, 0, nullptr, &svg), HO_OK);
  EXPECT_EQ(std::strstr(svg, "id=\"handle\""), nullptr);
  ho_string_free(svg);
  ASSERT_EQ(ho_render_landscape(r, &svg), HO_OK);
  EXPECT_NE(std::strstr(svg, "id=\"argmax\""), nullptr);
  ho_string_free(svg);
  EXPECT_EQ(ho_render_scene(s, 17, nullptr, &svg), HO_ERR_INDEX_OUT_OF_RANGE);

  std::filesystem::remove_all(dir);
  ho_result_free(r);
  ho_scenario_free(s);
}

TEST(CApi, ConstrainedInfeasibleReportsNoFeasiblePoint) {
  ho_scenario* s = load("sit_to_stand_bed", 5.0);
  ho_overrides ov;
  ho_overrides_init(&ov);
  ov.constrained = 1;
  ov.has_limits = 1;
  // a nearly straight arm raised overhead puts every handle above the robot's range
  const double lim[4] = {175.0, 185.0, 5.0, 10.0};
  std::memcpy(ov.limits_deg, lim, sizeof lim);
  ASSERT_EQ(ho_scenario_apply_overrides(s, &ov), HO_OK) << ho_last_error_message();
  ho_result* r = nullptr;
  EXPECT_EQ(ho_optimize(s, &r), HO_ERR_NO_FEASIBLE_POINT);
  EXPECT_EQ(r, nullptr);

  // default limits: a feasible optimum exists and carries no violations
  ov.has_limits = 0;
  ASSERT_EQ(ho_scenario_apply_overrides(s, &ov), HO_OK);
  const double defaults[4] = {-60.0, 185.0, 5.0, 175.0};
  std::memcpy(ov.limits_deg, defaults, sizeof defaults);
  ov.has_limits = 1;
  ASSERT_EQ(ho_scenario_apply_overrides(s, &ov), HO_OK);
  ASSERT_EQ(ho_optimize(s, &r), HO_OK) << ho_last_error_message();
  ho_placement_info p;
  ho_result_placement(r, &p);
  EXPECT_EQ(p.violation_count, 0u);
  ho_result_free(r);
  ho_scenario_free(s);
}

TEST(CApi, NullHandlesAreSafe) {
  ho_scenario_free(nullptr);
  ho_result_free(nullptr);
  ho_findings_free(nullptr);
  ho_string_free(nullptr);
  ho_result* r = nullptr;
  EXPECT_EQ(ho_optimize(nullptr, &r), HO_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ho_findings_count(nullptr), 0u);
}

}  // namespace

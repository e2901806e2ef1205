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
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "handleopt/error.hpp"
#include "handleopt/reporting.hpp"
#include "handleopt/scenario_io.hpp"
#include "test_support.hpp"

namespace handleopt {
namespace {

// Attribute of the first element carrying id="...".
std::string attr(const std::string& svg, const std::string& id, const std::string& name) {
  const std::regex element("<[a-z]+ id=\"" + id + "\"[^>]*>");
  std::smatch m;
  if (!std::regex_search(svg, m, element)) return {};
  const std::string tag = m.str();
  const std::regex a(" " + name + "=\"([^\"]*)\"");
  std::smatch v;
  return std::regex_search(tag, v, a) ? v[1].str() : std::string{};
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

std::vector<Vec2> points_of(const std::string& list) {
  std::vector<Vec2> out;
  std::istringstream in(list);
  std::string pair;
  while (in >> pair) {
    const auto comma = pair.find(',');
    out.push_back({std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
  }
  return out;
}

Scenario fixture(const char* name) { return load_scenario(testing::fixture_path(name)); }

OptimizationResult coarse_result(const Scenario& s) {
  ObjectiveConfig cfg = s.objective;
  cfg.grid_step = deg_to_rad(5.0);
  return optimize_placement(make_context(s), s.limits, cfg, s.robot);
}

TEST(Reporting, TransformRoundTrip) {
  const Scenario s = fixture("bathtub_stand");
  const CanvasTransform t = scene_transform(s, 2);
  for (const Vec2& p : {Vec2{0.0, 0.0}, Vec2{0.37, 1.2}, Vec2{-0.4, 0.05}}) {
    const Vec2 back = t.to_world(t.to_canvas(p));
    EXPECT_NEAR(back.x, p.x, 1e-12);
    EXPECT_NEAR(back.y, p.y, 1e-12);
  }
  // y grows downward on the canvas
  EXPECT_LT(t.to_canvas({0.0, 1.0}).y, t.to_canvas({0.0, 0.0}).y);
}

TEST(Reporting, ComMarkerSitsOnCom) {
  const Scenario s = fixture("sit_to_stand_bed");
  const std::string svg = render_scene(s, 2);
  const CanvasTransform t = scene_transform(s, 2);
  const Vec2 world =
      t.to_world({std::stod(attr(svg, "com", "cx")), std::stod(attr(svg, "com", "cy"))});
  const Vec2 com = make_context(s).com.position;
  EXPECT_NEAR(world.x, com.x, 1e-9);
  EXPECT_NEAR(world.y, com.y, 1e-9);
}

TEST(Reporting, UprightPoseDrawsOneVerticalLine) {
  Scenario s = fixture("sit_to_stand_bed");
  for (auto& f : s.frames) {
    f.pose.theta = {std::numbers::pi / 2, 0.0, 0.0, 0.0, 0.0, 0.0};
  }
  const std::string svg = render_scene(s, 2);
  const auto pts = points_of(attr(svg, "body", "points"));
  ASSERT_EQ(pts.size(), 6u);  // toe, ankle, knee, hip, shoulder, head
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_NEAR(pts[i].x, pts[1].x, 1e-9);
  EXPECT_LT(pts[0].x, pts[1].x);  // toes point toward -x
}

TEST(Reporting, PlacementOnlyAddsElements) {
  const Scenario s = fixture("lie_to_sit_bed");
  const OptimizationResult r = coarse_result(s);
  const std::string plain = render_scene(s, 2);
  const std::string with = render_scene(s, 2, &r.placement);
  EXPECT_EQ(count(plain, "id=\"arm\""), 0u);
  EXPECT_EQ(count(with, "id=\"arm\""), 1u);
  EXPECT_EQ(count(with, "id=\"handle\""), 1u);
  std::set<std::string> lines;
  std::istringstream in(with);
  for (std::string l; std::getline(in, l);) lines.insert(l);
  std::istringstream base(plain);
  for (std::string l; std::getline(base, l);) EXPECT_TRUE(lines.count(l)) << l;
  // handle bar drawn at its physical size
  const CanvasTransform t = scene_transform(s, 2);
  EXPECT_NEAR(std::stod(attr(with, "handle", "width")), 0.46 * t.scale, 1e-9);
  EXPECT_NEAR(std::stod(attr(with, "handle", "height")), 0.038 * t.scale, 1e-9);
}

TEST(Reporting, VelocityArrowFollowsDirection) {
  const Scenario s = fixture("toilet_sit_to_stand");
  const std::string svg = render_scene(s, 2);
  const double dx = std::stod(attr(svg, "com-velocity", "x2")) - std::stod(attr(svg, "com-velocity", "x1"));
  const double dy = std::stod(attr(svg, "com-velocity", "y2")) - std::stod(attr(svg, "com-velocity", "y1"));
  const Vec2 d = make_context(s).com.direction;
  EXPECT_NEAR(std::hypot(dx, dy), RenderStyle{}.arrow_length_px, 1e-6);
  EXPECT_NEAR(dx / std::hypot(dx, dy), d.x, 1e-9);
  EXPECT_NEAR(-dy / std::hypot(dx, dy), d.y, 1e-9);
}

TEST(Reporting, SceneIsDeterministic) {
  const Scenario s = fixture("bathtub_stand");
  const OptimizationResult r = coarse_result(s);
  EXPECT_EQ(render_scene(s, 2, &r.placement), render_scene(s, 2, &r.placement));
  EXPECT_EQ(render_landscape(r.landscape, &r.placement), render_landscape(r.landscape, &r.placement));
  EXPECT_THROW(render_scene(s, 9), Error);
}

TEST(Reporting, LandscapeCellsAndArgmax) {
  const Scenario s = fixture("sit_to_stand_bed");
  const OptimizationResult r = coarse_result(s);
  const std::string svg = render_landscape(r.landscape, &r.placement);
  EXPECT_EQ(count(svg, "class=\"cell\""), r.landscape.cells.size());
  EXPECT_DOUBLE_EQ(std::stod(attr(svg, "argmax", "data-theta5-deg")), r.placement.theta5_deg);
  EXPECT_DOUBLE_EQ(std::stod(attr(svg, "argmax", "data-theta6-deg")), r.placement.theta6_deg);
  const auto best = landscape_argmax(r.landscape);
  ASSERT_TRUE(best.has_value());
  EXPECT_EQ(r.landscape.cells[*best].objective, r.placement.objective_value);
  EXPECT_EQ(render_landscape(r.landscape), svg);
}

TEST(Reporting, SingleCellLandscape) {
  Landscape l;
  l.theta5_deg = {10.0};
  l.theta6_deg = {90.0};
  l.cells = {{0.5, true, true}};
  const std::string svg = render_landscape(l);
  EXPECT_EQ(count(svg, "class=\"cell\""), 1u);
  EXPECT_EQ(attr(svg, "argmax", "data-theta5-deg"), "10");
  Landscape empty;
  EXPECT_THROW(render_landscape(empty), Error);
}

TEST(Reporting, NonEvaluableCellsAreGray) {
  Landscape l;
  l.theta5_deg = {0.0, 1.0};
  l.theta6_deg = {90.0};
  l.cells = {{std::nan(""), false, false}, {0.5, true, true}};
  const std::string svg = render_landscape(l);
  EXPECT_EQ(count(svg, "#bdbdbd"), 1u);
  EXPECT_EQ(attr(svg, "argmax", "data-theta5-deg"), "1");
}

}  // namespace
}  // namespace handleopt

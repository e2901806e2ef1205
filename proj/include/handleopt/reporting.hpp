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

#ifndef HANDLEOPT_REPORTING_HPP_
#define HANDLEOPT_REPORTING_HPP_

// SVG 1.1 output: a side view of one scenario frame and a heat map of the
// objective landscape. Output is deterministic for identical inputs.

#include <cstddef>
#include <optional>
#include <string>

#include "handleopt/placement.hpp"
#include "handleopt/scenario_io.hpp"
#include "handleopt/vec2.hpp"

namespace handleopt {

struct RenderStyle {
  double scale = 400.0;      // px per meter
  double margin_px = 40.0;
  double px_per_mm = 96.0 / 25.4;
  double body_stroke = 6.0;
  double arm_stroke = 5.0;
  double joint_radius = 4.0;
  double com_radius = 7.0;
  double arrow_length_px = 80.0;  // velocity arrows have fixed on-canvas length
  std::string body_color = "#34495e";
  std::string pose_arm_color = "#95a5a6";
  std::string arm_color = "#e67e22";
  std::string com_color = "#c0392b";
  std::string velocity_color = "#27ae60";
  std::string handle_color = "#2980b9";
  std::string floor_color = "#7f8c8d";
};

// World (m, +y up) to canvas (px, +y down):
//   cx = scale * (x - x_min) + margin,  cy = scale * (y_max - y) + margin
struct CanvasTransform {
  double scale = 1.0;
  double x_min = 0.0;
  double y_max = 0.0;
  double margin = 0.0;
  double width_px = 0.0;
  double height_px = 0.0;

  Vec2 to_canvas(const Vec2& world) const {
    return {scale * (world.x - x_min) + margin, scale * (y_max - world.y) + margin};
  }
  Vec2 to_world(const Vec2& canvas) const {
    return {(canvas.x - margin) / scale + x_min, y_max - (canvas.y - margin) / scale};
  }
};

// Canvas fitted to every frame of the scenario, the arm's reach around the
// shoulder at `frame_index`, and the floor line.
CanvasTransform scene_transform(const Scenario& scenario, std::size_t frame_index,
                                const RenderStyle& style = {});

// Body links, COM marker, unit velocity arrow (max-effort frame only) and,
// when given, the optimal arm and a to-scale handle glyph. Throws
// Error(kIndexOutOfRange) for a bad frame index.
std::string render_scene(const Scenario& scenario, std::size_t frame_index,
                         const Placement* placement = nullptr, const RenderStyle& style = {});

// Heat map over (theta5, theta6) with the argmax cell outlined. Colors follow
// the rank of each objective value; min and max are annotated. Throws
// Error(kInvalidArgument) for an empty landscape.
std::string render_landscape(const Landscape& landscape, const Placement* placement = nullptr);

// Index of the best feasible cell using the optimizer's tie-break rule.
std::optional<std::size_t> landscape_argmax(const Landscape& landscape);

}  // namespace handleopt

#endif  // HANDLEOPT_REPORTING_HPP_

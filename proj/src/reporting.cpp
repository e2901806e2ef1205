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

#include "handleopt/reporting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string_view>
#include <vector>

#include "handleopt/error.hpp"

namespace handleopt {
namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string point(const Vec2& p) { return num(p.x) + "," + num(p.y); }

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string header(double width_px, double height_px, double px_per_mm) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(width_px / px_per_mm) + "mm\" height=\"" + num(height_px / px_per_mm) +
         "mm\" viewBox=\"0 0 " + num(width_px) + " " + num(height_px) + "\">\n";
}

struct Bounds {
  double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
  void add(const Vec2& p) {
    x_min = std::min(x_min, p.x);
    x_max = std::max(x_max, p.x);
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
};

// Five-stop approximation of the viridis ramp.
std::string ramp(double t) {
  static constexpr std::array<std::array<double, 3>, 5> kStops{{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const auto i = std::min<std::size_t>(3, static_cast<std::size_t>(t));
  const double f = t - static_cast<double>(i);
  char buf[16];
  int rgb[3];
  for (int k = 0; k < 3; ++k) {
    rgb[k] = static_cast<int>(std::lround(kStops[i][k] + f * (kStops[i + 1][k] - kStops[i][k])));
  }
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace

CanvasTransform scene_transform(const Scenario& scenario, std::size_t frame_index,
                                const RenderStyle& style) {
  if (frame_index >= scenario.frames.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "frame " + std::to_string(frame_index) + " does not exist (scenario has " +
                    std::to_string(scenario.frames.size()) + " frames)");
  }
  Bounds b;
  for (const auto& f : scenario.frames) {
    const ChainGeometry g = forward_kinematics(f.pose, scenario.segments);
    for (std::size_t i = 0; i < kLinkCount; ++i) {
      b.add(g.proximal[i]);
      b.add(g.distal[i]);
    }
  }
  const Vec2 shoulder =
      forward_kinematics(scenario.frames[frame_index].pose, scenario.segments).shoulder();
  const double reach = scenario.segments.arm_reach();
  b.add(shoulder - Vec2{reach, reach});
  b.add(shoulder + Vec2{reach, reach});
  b.add({b.x_min, scenario.floor_y});

  CanvasTransform t;
  t.scale = style.scale;
  t.margin = style.margin_px;
  t.x_min = b.x_min;
  t.y_max = b.y_max;
  t.width_px = style.scale * (b.x_max - b.x_min) + 2.0 * style.margin_px;
  t.height_px = style.scale * (b.y_max - b.y_min) + 2.0 * style.margin_px;
  return t;
}

std::string render_scene(const Scenario& scenario, std::size_t frame_index,
                         const Placement* placement, const RenderStyle& style) {
  const CanvasTransform tf = scene_transform(scenario, frame_index, style);
  const PoseFrame& frame = scenario.frames[frame_index];
  const ChainGeometry g = forward_kinematics(frame.pose, scenario.segments);
  const Vec2 com = nonarm_com(frame.pose, scenario.segments, scenario.com_divisor);
  auto c = [&](const Vec2& w) { return tf.to_canvas(w); };

  std::string svg = header(tf.width_px, tf.height_px, style.px_per_mm);
  svg += "  <title>" + escape(scenario.name) + " frame " + std::to_string(frame_index) +
         "</title>\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + num(tf.width_px) + "\" height=\"" +
         num(tf.height_px) + "\" fill=\"#ffffff\"/>\n";

  const double floor_cy = c({0.0, scenario.floor_y}).y;
  svg += "  <line id=\"floor\" x1=\"0\" y1=\"" + num(floor_cy) + "\" x2=\"" + num(tf.width_px) +
         "\" y2=\"" + num(floor_cy) + "\" stroke=\"" + style.floor_color +
         "\" stroke-width=\"2\"/>\n";
  if (scenario.robot.base_x) {
    const double x = c({*scenario.robot.base_x, 0.0}).x;
    svg += "  <line id=\"robot-axis\" x1=\"" + num(x) + "\" y1=\"0\" x2=\"" + num(x) + "\" y2=\"" +
           num(floor_cy) + "\" stroke=\"" + style.floor_color +
           "\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n";
  }

  svg += "  <polyline id=\"body\" fill=\"none\" stroke=\"" + style.body_color +
         "\" stroke-width=\"" + num(style.body_stroke) +
         "\" stroke-linejoin=\"round\" stroke-linecap=\"round\" points=\"" + point(c(g.toe())) +
         " " + point(c(g.ankle())) + " " + point(c(g.knee())) + " " + point(c(g.hip())) + " " +
         point(c(g.shoulder())) + " " + point(c(g.head_top())) + "\"/>\n";
  svg += "  <polyline id=\"pose-arm\" fill=\"none\" stroke=\"" + style.pose_arm_color +
         "\" stroke-width=\"" + num(style.arm_stroke) +
         "\" stroke-linejoin=\"round\" stroke-linecap=\"round\" points=\"" +
         point(c(g.shoulder())) + " " + point(c(g.elbow())) + " " + point(c(g.wrist())) +
         "\"/>\n";
  for (const Vec2& j : {g.ankle(), g.knee(), g.hip(), g.shoulder(), g.elbow()}) {
    const Vec2 p = c(j);
    svg += "  <circle class=\"joint\" cx=\"" + num(p.x) + "\" cy=\"" + num(p.y) + "\" r=\"" +
           num(style.joint_radius) + "\" fill=\"" + style.body_color + "\"/>\n";
  }

  const Vec2 com_c = c(com);
  svg += "  <circle id=\"com\" cx=\"" + num(com_c.x) + "\" cy=\"" + num(com_c.y) + "\" r=\"" +
         num(style.com_radius) + "\" fill=\"" + style.com_color + "\"/>\n";

  if (frame_index > 0 && frame_index + 1 < scenario.frames.size()) {
    try {
      const ComState state =
          com_velocity(scenario.frames, scenario.segments, frame_index, scenario.com_divisor);
      // canvas y is flipped
      const Vec2 tip = com_c + style.arrow_length_px * Vec2{state.direction.x, -state.direction.y};
      svg += "  <line id=\"com-velocity\" x1=\"" + num(com_c.x) + "\" y1=\"" + num(com_c.y) +
             "\" x2=\"" + num(tip.x) + "\" y2=\"" + num(tip.y) + "\" stroke=\"" +
             style.velocity_color + "\" stroke-width=\"3\"/>\n";
      const Vec2 back = Vec2{state.direction.x, -state.direction.y};
      const Vec2 side = perp(back);
      const Vec2 h1 = tip - 12.0 * back + 6.0 * side;
      const Vec2 h2 = tip - 12.0 * back - 6.0 * side;
      svg += "  <polygon id=\"com-velocity-head\" points=\"" + point(tip) + " " + point(h1) + " " +
             point(h2) + "\" fill=\"" + style.velocity_color + "\"/>\n";
      char speed[64];
      std::snprintf(speed, sizeof speed, "%.3g m/s", state.speed);
      svg += "  <text id=\"com-speed\" x=\"" + num(tip.x + 6.0) + "\" y=\"" + num(tip.y) +
             "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + style.velocity_color +
             "\">" + speed + "</text>\n";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateVelocity) throw;
    }
  }

  if (placement) {
    const PlacementContext ctx{shoulder_frame(frame.pose, scenario.segments), {}, scenario.segments};
    const Vec2 elbow = ctx.shoulder.origin + scenario.segments[kUpperArm].length *
                                                 unit_at(ctx.shoulder.theta_04 + placement->theta5);
    const Vec2 hand = handle_position(ctx.shoulder.origin, ctx.shoulder.theta_04,
                                      placement->theta5, placement->theta6, scenario.segments);
    svg += "  <polyline id=\"arm\" fill=\"none\" stroke=\"" + style.arm_color +
           "\" stroke-width=\"" + num(style.arm_stroke) +
           "\" stroke-linejoin=\"round\" stroke-linecap=\"round\" points=\"" +
           point(c(ctx.shoulder.origin)) + " " + point(c(elbow)) + " " + point(c(hand)) + "\"/>\n";
    const Vec2 hc = c(hand);
    const double w = scenario.robot.handle_length * tf.scale;
    const double h = scenario.robot.handle_diameter * tf.scale;
    svg += "  <rect id=\"handle\" x=\"" + num(hc.x - 0.5 * w) + "\" y=\"" + num(hc.y - 0.5 * h) +
           "\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" rx=\"" + num(0.5 * h) +
           "\" fill=\"" + style.handle_color + "\" fill-opacity=\"0.8\"/>\n";
    char label[96];
    std::snprintf(label, sizeof label, "theta5 %.1f deg, theta6 %.1f deg", placement->theta5_deg,
                  placement->theta6_deg);
    svg += "  <text id=\"handle-label\" x=\"" + num(hc.x + 0.5 * w + 6.0) + "\" y=\"" +
           num(hc.y + 4.0) + "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" +
           style.handle_color + "\">" + label + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::optional<std::size_t> landscape_argmax(const Landscape& land) {
  const std::size_t n5 = land.theta5_deg.size();
  const std::size_t n6 = land.theta6_deg.size();
  std::optional<std::size_t> best;
  for (std::size_t i6 = 0; i6 < n6; ++i6) {
    for (std::size_t i5 = 0; i5 < n5; ++i5) {
      const std::size_t k = i5 * n6 + i6;
      if (!land.cells[k].feasible) continue;
      if (!best || land.cells[k].objective > land.cells[*best].objective) best = k;
    }
  }
  return best;
}

std::string render_landscape(const Landscape& land, const Placement* placement) {
  const std::size_t n5 = land.theta5_deg.size();
  const std::size_t n6 = land.theta6_deg.size();
  if (n5 == 0 || n6 == 0 || land.cells.size() != n5 * n6) {
    throw Error(ErrorCode::kInvalidArgument, "landscape is empty or inconsistent");
  }
  const double cell = std::max(2.0, std::floor(600.0 / static_cast<double>(std::max(n5, n6))));
  const double left = 70.0, top = 40.0, right = 40.0, bottom = 70.0;
  const double width = left + cell * static_cast<double>(n5) + right;
  const double height = top + cell * static_cast<double>(n6) + bottom;

  // Rank-based coloring so a single sharp peak does not wash out the map.
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < land.cells.size(); ++k) {
    if (land.cells[k].evaluable) order.push_back(k);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return land.cells[a].objective < land.cells[b].objective;
  });
  std::vector<double> shade(land.cells.size(), -1.0);
  for (std::size_t r = 0; r < order.size(); ++r) {
    shade[order[r]] = order.size() > 1 ? static_cast<double>(r) / static_cast<double>(order.size() - 1) : 1.0;
  }

  std::optional<std::size_t> best;
  if (placement) {
    for (std::size_t k = 0; k < land.cells.size(); ++k) {
      if (land.theta5_deg[k / n6] == placement->theta5_deg &&
          land.theta6_deg[k % n6] == placement->theta6_deg) {
        best = k;
        break;
      }
    }
  } else {
    best = landscape_argmax(land);
  }

  auto cell_origin = [&](std::size_t k) {
    const double x = left + cell * static_cast<double>(k / n6);
    const double y = top + cell * static_cast<double>(n6 - 1 - k % n6);
    return Vec2{x, y};
  };

  std::string svg = header(width, height, 96.0 / 25.4);
  svg += "  <title>objective landscape</title>\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
         "\" fill=\"#ffffff\"/>\n";
  svg += "  <g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t k = 0; k < land.cells.size(); ++k) {
    const Vec2 o = cell_origin(k);
    const std::string fill = shade[k] < 0.0 ? "#bdbdbd" : ramp(shade[k]);
    svg += "    <rect class=\"cell\" x=\"" + num(o.x) + "\" y=\"" + num(o.y) + "\" width=\"" +
           num(cell) + "\" height=\"" + num(cell) + "\" fill=\"" + fill + "\"/>\n";
  }
  svg += "  </g>\n";
  if (best) {
    const Vec2 o = cell_origin(*best);
    svg += "  <rect id=\"argmax\" data-theta5-deg=\"" + num(land.theta5_deg[*best / n6]) +
           "\" data-theta6-deg=\"" + num(land.theta6_deg[*best % n6]) + "\" x=\"" + num(o.x - 1.0) +
           "\" y=\"" + num(o.y - 1.0) + "\" width=\"" + num(cell + 2.0) + "\" height=\"" +
           num(cell + 2.0) + "\" fill=\"none\" stroke=\"#e31a1c\" stroke-width=\"2\"/>\n";
  }

  const double plot_bottom = top + cell * static_cast<double>(n6);
  auto text = [&](const std::string& id, double x, double y, const std::string& body,
                  const char* anchor) {
    svg += "  <text id=\"" + id + "\" x=\"" + num(x) + "\" y=\"" + num(y) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"" + anchor + "\">" +
           body + "</text>\n";
  };
  text("theta5-min", left, plot_bottom + 16.0, num(land.theta5_deg.front()), "start");
  text("theta5-max", left + cell * static_cast<double>(n5), plot_bottom + 16.0,
       num(land.theta5_deg.back()), "end");
  text("theta5-label", left + 0.5 * cell * static_cast<double>(n5), plot_bottom + 32.0,
       "theta5 (deg)", "middle");
  text("theta6-min", left - 6.0, plot_bottom, num(land.theta6_deg.front()), "end");
  text("theta6-max", left - 6.0, top + 12.0, num(land.theta6_deg.back()), "end");
  text("theta6-label", 14.0, top + 0.5 * cell * static_cast<double>(n6), "theta6 (deg)", "start");
  if (!order.empty()) {
    char scale[160];
    std::snprintf(scale, sizeof scale, "objective min %.6g, max %.6g (color by rank)",
                  land.cells[order.front()].objective, land.cells[order.back()].objective);
    text("color-scale", left, plot_bottom + 52.0, scale, "start");
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace handleopt

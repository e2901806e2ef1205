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

#include "handleopt/body_model.hpp"

#include <cmath>
#include <sstream>

#include "handleopt/error.hpp"

namespace handleopt {

double SegmentSet::link_mass_sum() const {
  double sum = 0.0;
  for (const auto& link : links) sum += link.mass;
  return sum;
}

double SegmentSet::nonarm_mass() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < kNonArmLinkCount; ++i) sum += links[i].mass;
  return sum;
}

std::vector<Finding> check_segments(const SegmentSet& segments) {
  std::vector<Finding> out;
  auto error = [&](std::string code, std::string msg) {
    out.push_back({Severity::kError, std::move(code), std::move(msg)});
  };

  if (!(std::isfinite(segments.total_mass) && segments.total_mass > 0.0)) {
    error("total_mass", "total body mass must be positive and finite");
    return out;
  }
  bool links_ok = true;
  for (std::size_t i = 0; i < kLinkCount; ++i) {
    const auto& link = segments.links[i];
    const std::string who = "segment " + std::to_string(i) + " (" + link.name + ")";
    if (!(std::isfinite(link.length) && link.length > 0.0)) {
      error("segment_length", who + ": length must be > 0");
      links_ok = false;
    }
    if (!(std::isfinite(link.mass) && link.mass >= 0.0)) {
      error("segment_mass", who + ": mass must be >= 0");
      links_ok = false;
    }
    if (!(std::isfinite(link.com_fraction) && link.com_fraction >= 0.0 &&
          link.com_fraction <= 1.0)) {
      error("segment_com_fraction", who + ": com_fraction must lie in [0, 1]");
      links_ok = false;
    }
  }
  if (!links_ok) return out;

  const double sum = segments.link_mass_sum();
  if (std::abs(sum - segments.total_mass) > kMassClosureTolerance * segments.total_mass) {
    std::ostringstream msg;
    msg.precision(9);
    msg << "mass closure: segment masses sum to " << sum << " kg but total_mass is "
        << segments.total_mass << " kg";
    error("mass_closure", msg.str());
    return out;
  }

  const double share = segments.nonarm_mass() / segments.total_mass;
  if (share < kNonArmMassShareMin || share > kNonArmMassShareMax) {
    std::ostringstream msg;
    msg.precision(4);
    msg << "non-arm links carry " << share * 100.0
        << "% of body mass; expected 90-95% (reference subject: about 93%)";
    out.push_back({Severity::kWarning, "nonarm_mass_share", msg.str()});
  }
  return out;
}

SegmentSet default_segment_set() {
  SegmentSet s;
  s.total_mass = 60.0;
  s.links = {{
      {"foot", 0.20, 1.548, 0.40},
      {"shank", 0.41, 5.773, 0.56},
      {"thigh", 0.40, 17.738, 0.64},
      {"trunk_pelvis", 0.48, 25.545, 0.50},
      {"head_neck", 0.28, 4.008, 0.65},
      {"upper_arm", 0.30, 3.060, 0.575},
      {"forearm_hand", 0.33, 2.328, 0.50},
  }};
  return s;
}

ChainGeometry forward_kinematics(const BodyPose& pose, const SegmentSet& segments) {
  const auto& th = pose.theta;
  ChainGeometry g;
  auto& ang = g.absolute_angle;
  ang[kFoot] = kFootAngle;
  ang[kShank] = th[0];
  ang[kThigh] = ang[kShank] + th[1];
  ang[kTrunk] = ang[kThigh] + th[2];
  ang[kHead] = ang[kTrunk] + th[3];
  ang[kUpperArm] = ang[kTrunk] + th[4];
  ang[kForearm] = ang[kUpperArm] + th[5];

  auto place = [&](std::size_t link, const Vec2& from) {
    g.proximal[link] = from;
    g.distal[link] = from + segments[link].length * unit_at(ang[link]);
  };
  place(kFoot, pose.base);
  place(kShank, pose.base);
  place(kThigh, g.distal[kShank]);
  place(kTrunk, g.distal[kThigh]);
  place(kHead, g.distal[kTrunk]);
  place(kUpperArm, g.distal[kTrunk]);
  place(kForearm, g.distal[kUpperArm]);

  for (std::size_t i = 0; i < kLinkCount; ++i) {
    g.com[i] = g.proximal[i] + segments[i].com_fraction * (g.distal[i] - g.proximal[i]);
  }
  return g;
}

Vec2 nonarm_com(const BodyPose& pose, const SegmentSet& segments, ComDivisor divisor) {
  const ChainGeometry g = forward_kinematics(pose, segments);
  Vec2 moment;
  for (std::size_t i = 0; i < kNonArmLinkCount; ++i) moment += segments[i].mass * g.com[i];
  const double m = divisor == ComDivisor::kTotalMass ? segments.total_mass
                                                     : segments.nonarm_mass();
  return moment / m;
}

ComState com_velocity(std::span<const PoseFrame> frames, const SegmentSet& segments,
                      std::size_t index, ComDivisor divisor) {
  if (frames.size() < 3 || index == 0 || index + 1 >= frames.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "central difference needs a frame on each side of index " +
                    std::to_string(index) + " (sequence has " +
                    std::to_string(frames.size()) + " frames)");
  }
  const PoseFrame& before = frames[index - 1];
  const PoseFrame& after = frames[index + 1];
  const double dt = after.time - before.time;
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "frame times must be strictly increasing");
  }
  const Vec2 raw =
      (nonarm_com(after.pose, segments, divisor) - nonarm_com(before.pose, segments, divisor)) /
      dt;
  const double speed = norm(raw);
  if (!(speed >= kDegenerateSpeed)) {
    throw Error(ErrorCode::kDegenerateVelocity,
                "COM velocity at frame " + std::to_string(index) +
                    " is zero; its direction is undefined");
  }
  return {nonarm_com(frames[index].pose, segments, divisor), raw / speed, speed};
}

ShoulderFrame shoulder_frame(const BodyPose& pose, const SegmentSet& segments) {
  const ChainGeometry g = forward_kinematics(pose, segments);
  return {g.shoulder(), g.trunk_angle()};
}

}  // namespace handleopt

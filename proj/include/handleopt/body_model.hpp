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

#ifndef HANDLEOPT_BODY_MODEL_HPP_
#define HANDLEOPT_BODY_MODEL_HPP_

// Seven-link sagittal-plane body model.
//
// Links, in chain order from the ground:
//   0 foot, 1 shank, 2 thigh, 3 trunk+pelvis, 4 head+neck,
//   5 upper arm (both arms), 6 forearm+hand (both arms).
//
// Angle convention: absolute angle 0 is the world +x axis, counterclockwise
// positive. The subject faces -x. The foot lies flat on the floor pointing
// toward -x. theta[0] is the shank angle measured from the floor frame,
// theta[1] (knee) and theta[2] (hip) are relative to the previous link,
// theta[3] (head) and theta[4] (shoulder) are both measured from the trunk,
// and theta[5] (elbow) is relative to the upper arm.

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "handleopt/finding.hpp"
#include "handleopt/vec2.hpp"

namespace handleopt {

inline constexpr std::size_t kLinkCount = 7;
inline constexpr std::size_t kNonArmLinkCount = 5;
inline constexpr std::size_t kJointAngleCount = 6;

enum Link : std::size_t {
  kFoot = 0,
  kShank = 1,
  kThigh = 2,
  kTrunk = 3,
  kHead = 4,
  kUpperArm = 5,
  kForearm = 6,
};

// Absolute angle of the foot link.
inline constexpr double kFootAngle = std::numbers::pi;

// Relative tolerance for sum(link masses) == total mass.
inline constexpr double kMassClosureTolerance = 1e-9;

// Acceptable share of body mass carried by links 0..4.
inline constexpr double kNonArmMassShareMin = 0.90;
inline constexpr double kNonArmMassShareMax = 0.95;

// Below this COM speed the velocity direction is undefined.
inline constexpr double kDegenerateSpeed = 1e-9;

struct LinkSegment {
  std::string name;
  double length = 0.0;        // m
  double mass = 0.0;          // kg
  double com_fraction = 0.5;  // distance of the COM from the proximal joint / length
};

struct SegmentSet {
  std::array<LinkSegment, kLinkCount> links;
  double total_mass = 0.0;  // kg

  const LinkSegment& operator[](std::size_t i) const { return links[i]; }
  LinkSegment& operator[](std::size_t i) { return links[i]; }

  double link_mass_sum() const;
  double nonarm_mass() const;
  double arm_reach() const { return links[kUpperArm].length + links[kForearm].length; }
};

// Errors for invariant breaches (lengths, masses, COM fractions, mass
// closure); a warning when the non-arm mass share leaves the 90-95% band.
std::vector<Finding> check_segments(const SegmentSet& segments);

// Built-in copy of data/default_anthropometry.json (60 kg adult).
SegmentSet default_segment_set();

struct BodyPose {
  Vec2 base;  // ankle position, m
  std::array<double, kJointAngleCount> theta{};  // rad
};

struct PoseFrame {
  BodyPose pose;
  double time = 0.0;  // s
};

// Link endpoints and COM points for one pose.
struct ChainGeometry {
  std::array<Vec2, kLinkCount> proximal;
  std::array<Vec2, kLinkCount> distal;
  std::array<Vec2, kLinkCount> com;
  std::array<double, kLinkCount> absolute_angle{};

  const Vec2& ankle() const { return proximal[kShank]; }
  const Vec2& toe() const { return distal[kFoot]; }
  const Vec2& knee() const { return proximal[kThigh]; }
  const Vec2& hip() const { return proximal[kTrunk]; }
  const Vec2& shoulder() const { return proximal[kUpperArm]; }
  const Vec2& head_top() const { return distal[kHead]; }
  const Vec2& elbow() const { return proximal[kForearm]; }
  const Vec2& wrist() const { return distal[kForearm]; }
  double trunk_angle() const { return absolute_angle[kTrunk]; }
};

ChainGeometry forward_kinematics(const BodyPose& pose, const SegmentSet& segments);

// Which mass divides the links 0..4 moment sum. kTotalMass reproduces the
// printed model (total body mass M, arms included); kNonArmMass gives the
// true center of mass of links 0..4.
enum class ComDivisor { kTotalMass, kNonArmMass };

Vec2 nonarm_com(const BodyPose& pose, const SegmentSet& segments,
                ComDivisor divisor = ComDivisor::kTotalMass);

struct ComState {
  Vec2 position;   // m
  Vec2 direction;  // unit
  double speed = 0.0;  // m/s, before normalization
};

// Central difference of the non-arm COM around frames[index].
// Throws Error(kIndexOutOfRange) for an endpoint index and
// Error(kDegenerateVelocity) when the COM does not move.
ComState com_velocity(std::span<const PoseFrame> frames, const SegmentSet& segments,
                      std::size_t index, ComDivisor divisor = ComDivisor::kTotalMass);

// Shoulder joint and the absolute trunk angle theta_04. Arm angles measured
// from the trunk become world angles by adding theta_04.
struct ShoulderFrame {
  Vec2 origin;
  double theta_04 = 0.0;
};

ShoulderFrame shoulder_frame(const BodyPose& pose, const SegmentSet& segments);

}  // namespace handleopt

#endif  // HANDLEOPT_BODY_MODEL_HPP_

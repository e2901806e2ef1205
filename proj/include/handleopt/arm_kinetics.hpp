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

#ifndef HANDLEOPT_ARM_KINETICS_HPP_
#define HANDLEOPT_ARM_KINETICS_HPP_

// Static force analysis of the arm with the hands fixed on a handlebar.
//
// The body minus its arms is lumped into a point mass at the non-arm COM.
// With the handle held still, the arm and a virtual link from the shoulder
// to the COM form a serial three-bar chain rooted at the handle:
//
//   handle --(forearm r6)--> elbow --(upper arm r5)--> shoulder --(r_com)--> COM
//
// Torques tau7 (at the handle/wrist), tau6 (elbow) and tau5 (shoulder)
// produce a force on the COM. Two force maps are provided: the per-joint sum
// (each torque divided by its lever distance, pushing perpendicular to that
// lever) and the least-squares map (J J^T)^-1 J tau.

#include <array>

#include "handleopt/body_model.hpp"
#include "handleopt/vec2.hpp"

namespace handleopt {

// Minimum joint-to-COM distance (m) for a usable chain.
inline constexpr double kSingularLever = 1e-6;

// Largest accepted condition number of J J^T.
inline constexpr double kMaxJacobianCondition = 1e12;

struct TorqueSet {
  double tau5 = 0.0;  // shoulder, N m
  double tau6 = 0.0;  // elbow, N m
  double tau7 = 0.0;  // handle joint, N m

  double norm() const;
  friend constexpr bool operator==(const TorqueSet&, const TorqueSet&) = default;
};

struct VirtualChain {
  Vec2 shoulder;
  double theta_04 = 0.0;  // absolute trunk angle
  double theta5 = 0.0;    // shoulder angle from the trunk
  double theta6 = 0.0;    // elbow angle from the upper arm
  Vec2 com;

  Vec2 r5;     // shoulder -> elbow
  Vec2 r6;     // elbow -> handle
  Vec2 r_com;  // shoulder -> COM
  Vec2 elbow;
  Vec2 handle;

  double lever5 = 0.0;  // |r_com|
  double lever6 = 0.0;  // |r_com - r5|
  double lever7 = 0.0;  // |r_com - r5 - r6|

  double theta_com = 0.0;  // world angle of r_com
  double theta_6com = 0.0;
  double theta_7com = 0.0;
};

// Throws Error(kSingularChain) when any lever distance is below kSingularLever.
VirtualChain build_virtual_chain(const Vec2& shoulder, double theta_04, double theta5,
                                 double theta6, const SegmentSet& segments, const Vec2& com);

struct ComLinkAngles {
  double theta_6com = 0.0;
  double theta_7com = 0.0;
};

// Elbow and handle force angles from the law of cosines:
//   theta_6com = theta_04 + theta5 - pi - acos((|r5|^2 + |r_com-r5|^2 - |r_com|^2)
//                                             / (2 |r5| |r_com-r5|))
//   theta_7com = theta_04 + theta5 + theta6 - pi
//              + acos((|r6|^2 + |r_com-r5-r6|^2 - |r_com-r5|^2) / (2 |r6| |r_com-r5-r6|))
// The acos arguments are clamped to [-1, 1].
ComLinkAngles com_link_angles(const VirtualChain& chain);

// Unit push directions (-sin t, cos t) for the shoulder, elbow and handle
// terms of the per-joint sum, in that order.
std::array<Vec2, 3> joint_force_directions(const VirtualChain& chain);

// Per-joint sum:
//   F = tau5/|r_com| u(theta_com) + tau6/|r_com-r5| u(theta_6com)
//     + tau7/|r_com-r5-r6| u(theta_7com),   u(t) = (-sin t, cos t)
Vec2 arm_force_expanded(const VirtualChain& chain, const TorqueSet& torques);

// 2x3 Jacobian of the COM position with respect to the chain joint angles.
// Columns are ordered (handle joint, elbow, shoulder) to pair with
// (tau7, tau6, tau5). The column for a joint at p is perp(com - p).
struct Jacobian2x3 {
  std::array<Vec2, 3> columns;

  // J * (t0, t1, t2)
  Vec2 apply(const std::array<double, 3>& t) const;
};

Jacobian2x3 arm_jacobian(const VirtualChain& chain);

// F = (J J^T)^-1 J (tau7, tau6, tau5)^T, the least-squares solution of
// J^T F = tau. Throws Error(kIllConditioned) if cond(J J^T) > 1e12.
Vec2 arm_force_lsq(const VirtualChain& chain, const TorqueSet& torques);

// Weights w with F_lsq . v = w . (tau7, tau6, tau5). Same conditioning rule.
std::array<double, 3> lsq_projection_weights(const VirtualChain& chain, const Vec2& v);

// |F| / |tau|. Throws Error(kZeroTorque) when every torque is zero.
double mechanical_advantage(const Vec2& force, const TorqueSet& torques);

// F . v for a unit direction v. Throws Error(kInvalidArgument) if |v| is not 1.
double directed_advantage(const Vec2& force, const Vec2& direction);

}  // namespace handleopt

#endif  // HANDLEOPT_ARM_KINETICS_HPP_

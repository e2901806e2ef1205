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

#include "handleopt/arm_kinetics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <sstream>

#include "handleopt/error.hpp"

namespace handleopt {
namespace {

constexpr double kPi = std::numbers::pi;

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

[[noreturn]] void throw_singular(const char* what, double value) {
  std::ostringstream msg;
  msg.precision(9);
  msg << "singular arm chain: " << what << " = " << value << " m is below "
      << kSingularLever << " m";
  throw Error(ErrorCode::kSingularChain, msg.str());
}

struct Sym2 {
  double xx = 0.0, xy = 0.0, yy = 0.0;
};

Sym2 gram(const Jacobian2x3& jac) {
  Sym2 a;
  for (const Vec2& c : jac.columns) {
    a.xx += c.x * c.x;
    a.xy += c.x * c.y;
    a.yy += c.y * c.y;
  }
  return a;
}

// Solves A x = b for the symmetric positive semi-definite Gram matrix,
// rejecting it when its condition number exceeds kMaxJacobianCondition.
Vec2 solve_gram(const Sym2& a, const Vec2& b) {
  const double trace = a.xx + a.yy;
  const double det = a.xx * a.yy - a.xy * a.xy;
  const double disc = std::sqrt(std::max(0.0, 0.25 * (a.xx - a.yy) * (a.xx - a.yy) + a.xy * a.xy));
  const double lambda_max = 0.5 * trace + disc;
  const double lambda_min = lambda_max > 0.0 ? det / lambda_max : 0.0;
  if (!(lambda_min > 0.0) || lambda_max / lambda_min > kMaxJacobianCondition) {
    std::ostringstream msg;
    msg.precision(9);
    msg << "J J^T is ill-conditioned (eigenvalues " << lambda_max << ", " << lambda_min << ")";
    throw Error(ErrorCode::kIllConditioned, msg.str());
  }
  return {(a.yy * b.x - a.xy * b.y) / det, (a.xx * b.y - a.xy * b.x) / det};
}

}  // namespace

double TorqueSet::norm() const {
  return std::sqrt(tau5 * tau5 + tau6 * tau6 + tau7 * tau7);
}

VirtualChain build_virtual_chain(const Vec2& shoulder, double theta_04, double theta5,
                                 double theta6, const SegmentSet& segments, const Vec2& com) {
  VirtualChain c;
  c.shoulder = shoulder;
  c.theta_04 = theta_04;
  c.theta5 = theta5;
  c.theta6 = theta6;
  c.com = com;
  c.r5 = segments[kUpperArm].length * unit_at(theta_04 + theta5);
  c.r6 = segments[kForearm].length * unit_at(theta_04 + theta5 + theta6);
  c.r_com = com - shoulder;
  c.elbow = shoulder + c.r5;
  c.handle = shoulder + c.r5 + c.r6;
  c.lever5 = norm(c.r_com);
  c.lever6 = norm(c.r_com - c.r5);
  c.lever7 = norm(c.r_com - c.r5 - c.r6);
  if (!(c.lever5 >= kSingularLever)) throw_singular("shoulder-to-COM distance", c.lever5);
  if (!(c.lever6 >= kSingularLever)) throw_singular("elbow-to-COM distance", c.lever6);
  if (!(c.lever7 >= kSingularLever)) throw_singular("handle-to-COM distance", c.lever7);
  c.theta_com = angle_of(c.r_com);
  const ComLinkAngles angles = com_link_angles(c);
  c.theta_6com = angles.theta_6com;
  c.theta_7com = angles.theta_7com;
  return c;
}

ComLinkAngles com_link_angles(const VirtualChain& chain) {
  const double r5 = norm(chain.r5);
  const double r6 = norm(chain.r6);
  const double d5 = norm(chain.r_com);
  const double d6 = norm(chain.r_com - chain.r5);
  const double d7 = norm(chain.r_com - chain.r5 - chain.r6);

  const double den6 = 2.0 * r5 * d6;
  const double den7 = 2.0 * r6 * d7;
  if (!(den6 >= kSingularLever)) throw_singular("elbow law-of-cosines denominator", den6);
  if (!(den7 >= kSingularLever)) throw_singular("handle law-of-cosines denominator", den7);

  const double elbow_angle = clamped_acos((r5 * r5 + d6 * d6 - d5 * d5) / den6);
  const double handle_angle = clamped_acos((r6 * r6 + d7 * d7 - d6 * d6) / den7);
  return {chain.theta_04 + chain.theta5 - kPi - elbow_angle,
          chain.theta_04 + chain.theta5 + chain.theta6 - kPi + handle_angle};
}

std::array<Vec2, 3> joint_force_directions(const VirtualChain& chain) {
  auto u = [](double t) { return Vec2{-std::sin(t), std::cos(t)}; };
  return {u(chain.theta_com), u(chain.theta_6com), u(chain.theta_7com)};
}

Vec2 arm_force_expanded(const VirtualChain& chain, const TorqueSet& torques) {
  const auto dirs = joint_force_directions(chain);
  return (torques.tau5 / chain.lever5) * dirs[0] + (torques.tau6 / chain.lever6) * dirs[1] +
         (torques.tau7 / chain.lever7) * dirs[2];
}

Vec2 Jacobian2x3::apply(const std::array<double, 3>& t) const {
  return t[0] * columns[0] + t[1] * columns[1] + t[2] * columns[2];
}

Jacobian2x3 arm_jacobian(const VirtualChain& chain) {
  return {{perp(chain.com - chain.handle), perp(chain.com - chain.elbow),
           perp(chain.com - chain.shoulder)}};
}

Vec2 arm_force_lsq(const VirtualChain& chain, const TorqueSet& torques) {
  const Jacobian2x3 jac = arm_jacobian(chain);
  return solve_gram(gram(jac), jac.apply({torques.tau7, torques.tau6, torques.tau5}));
}

std::array<double, 3> lsq_projection_weights(const VirtualChain& chain, const Vec2& v) {
  // F.v = tau^T J^T A^-1 v with A symmetric.
  const Jacobian2x3 jac = arm_jacobian(chain);
  const Vec2 y = solve_gram(gram(jac), v);
  return {dot(jac.columns[0], y), dot(jac.columns[1], y), dot(jac.columns[2], y)};
}

double mechanical_advantage(const Vec2& force, const TorqueSet& torques) {
  const double t = torques.norm();
  if (t == 0.0) throw Error(ErrorCode::kZeroTorque, "mechanical advantage needs a nonzero torque");
  return norm(force) / t;
}

double directed_advantage(const Vec2& force, const Vec2& direction) {
  if (!(std::abs(norm(direction) - 1.0) <= 1e-9)) {
    throw Error(ErrorCode::kInvalidArgument, "direction must be a unit vector");
  }
  const double value = dot(force, direction);
#ifndef NDEBUG
  const double angle = std::atan2(cross(force, direction), dot(force, direction));
  assert(std::abs(value - norm(force) * norm(direction) * std::cos(angle)) < 1e-9 *
         std::max(1.0, norm(force)));
#endif
  return value;
}

}  // namespace handleopt

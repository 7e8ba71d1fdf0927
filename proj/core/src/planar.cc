// Copyright 2026 The odo25 Authors.
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

#include "odo25/planar.h"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "absl/strings/str_cat.h"

namespace odo25 {
namespace {

constexpr int kMaxIterations = 50;
constexpr double kGradientTolerance = 1e-10;
constexpr double kRelativeStepTolerance = 1e-13;
constexpr double kMaxDamping = 1e10;

double SignOf(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

Vec3 VehicleGeometry::WheelPosition(Wheel w) const {
  const double half = 0.5 * track_width;
  switch (w) {
    case Wheel::kRearLeft: return {0.0, half, 0.0};
    case Wheel::kRearRight: return {0.0, -half, 0.0};
    case Wheel::kFrontLeft: return {wheelbase, half, 0.0};
    case Wheel::kFrontRight: return {wheelbase, -half, 0.0};
  }
  return Vec3::Zero();
}

PerWheel<Vec3> VehicleGeometry::WheelPositions() const {
  PerWheel<Vec3> out;
  for (Wheel w : kAllWheels) out[w] = WheelPosition(w);
  return out;
}

Vec2 VehicleGeometry::SuspensionPoint(Wheel w) const {
  return WheelPosition(w).head<2>() + suspension_offsets[w];
}

absl::Status VehicleGeometry::Validate() const {
  if (!(track_width > 0.0) || !std::isfinite(track_width)) {
    return absl::InvalidArgumentError(
        absl::StrCat("track width must be positive, got ", track_width));
  }
  if (!(wheelbase > 0.0) || !std::isfinite(wheelbase)) {
    return absl::InvalidArgumentError(
        absl::StrCat("wheelbase must be positive, got ", wheelbase));
  }
  for (Wheel w : kAllWheels) {
    if (!suspension_offsets[w].allFinite()) {
      return absl::InvalidArgumentError("non-finite suspension sensor offset");
    }
  }
  return absl::OkStatus();
}

WheelRadii ComputeWheelRadii(const WheelDistances& d, double delta_theta) {
  WheelRadii r;
  for (Wheel w : kAllWheels) r[w] = d[w] / delta_theta;
  return r;
}

int TurnSign(const WheelDistances& d, double delta_theta) {
  const double travel = d.rl + d.rr + d.fl + d.fr;
  return travel / delta_theta < 0.0 ? -1 : 1;
}

absl::StatusOr<IcrEstimate> IcrFixedRear(const WheelRadii& radii,
                                         const VehicleGeometry& geom,
                                         int turn_sign) {
  const double half = 0.5 * geom.track_width;
  const double l2 = geom.wheelbase * geom.wheelbase;
  const double sign = turn_sign < 0 ? -1.0 : 1.0;

  double sum = 0.0;
  int used = 0;
  for (Wheel w : kAllWheels) {
    const double r = std::abs(radii[w]);
    if (!std::isfinite(r)) continue;
    const double y = geom.WheelPosition(w).y();
    const bool front = w == Wheel::kFrontLeft || w == Wheel::kFrontRight;
    double lateral;
    if (front) {
      if (r * r < l2) continue;
      lateral = std::sqrt(r * r - l2);
    } else {
      lateral = r;
    }
    if (lateral <= half) continue;
    sum += sign * lateral + y;
    ++used;
  }
  if (used == 0) {
    return absl::FailedPreconditionError("ICR inside wheelbase");
  }
  const double datum = sum / used;
  return IcrEstimate{.centre = Vec3(0.0, datum, 0.0),
                     .datum_radius = datum,
                     .straight_line = false};
}

double CircleFitObjective(const WheelRadii& radii,
                          const PerWheel<Vec3>& wheels, const Vec2& centre) {
  double total = 0.0;
  for (Wheel w : kAllWheels) {
    if (!std::isfinite(radii[w])) continue;
    const double f =
        (wheels[w].head<2>() - centre).squaredNorm() - radii[w] * radii[w];
    total += f * f;
  }
  return total;
}

absl::StatusOr<AdaptiveIcrFit> FitIcrAdaptiveRear(const WheelRadii& radii,
                                                  const PerWheel<Vec3>& wheels,
                                                  const IcrEstimate& init) {
  int finite = 0;
  for (Wheel w : kAllWheels) finite += std::isfinite(radii[w]) ? 1 : 0;
  if (finite < 3) {
    return absl::InvalidArgumentError(
        absl::StrCat("adaptive ICR needs >= 3 finite radii, got ", finite));
  }

  Vec2 c = init.centre.head<2>();
  double objective = CircleFitObjective(radii, wheels, c);
  double damping = 1e-3;
  AdaptiveIcrFit fit;

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    Eigen::Matrix2d jtj = Eigen::Matrix2d::Zero();
    Vec2 jtf = Vec2::Zero();
    for (Wheel w : kAllWheels) {
      if (!std::isfinite(radii[w])) continue;
      const Vec2 offset = wheels[w].head<2>() - c;
      const double f = offset.squaredNorm() - radii[w] * radii[w];
      const Vec2 j = -2.0 * offset;
      jtj += j * j.transpose();
      jtf += j * f;
    }
    fit.gradient_norm = 2.0 * jtf.norm();
    fit.iterations = iter;
    if (fit.gradient_norm < kGradientTolerance) {
      fit.converged = true;
      break;
    }

    bool accepted = false;
    while (damping <= kMaxDamping) {
      Eigen::Matrix2d lhs = jtj;
      lhs.diagonal() *= 1.0 + damping;
      const Vec2 step = lhs.ldlt().solve(-jtf);
      const Vec2 candidate = c + step;
      const double candidate_objective =
          CircleFitObjective(radii, wheels, candidate);
      if (candidate_objective < objective) {
        c = candidate;
        objective = candidate_objective;
        damping = std::max(damping * 0.1, 1e-12);
        accepted = true;
        if (step.norm() < kRelativeStepTolerance * (1.0 + c.norm())) {
          fit.converged = true;
        }
        break;
      }
      damping *= 10.0;
    }
    // No descent direction left at machine precision: stationary point.
    if (!accepted) fit.converged = true;
    if (fit.converged) {
      fit.iterations = iter + 1;
      break;
    }
  }

  const double sign = c.y() != 0.0 ? SignOf(c.y()) : SignOf(init.datum_radius);
  fit.icr = IcrEstimate{.centre = Vec3(c.x(), c.y(), 0.0),
                        .datum_radius = sign * c.norm(),
                        .straight_line = false};
  fit.objective = objective;
  return fit;
}

absl::StatusOr<IcrEstimate> IcrAdaptiveRear(const WheelRadii& radii,
                                            const PerWheel<Vec3>& wheels,
                                            const IcrEstimate& init) {
  absl::StatusOr<AdaptiveIcrFit> fit = FitIcrAdaptiveRear(radii, wheels, init);
  if (!fit.ok()) return fit.status();
  if (!fit->converged) {
    return absl::DeadlineExceededError(absl::StrCat(
        "adaptive ICR did not converge in ", fit->iterations,
        " iterations; best centre=(", fit->icr.centre.x(), ", ",
        fit->icr.centre.y(), ") gradient=", fit->gradient_norm));
  }
  return fit->icr;
}

Vec3 PlanarDisplacement(const IcrEstimate& icr, double delta_theta,
                        double d_rear_mean) {
  if (icr.straight_line) return Vec3(d_rear_mean, 0.0, 0.0);
  const double s = std::sin(delta_theta);
  const double c = std::cos(delta_theta);
  const double cx = icr.centre.x();
  const double cy = icr.centre.y();
  // (I - Rz) c, written out so z stays exactly zero.
  return Vec3((1.0 - c) * cx + s * cy, -s * cx + (1.0 - c) * cy, 0.0);
}

PlanarState AccumulatePose(const PlanarState& state, const Vec3& delta_p,
                           double delta_theta) {
  const double c = std::cos(state.theta);
  const double s = std::sin(state.theta);
  const Vec3 moved(c * delta_p.x() - s * delta_p.y(),
                   s * delta_p.x() + c * delta_p.y(), 0.0);
  return PlanarState{
      .position = Vec3(state.position.x() + moved.x(),
                       state.position.y() + moved.y(), 0.0),
      .theta = state.theta + delta_theta};
}

absl::StatusOr<PlanarStep> EstimatePlanarStep(const WheelDistances& d,
                                              double delta_theta,
                                              const VehicleGeometry& geom,
                                              const PlanarConfig& config) {
  bool all_still = true;
  for (Wheel w : kAllWheels) {
    if (!std::isfinite(d[w]) || std::abs(d[w]) >= config.max_wheel_step) {
      return absl::OutOfRangeError(
          absl::StrCat("implausible wheel step distance ", d[w], " m"));
    }
    all_still = all_still && std::abs(d[w]) < config.spin_epsilon;
  }
  if (!std::isfinite(delta_theta)) {
    return absl::InvalidArgumentError("non-finite heading increment");
  }

  PlanarStep step;
  if (std::abs(delta_theta) < config.straight_line_epsilon) {
    step.branch = MotionBranch::kStraight;
    step.icr.straight_line = true;
    step.displacement = PlanarDisplacement(step.icr, delta_theta,
                                           0.5 * (d.rl + d.rr));
    return step;
  }
  if (all_still) {
    step.branch = MotionBranch::kSpin;
    return step;
  }

  const WheelRadii radii = ComputeWheelRadii(d, delta_theta);
  const int turn_sign = TurnSign(d, delta_theta);
  absl::StatusOr<IcrEstimate> icr = IcrFixedRear(radii, geom, turn_sign);
  if (!icr.ok() && config.tight_turn_fallback &&
      geom.rear_steering == RearSteering::kFixed) {
    step.branch = MotionBranch::kTightTurn;
    step.icr.straight_line = true;
    step.displacement = PlanarDisplacement(step.icr, delta_theta,
                                           0.5 * (d.rl + d.rr));
    return step;
  }
  if (geom.rear_steering == RearSteering::kAdaptive) {
    IcrEstimate init;
    if (icr.ok()) {
      init = *icr;
    } else {
      // Fixed-rear seed unavailable (strong rear steer): start on the rear
      // axle line at the mean wheel radius.
      const double mean = 0.25 * (std::abs(radii.rl) + std::abs(radii.rr) +
                                  std::abs(radii.fl) + std::abs(radii.fr));
      init.datum_radius = turn_sign * mean;
      init.centre = Vec3(0.0, init.datum_radius, 0.0);
    }
    icr = IcrAdaptiveRear(radii, geom.WheelPositions(), init);
  }
  if (!icr.ok()) return icr.status();
  step.branch = MotionBranch::kArc;
  step.icr = *icr;
  step.displacement = PlanarDisplacement(step.icr, delta_theta, 0.0);
  return step;
}

}  // namespace odo25

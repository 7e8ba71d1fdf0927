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

#ifndef ODO25_PLANAR_H_
#define ODO25_PLANAR_H_

#include <array>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "odo25/geometry.h"

namespace odo25 {

enum class Wheel { kRearLeft = 0, kRearRight = 1, kFrontLeft = 2, kFrontRight = 3 };

inline constexpr std::array<Wheel, 4> kAllWheels = {
    Wheel::kRearLeft, Wheel::kRearRight, Wheel::kFrontLeft, Wheel::kFrontRight};

// One value per wheel (or per wheel-arch suspension sensor).
template <typename T>
struct PerWheel {
  T rl{};
  T rr{};
  T fl{};
  T fr{};

  T& operator[](Wheel w) {
    switch (w) {
      case Wheel::kRearLeft: return rl;
      case Wheel::kRearRight: return rr;
      case Wheel::kFrontLeft: return fl;
      case Wheel::kFrontRight: return fr;
    }
    return rl;
  }
  const T& operator[](Wheel w) const {
    return const_cast<PerWheel&>(*this)[w];
  }
};

// Signed per-step wheel travel, meters, + = forward.
using WheelDistances = PerWheel<double>;
// Signed d_i / delta_theta, meters.
using WheelRadii = PerWheel<double>;

enum class RearSteering { kFixed, kAdaptive };

// Wheel contact points in the vehicle frame are fixed by the track width w
// and wheelbase l: rl=(0,+w/2), rr=(0,-w/2), fl=(l,+w/2), fr=(l,-w/2).
struct VehicleGeometry {
  double track_width = 1.6;
  double wheelbase = 2.7;
  RearSteering rear_steering = RearSteering::kFixed;
  // Suspension sensor (x, y) relative to its wheel. Zero unless the height
  // sensors are mounted away from the wheel centre line.
  PerWheel<Vec2> suspension_offsets{Vec2::Zero(), Vec2::Zero(), Vec2::Zero(),
                                    Vec2::Zero()};

  Vec3 WheelPosition(Wheel w) const;
  PerWheel<Vec3> WheelPositions() const;
  Vec2 SuspensionPoint(Wheel w) const;

  absl::Status Validate() const;
};

struct PlanarConfig {
  // |delta_theta| below this is treated as straight-line motion.
  double straight_line_epsilon = 1e-6;
  // All |d_i| below this (with a non-zero heading change) is a spin in place.
  double spin_epsilon = 1e-9;
  // Per-step wheel travel sanity bound at bus rates.
  double max_wheel_step = 2.0;
  // When every wheel fails the tight-turn precondition, advance by the rear
  // mean distance instead of failing the step.
  bool tight_turn_fallback = true;
};

struct IcrEstimate {
  Vec3 centre = Vec3::Zero();  // vehicle frame, z = 0
  // Signed datum distance; + when the centre lies on the left (+y) side.
  double datum_radius = 0.0;
  bool straight_line = false;
};

struct PlanarState {
  Vec3 position = Vec3::Zero();  // world frame, z = 0
  double theta = 0.0;            // heading, unwrapped
};

enum class MotionBranch { kArc, kStraight, kSpin, kTightTurn };

// r_i = d_i / delta_theta. Caller must have ruled out the straight branch.
WheelRadii ComputeWheelRadii(const WheelDistances& d, double delta_theta);

// +1 when the ICR is on the left of the vehicle, -1 on the right. Derived
// from the sign of the mean wheel travel over delta_theta.
int TurnSign(const WheelDistances& d, double delta_theta);

// Fixed rear steering: ICR on the rear axle line. Each wheel yields one
// datum-distance estimate (rear: lateral offset, front: Pythagorean
// reduction by the wheelbase) and the valid ones are averaged with equal
// weight. A wheel is dropped when the ICR would fall inside the track
// (|r| <= w/2 at the rear, r^2 < l^2 at the front).
absl::StatusOr<IcrEstimate> IcrFixedRear(const WheelRadii& radii,
                                         const VehicleGeometry& geom,
                                         int turn_sign);

struct AdaptiveIcrFit {
  IcrEstimate icr;
  int iterations = 0;
  double gradient_norm = 0.0;
  double objective = 0.0;
  bool converged = false;
};

// Circle-consistency objective  sum_i (|w_i - c|^2 - r_i^2)^2  over the
// finite radii.
double CircleFitObjective(const WheelRadii& radii,
                          const PerWheel<Vec3>& wheels, const Vec2& centre);

// Adaptive rear steering: both ICR coordinates are free. Damped
// Gauss-Newton on CircleFitObjective starting from `init`. Needs at least
// three finite radii; always returns the best iterate.
absl::StatusOr<AdaptiveIcrFit> FitIcrAdaptiveRear(const WheelRadii& radii,
                                                  const PerWheel<Vec3>& wheels,
                                                  const IcrEstimate& init);

// As FitIcrAdaptiveRear, but non-convergence is an error whose message
// carries the best iterate.
absl::StatusOr<IcrEstimate> IcrAdaptiveRear(const WheelRadii& radii,
                                            const PerWheel<Vec3>& wheels,
                                            const IcrEstimate& init);

// Datum motion over one step, vehicle frame at the start of the step.
// Straight: (d_rear_mean, 0, 0). Otherwise the datum is rigidly rotated
// about the ICR: (I - Rz(dtheta)) c, which for c = (0, r) is
// (r sin dtheta, r (1 - cos dtheta), 0).
Vec3 PlanarDisplacement(const IcrEstimate& icr, double delta_theta,
                        double d_rear_mean);

// p2 = Rz(theta1) * dp + p1, theta2 = theta1 + dtheta.
PlanarState AccumulatePose(const PlanarState& state, const Vec3& delta_p,
                           double delta_theta);

struct PlanarStep {
  MotionBranch branch = MotionBranch::kArc;
  IcrEstimate icr;
  Vec3 displacement = Vec3::Zero();
};

// Picks the straight/spin/arc branch and the ICR solver for `geom`, and
// returns the vehicle-frame displacement of the datum for one step.
absl::StatusOr<PlanarStep> EstimatePlanarStep(const WheelDistances& d,
                                              double delta_theta,
                                              const VehicleGeometry& geom,
                                              const PlanarConfig& config = {});

}  // namespace odo25

#endif  // ODO25_PLANAR_H_

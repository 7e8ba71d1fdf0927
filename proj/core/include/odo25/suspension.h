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

#ifndef ODO25_SUSPENSION_H_
#define ODO25_SUSPENSION_H_

#include <cstddef>
#include <deque>
#include <span>

#include "absl/status/statusor.h"
#include "odo25/geometry.h"
#include "odo25/planar.h"

namespace odo25 {

// Wheel-arch heights from the linear potentiometers, meters.
using SuspensionHeights = PerWheel<double>;

// z = slope_x * x + slope_y * y + offset through the four suspension points
// s_i = (x_i, y_i, h_i), vehicle frame.
struct SuspensionPlane {
  Vec3 normal = Vec3::UnitZ();           // unit, z > 0
  Vec3 reference_point = Vec3::Zero();   // centroid of the s_i
  double slope_x = 0.0;
  double slope_y = 0.0;

  // Rebuilds the slopes from `normal`. Used when loading a stored plane.
  static absl::StatusOr<SuspensionPlane> FromNormalAndPoint(const Vec3& normal,
                                                            const Vec3& point);
};

// Rotation/translation of the live plane relative to the reference plane:
// rotation maps the live normal onto the reference normal, translation is
// reference centroid minus live centroid (pure z).
struct SuspensionDelta {
  Rot3 rotation = Rot3::Identity();
  Vec3 translation = Vec3::Zero();
};

// Reporting view of a delta. pitch is positive when the front heights drop
// relative to the rear, roll positive when the left side rises.
struct SuspensionAttitude {
  double roll = 0.0;
  double pitch = 0.0;
  double heave = 0.0;
};

absl::Status ValidateHeights(const SuspensionHeights& heights);

// Ordinary least squares over the four suspension points.
absl::StatusOr<SuspensionPlane> FitPlane(const SuspensionHeights& heights,
                                         const VehicleGeometry& geom);

absl::StatusOr<SuspensionDelta> ComputeSuspensionDelta(
    const SuspensionPlane& reference, const SuspensionPlane& live);

// Roll/pitch of the live plane relative to the reference (atan of the slope
// change) and heave as the centroid drop, + = compressed.
SuspensionAttitude AttitudeBetween(const SuspensionPlane& reference,
                                   const SuspensionPlane& live);

// Settled-state reference: per-sensor mean over the capture window, then
// FitPlane.
absl::StatusOr<SuspensionPlane> ReferencePlaneFromWindow(
    std::span<const SuspensionHeights> window, const VehicleGeometry& geom);

// Optional per-sensor moving average. A width of 1 passes samples through.
class HeightSmoother {
 public:
  explicit HeightSmoother(std::size_t width = 1);

  SuspensionHeights Push(const SuspensionHeights& heights);

 private:
  std::size_t width_;
  std::deque<SuspensionHeights> window_;
  SuspensionHeights sum_;
};

}  // namespace odo25

#endif  // ODO25_SUSPENSION_H_

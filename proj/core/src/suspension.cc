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

#include "odo25/suspension.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace odo25 {
namespace {

constexpr double kMaxHeight = 2.0;
constexpr double kMinNormalZ = 0.9;

}  // namespace

absl::StatusOr<SuspensionPlane> SuspensionPlane::FromNormalAndPoint(
    const Vec3& normal, const Vec3& point) {
  if (!IsFinite(normal) || !IsFinite(point) ||
      std::abs(normal.norm() - 1.0) > 1e-9 || normal.z() <= kMinNormalZ) {
    return absl::InvalidArgumentError(
        "suspension plane normal must be unit length with z > 0.9");
  }
  SuspensionPlane plane;
  plane.normal = normal;
  plane.reference_point = point;
  plane.slope_x = -normal.x() / normal.z();
  plane.slope_y = -normal.y() / normal.z();
  return plane;
}

absl::Status ValidateHeights(const SuspensionHeights& heights) {
  for (Wheel w : kAllWheels) {
    const double h = heights[w];
    if (!std::isfinite(h) || h < 0.0 || h > kMaxHeight) {
      return absl::OutOfRangeError(
          absl::StrCat("suspension height ", h, " m outside [0, 2]"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<SuspensionPlane> FitPlane(const SuspensionHeights& heights,
                                         const VehicleGeometry& geom) {
  if (absl::Status s = ValidateHeights(heights); !s.ok()) return s;

  Eigen::Matrix<double, 4, 3> a;
  Eigen::Vector4d b;
  Vec3 centroid = Vec3::Zero();
  int row = 0;
  for (Wheel w : kAllWheels) {
    const Vec2 xy = geom.SuspensionPoint(w);
    a.row(row) << xy.x(), xy.y(), 1.0;
    b(row) = heights[w];
    centroid += Vec3(xy.x(), xy.y(), heights[w]);
    ++row;
  }
  centroid /= 4.0;

  const Vec3 coeffs = a.colPivHouseholderQr().solve(b);
  SuspensionPlane plane;
  plane.slope_x = coeffs(0);
  plane.slope_y = coeffs(1);
  plane.normal = Vec3(-coeffs(0), -coeffs(1), 1.0).normalized();
  plane.reference_point = centroid;
  if (plane.normal.z() <= kMinNormalZ) {
    return absl::OutOfRangeError(absl::StrCat(
        "suspension plane tilt too large (normal z=", plane.normal.z(), ")"));
  }
  return plane;
}

absl::StatusOr<SuspensionDelta> ComputeSuspensionDelta(
    const SuspensionPlane& reference, const SuspensionPlane& live) {
  absl::StatusOr<Rot3> rotation =
      RotationBetweenNormals(live.normal, reference.normal);
  if (!rotation.ok()) return rotation.status();
  return SuspensionDelta{
      .rotation = *rotation,
      .translation = reference.reference_point - live.reference_point};
}

SuspensionAttitude AttitudeBetween(const SuspensionPlane& reference,
                                   const SuspensionPlane& live) {
  return SuspensionAttitude{
      .roll = std::atan(live.slope_y - reference.slope_y),
      .pitch = std::atan(reference.slope_x - live.slope_x),
      .heave = reference.reference_point.z() - live.reference_point.z()};
}

absl::StatusOr<SuspensionPlane> ReferencePlaneFromWindow(
    std::span<const SuspensionHeights> window, const VehicleGeometry& geom) {
  if (window.empty()) {
    return absl::InvalidArgumentError("empty reference window");
  }
  SuspensionHeights mean;
  for (const SuspensionHeights& h : window) {
    for (Wheel w : kAllWheels) mean[w] += h[w];
  }
  for (Wheel w : kAllWheels) mean[w] /= static_cast<double>(window.size());
  return FitPlane(mean, geom);
}

HeightSmoother::HeightSmoother(std::size_t width)
    : width_(std::max<std::size_t>(width, 1)) {}

SuspensionHeights HeightSmoother::Push(const SuspensionHeights& heights) {
  if (width_ == 1) return heights;
  window_.push_back(heights);
  for (Wheel w : kAllWheels) sum_[w] += heights[w];
  if (window_.size() > width_) {
    for (Wheel w : kAllWheels) sum_[w] -= window_.front()[w];
    window_.pop_front();
  }
  SuspensionHeights out;
  const double n = static_cast<double>(window_.size());
  for (Wheel w : kAllWheels) out[w] = sum_[w] / n;
  return out;
}

}  // namespace odo25

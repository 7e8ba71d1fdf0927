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

#ifndef ODO25_GEOMETRY_H_
#define ODO25_GEOMETRY_H_

#include <Eigen/Core>

#include "absl/status/statusor.h"

namespace odo25 {

// Frame conventions
// -----------------
// vehicle: origin at the rear-axle midpoint, +x forward, +y left, +z up.
// world:   fixed at the vehicle pose of the first sample, +z up.
// sensor:  camera/sensor body frame.
//
// A rotation named `a_R_b` maps coordinates expressed in frame a into
// coordinates expressed in frame b: x_b = a_R_b * x_a.
enum class Frame { kVehicle, kWorld, kSensor };

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Rot3 = Eigen::Matrix3d;

// Right-handed rotation about +z by `theta` radians.
Rot3 RotZ(double theta);

// Minimal rotation R with R * n_live == n_ref, built from the axis
// n_live x n_ref (normalized) with the standard Rodrigues form. Both inputs
// must be unit length within 1e-9. Parallel normals give exactly the
// identity; antiparallel normals are rejected.
absl::StatusOr<Rot3> RotationBetweenNormals(const Vec3& n_live,
                                            const Vec3& n_ref);

// max |R^T R - I| entry.
double OrthonormalityError(const Rot3& r);

// Nearest rotation matrix (polar decomposition via SVD, det forced to +1).
Rot3 Reorthonormalize(const Rot3& r);

// Returns `r` unchanged unless its orthonormality error exceeds 1e-9.
Rot3 KeepOrthonormal(const Rot3& r);

// Wraps to [-pi, pi). Headings are stored unwrapped; use this at output.
double WrapAngle(double angle);

bool IsFinite(const Vec3& v);

}  // namespace odo25

#endif  // ODO25_GEOMETRY_H_

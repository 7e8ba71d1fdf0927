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

#include "odo25/geometry.h"

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace odo25 {
namespace {

constexpr double kUnitTolerance = 1e-9;
constexpr double kParallelSine = 1e-12;
constexpr double kAntiparallelMargin = 1e-9;
constexpr double kDriftTolerance = 1e-9;

}  // namespace

Rot3 RotZ(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Rot3 r;
  r << c, -s, 0.0,
       s, c, 0.0,
       0.0, 0.0, 1.0;
  return r;
}

absl::StatusOr<Rot3> RotationBetweenNormals(const Vec3& n_live,
                                            const Vec3& n_ref) {
  if (!IsFinite(n_live) || !IsFinite(n_ref) ||
      std::abs(n_live.norm() - 1.0) > kUnitTolerance ||
      std::abs(n_ref.norm() - 1.0) > kUnitTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("normals must be unit length, got |n_live|=",
                     n_live.norm(), " |n_ref|=", n_ref.norm()));
  }
  const Vec3 a = n_live.cross(n_ref);
  const double s = a.norm();
  const double c = n_live.dot(n_ref);
  if (c <= -1.0 + kAntiparallelMargin) {
    return absl::InvalidArgumentError("degenerate 180° rotation");
  }
  if (s < kParallelSine) return Rot3::Identity();

  // Rodrigues on the unit axis k: R = cI + s[k]x + (1-c)kk^T.
  const Vec3 k = a / s;
  Rot3 k_cross;
  k_cross << 0.0, -k.z(), k.y(),
             k.z(), 0.0, -k.x(),
             -k.y(), k.x(), 0.0;
  Rot3 r = c * Rot3::Identity() + s * k_cross + (1.0 - c) * (k * k.transpose());
  return r;
}

double OrthonormalityError(const Rot3& r) {
  return (r.transpose() * r - Rot3::Identity()).cwiseAbs().maxCoeff();
}

Rot3 Reorthonormalize(const Rot3& r) {
  Eigen::JacobiSVD<Rot3> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Rot3 u = svd.matrixU();
  const Rot3& v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) u.col(2) *= -1.0;
  return u * v.transpose();
}

Rot3 KeepOrthonormal(const Rot3& r) {
  return OrthonormalityError(r) > kDriftTolerance ? Reorthonormalize(r) : r;
}

double WrapAngle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle + std::numbers::pi, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  return wrapped - std::numbers::pi;
}

bool IsFinite(const Vec3& v) { return v.allFinite(); }

}  // namespace odo25

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

#include "odo25/extrinsics.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <Eigen/Dense>

#include "absl/strings/str_cat.h"
#include "text_util.h"

namespace odo25 {
namespace {

using internal::Format17;
constexpr double kMaxMountDistance = 5.0;
constexpr double kRotationTolerance = 1e-9;

template <int N>
bool ReadNumbers(std::istringstream& fields, double (&out)[N]) {
  for (double& v : out) {
    if (!(fields >> v) || !std::isfinite(v)) return false;
  }
  return true;
}

Rot3 RotationFrom(const double* v) {
  Rot3 r;
  r << v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8];
  return r;
}

}  // namespace

absl::Status ValidateExtrinsics(const SensorExtrinsics& ext) {
  if (!ext.rotation.allFinite() ||
      OrthonormalityError(ext.rotation) > kRotationTolerance ||
      ext.rotation.determinant() < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("sensor ", ext.sensor_id, ": rotation not orthonormal"));
  }
  if (!IsFinite(ext.position) ||
      ext.position.cwiseAbs().maxCoeff() > kMaxMountDistance) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sensor ", ext.sensor_id, ": position outside the 5 m mounting box"));
  }
  return absl::OkStatus();
}

SensorExtrinsics CompensateCalibration(const CalibrationCapture& capture) {
  const Rot3& rs = capture.delta.rotation;
  return SensorExtrinsics{
      .sensor_id = capture.sensor_id,
      .rotation = KeepOrthonormal(capture.rotation * rs.transpose()),
      .position = rs.transpose() * capture.position - capture.delta.translation};
}

SensorPose ComposeVehiclePose(const SensorExtrinsics& ext,
                              const SuspensionDelta& delta) {
  return SensorPose{
      .sensor_id = ext.sensor_id,
      .rotation = KeepOrthonormal(ext.rotation * delta.rotation),
      .position = delta.rotation * (ext.position + delta.translation),
      .frame = Frame::kVehicle};
}

absl::StatusOr<SensorPose> SensorWorldPose(const SensorPose& vehicle_pose,
                                           const PlanarState& planar) {
  if (vehicle_pose.frame != Frame::kVehicle) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sensor ", vehicle_pose.sensor_id, ": pose is not in the vehicle frame"));
  }
  const Rot3 v_r_w = RotZ(planar.theta);
  return SensorPose{
      .sensor_id = vehicle_pose.sensor_id,
      .rotation = KeepOrthonormal(vehicle_pose.rotation * v_r_w.transpose()),
      .position = v_r_w * vehicle_pose.position + planar.position,
      .frame = Frame::kWorld};
}

absl::StatusOr<CalibrationSet> ReadCalibration(std::istream& in,
                                               const VehicleGeometry& geom) {
  CalibrationSet out;
  std::vector<std::pair<CalibrationCapture, SuspensionHeights>> captures;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind)) continue;
    const auto bad = [&](const std::string& what) {
      return absl::InvalidArgumentError(
          absl::StrCat("calibration line ", line_number, ": ", what));
    };

    if (kind == "reference_plane") {
      double v[6];
      if (!ReadNumbers(fields, v)) return bad("expected 6 numbers");
      absl::StatusOr<SuspensionPlane> plane = SuspensionPlane::FromNormalAndPoint(
          Vec3(v[0], v[1], v[2]), Vec3(v[3], v[4], v[5]));
      if (!plane.ok()) return bad(std::string(plane.status().message()));
      out.reference_plane = *plane;
    } else if (kind == "sensor" || kind == "capture") {
      std::string id;
      double v[12];
      if (!(fields >> id) || !ReadNumbers(fields, v)) {
        return bad("expected an id, 9 rotation and 3 position numbers");
      }
      SensorExtrinsics ext{.sensor_id = id,
                           .rotation = RotationFrom(v),
                           .position = Vec3(v[9], v[10], v[11])};
      if (absl::Status s = ValidateExtrinsics(ext); !s.ok()) {
        return bad(std::string(s.message()));
      }
      if (kind == "sensor") {
        out.sensors.push_back(ext);
      } else {
        double h[4];
        if (!ReadNumbers(fields, h)) return bad("expected 4 capture heights");
        captures.push_back(
            {CalibrationCapture{.sensor_id = id,
                                .rotation = ext.rotation,
                                .position = ext.position,
                                .delta = {}},
             SuspensionHeights{.rl = h[2], .rr = h[3], .fl = h[0], .fr = h[1]}});
      }
    } else {
      return bad("unknown record '" + kind + "'");
    }
  }

  if (!captures.empty() && !out.reference_plane) {
    return absl::FailedPreconditionError(
        "calibration captures need a reference_plane record");
  }
  for (auto& [capture, heights] : captures) {
    absl::StatusOr<SuspensionPlane> live = FitPlane(heights, geom);
    if (!live.ok()) return live.status();
    absl::StatusOr<SuspensionDelta> delta =
        ComputeSuspensionDelta(*out.reference_plane, *live);
    if (!delta.ok()) return delta.status();
    capture.delta = *delta;
    out.sensors.push_back(CompensateCalibration(capture));
  }
  return out;
}

void WriteCalibration(std::ostream& out, const CalibrationSet& calibration) {
  out << "# odo25 calibration: rotations row-major vehicle->sensor, meters\n";
  if (calibration.reference_plane) {
    const SuspensionPlane& p = *calibration.reference_plane;
    out << "reference_plane";
    for (int i = 0; i < 3; ++i) out << ' ' << Format17(p.normal(i));
    for (int i = 0; i < 3; ++i) out << ' ' << Format17(p.reference_point(i));
    out << '\n';
  }
  for (const SensorExtrinsics& s : calibration.sensors) {
    out << "sensor " << s.sensor_id;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) out << ' ' << Format17(s.rotation(r, c));
    }
    for (int i = 0; i < 3; ++i) out << ' ' << Format17(s.position(i));
    out << '\n';
  }
}

}  // namespace odo25

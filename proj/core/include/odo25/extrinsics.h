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

#ifndef ODO25_EXTRINSICS_H_
#define ODO25_EXTRINSICS_H_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "odo25/geometry.h"
#include "odo25/planar.h"
#include "odo25/suspension.h"

namespace odo25 {

// Nominal extrinsics against the reference suspension.
struct SensorExtrinsics {
  std::string sensor_id;
  Rot3 rotation = Rot3::Identity();  // vehicle -> sensor
  Vec3 position = Vec3::Zero();      // sensor centre, vehicle frame, meters
};

// Raw output of an extrinsic calibration run, taken while the suspension sat
// at `delta` relative to the reference.
struct CalibrationCapture {
  std::string sensor_id;
  Rot3 rotation = Rot3::Identity();
  Vec3 position = Vec3::Zero();
  SuspensionDelta delta;
};

struct SensorPose {
  std::string sensor_id;
  Rot3 rotation = Rot3::Identity();  // frame -> sensor
  Vec3 position = Vec3::Zero();      // in `frame`
  Frame frame = Frame::kVehicle;
};

absl::Status ValidateExtrinsics(const SensorExtrinsics& ext);

// Removes the calibration-time suspension state: exact inverse of
// ComposeVehiclePose for the same delta.
//   rotation = R_cal * R_s^T
//   position = R_s^T * c_cal - t_s
SensorExtrinsics CompensateCalibration(const CalibrationCapture& capture);

//   rotation = R_e * R_s
//   position = R_s * (c_e + t_s)
SensorPose ComposeVehiclePose(const SensorExtrinsics& ext,
                              const SuspensionDelta& delta);

// Moves a vehicle-frame pose into the world with the planar odometry state:
//   rotation = R_p * Rz(theta)^T      (world -> vehicle -> sensor)
//   position = Rz(theta) * c_p + p
absl::StatusOr<SensorPose> SensorWorldPose(const SensorPose& vehicle_pose,
                                           const PlanarState& planar);

// Calibration file
// ----------------
// Line based, '#' starts a comment, numbers written with 17 significant
// digits. Rotations are 3x3 row-major, vehicle -> sensor.
//
//   reference_plane <nx> <ny> <nz> <px> <py> <pz>
//   sensor <id> <r00> ... <r22> <x> <y> <z>
//   capture <id> <r00> ... <r22> <x> <y> <z> <h_fl> <h_fr> <h_rl> <h_rr>
//
// `capture` records are raw calibration output plus the suspension heights
// (meters) at capture time; they are compensated against the reference
// plane when loaded.
struct CalibrationSet {
  std::optional<SuspensionPlane> reference_plane;
  std::vector<SensorExtrinsics> sensors;
};

absl::StatusOr<CalibrationSet> ReadCalibration(std::istream& in,
                                               const VehicleGeometry& geom);
void WriteCalibration(std::ostream& out, const CalibrationSet& calibration);

}  // namespace odo25

#endif  // ODO25_EXTRINSICS_H_

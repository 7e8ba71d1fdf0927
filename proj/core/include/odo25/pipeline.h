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

#ifndef ODO25_PIPELINE_H_
#define ODO25_PIPELINE_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "odo25/config.h"
#include "odo25/extrinsics.h"
#include "odo25/heading.h"
#include "odo25/ingest.h"
#include "odo25/planar.h"
#include "odo25/suspension.h"

namespace odo25 {

struct PoseRecord {
  double t = 0.0;
  PlanarState planar;
  MotionBranch branch = MotionBranch::kStraight;
  std::optional<SuspensionDelta> suspension;
  std::optional<SuspensionAttitude> attitude;
  std::vector<SensorPose> sensors;  // world frame, one per extrinsics entry
};

// Sequential 2.5D odometry for one vehicle stream: heading from yaw rate,
// planar displacement from the wheels, suspension delta from the heights,
// then every sensor pose composed into the world frame.
class OdometryPipeline {
 public:
  // `reference` is required unless `planar_only`.
  static absl::StatusOr<OdometryPipeline> Create(
      const OdometryConfig& config, bool planar_only,
      std::optional<SuspensionPlane> reference,
      std::vector<SensorExtrinsics> sensors);

  absl::StatusOr<PoseRecord> Step(const OdometrySample& sample);

  const PlanarState& state() const { return state_; }

 private:
  OdometryPipeline(const OdometryConfig& config, bool planar_only,
                   std::optional<SuspensionPlane> reference,
                   std::vector<SensorExtrinsics> sensors);

  OdometryConfig config_;
  bool planar_only_;
  std::optional<SuspensionPlane> reference_;
  std::vector<SensorExtrinsics> sensors_;
  HeightSmoother smoother_;
  std::optional<HeadingState> heading_;
  PlanarState state_;
};

// Runs the whole stream. Without a stored reference plane the settled
// reference is the mean of the heights in the first `reference_window`
// seconds.
absl::StatusOr<std::vector<PoseRecord>> RunPipeline(
    std::span<const OdometrySample> samples, const OdometryConfig& config,
    bool planar_only, const CalibrationSet& calibration);

}  // namespace odo25

#endif  // ODO25_PIPELINE_H_

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

#include "odo25/pipeline.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace odo25 {
namespace {

absl::Status AtTime(const absl::Status& status, double t) {
  return absl::Status(status.code(),
                      absl::StrCat("t=", t, ": ", status.message()));
}

}  // namespace

OdometryPipeline::OdometryPipeline(const OdometryConfig& config,
                                   bool planar_only,
                                   std::optional<SuspensionPlane> reference,
                                   std::vector<SensorExtrinsics> sensors)
    : config_(config),
      planar_only_(planar_only),
      reference_(std::move(reference)),
      sensors_(std::move(sensors)),
      smoother_(config.height_smoothing) {}

absl::StatusOr<OdometryPipeline> OdometryPipeline::Create(
    const OdometryConfig& config, bool planar_only,
    std::optional<SuspensionPlane> reference,
    std::vector<SensorExtrinsics> sensors) {
  if (absl::Status s = config.geometry.Validate(); !s.ok()) return s;
  if (!planar_only && !reference) {
    return absl::FailedPreconditionError("no reference suspension plane");
  }
  for (const SensorExtrinsics& ext : sensors) {
    if (absl::Status s = ValidateExtrinsics(ext); !s.ok()) return s;
  }
  return OdometryPipeline(config, planar_only, std::move(reference),
                          std::move(sensors));
}

absl::StatusOr<PoseRecord> OdometryPipeline::Step(const OdometrySample& sample) {
  const YawSample yaw{.t = sample.t, .yaw_rate = sample.yaw_rate};
  PoseRecord record;
  record.t = sample.t;

  if (!heading_) {
    absl::StatusOr<HeadingState> start = StartHeading(yaw, config_.heading);
    if (!start.ok()) return AtTime(start.status(), sample.t);
    heading_ = *start;
  } else {
    absl::StatusOr<HeadingStep> step =
        StepHeading(*heading_, yaw, config_.heading);
    if (!step.ok()) return AtTime(step.status(), sample.t);
    absl::StatusOr<PlanarStep> planar = EstimatePlanarStep(
        sample.wheels, step->delta_theta, config_.geometry, config_.planar);
    if (!planar.ok()) return AtTime(planar.status(), sample.t);
    state_ = AccumulatePose(state_, planar->displacement, step->delta_theta);
    heading_ = step->state;
    record.branch = planar->branch;
  }
  record.planar = state_;

  SuspensionDelta delta;
  if (!planar_only_) {
    if (!sample.heights) {
      return AtTime(absl::FailedPreconditionError("missing suspension heights"),
                    sample.t);
    }
    absl::StatusOr<SuspensionPlane> live =
        FitPlane(smoother_.Push(*sample.heights), config_.geometry);
    if (!live.ok()) return AtTime(live.status(), sample.t);
    absl::StatusOr<SuspensionDelta> d = ComputeSuspensionDelta(*reference_, *live);
    if (!d.ok()) return AtTime(d.status(), sample.t);
    delta = *d;
    record.suspension = delta;
    record.attitude = AttitudeBetween(*reference_, *live);
  }

  record.sensors.reserve(sensors_.size());
  for (const SensorExtrinsics& ext : sensors_) {
    absl::StatusOr<SensorPose> world =
        SensorWorldPose(ComposeVehiclePose(ext, delta), state_);
    if (!world.ok()) return world.status();
    record.sensors.push_back(*std::move(world));
  }
  return record;
}

absl::StatusOr<std::vector<PoseRecord>> RunPipeline(
    std::span<const OdometrySample> samples, const OdometryConfig& config,
    bool planar_only, const CalibrationSet& calibration) {
  std::optional<SuspensionPlane> reference = calibration.reference_plane;
  if (!planar_only && !reference && !samples.empty()) {
    std::vector<SuspensionHeights> window;
    for (const OdometrySample& s : samples) {
      if (s.t - samples.front().t > config.reference_window) break;
      if (!s.heights) {
        return absl::FailedPreconditionError("missing suspension heights");
      }
      window.push_back(*s.heights);
    }
    absl::StatusOr<SuspensionPlane> plane =
        ReferencePlaneFromWindow(window, config.geometry);
    if (!plane.ok()) return plane.status();
    reference = *plane;
  }

  absl::StatusOr<OdometryPipeline> pipeline = OdometryPipeline::Create(
      config, planar_only, reference, calibration.sensors);
  if (!pipeline.ok()) return pipeline.status();

  std::vector<PoseRecord> out;
  out.reserve(samples.size());
  for (const OdometrySample& s : samples) {
    absl::StatusOr<PoseRecord> record = pipeline->Step(s);
    if (!record.ok()) return record.status();
    out.push_back(*std::move(record));
  }
  return out;
}

}  // namespace odo25

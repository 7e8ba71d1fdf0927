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

#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "support/test_support.h"

namespace odo25 {
namespace {

using testing::Gen;

// Stops for the reference window, then eases onto a steady left arc.
Scenario ArcFromRest() {
  Scenario s;
  s.suspension.k_roll = 0.01;
  s.suspension.k_pitch = 0.01;
  s.maneuver.segments = {
      {.duration = 2.5},
      {.duration = 4, .speed_start = 0, .speed_end = 2, .curvature = 0.1},
      {.duration = 6, .speed_start = 2, .speed_end = 2, .curvature = 0.1},
  };
  return s;
}

CalibrationSet Cameras() {
  std::ifstream in(testing::DataPath("calibration/cameras.txt"));
  absl::StatusOr<CalibrationSet> c = ReadCalibration(in, VehicleGeometry{});
  EXPECT_TRUE(c.ok()) << c.status();
  return c.ok() ? *c : CalibrationSet{};
}

std::vector<OdometrySample> Samples(const Simulation& sim) {
  return *Align(testing::StreamsFromLog(sim), {});
}

TEST(PipelineTest, OneRecordPerAlignedSample) {
  absl::StatusOr<Simulation> sim =
      Simulate(ArcFromRest().maneuver, {}, ArcFromRest().suspension, {});
  ASSERT_TRUE(sim.ok());
  const std::vector<OdometrySample> samples = Samples(*sim);
  absl::StatusOr<std::vector<PoseRecord>> poses =
      RunPipeline(samples, {}, false, Cameras());
  ASSERT_TRUE(poses.ok()) << poses.status();
  ASSERT_EQ(poses->size(), samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    EXPECT_EQ((*poses)[k].t, samples[k].t);
    EXPECT_EQ((*poses)[k].sensors.size(), 4u);
    EXPECT_TRUE((*poses)[k].suspension.has_value());
  }
  EXPECT_EQ(poses->front().planar.position, Vec3::Zero());
}

TEST(PipelineTest, SensorPosesMatchGroundTruth) {
  const Scenario scenario = ArcFromRest();
  const CalibrationSet cameras = Cameras();
  absl::StatusOr<Simulation> sim =
      Simulate(scenario.maneuver, {}, scenario.suspension, {});
  ASSERT_TRUE(sim.ok());
  absl::StatusOr<std::vector<PoseRecord>> poses =
      RunPipeline(Samples(*sim), {}, false, cameras);
  ASSERT_TRUE(poses.ok()) << poses.status();
  ASSERT_EQ(poses->size(), sim->truth.size());
  double worst_position = 0.0;
  double worst_rotation = 0.0;
  for (std::size_t k = 0; k < poses->size(); ++k) {
    const TruthSample& truth = sim->truth[k];
    const SuspensionDelta delta =
        *TrueSuspensionDelta(truth, scenario.suspension, VehicleGeometry{});
    for (std::size_t i = 0; i < cameras.sensors.size(); ++i) {
      const SensorPose expected =
          *GroundTruthSensorPose(truth, cameras.sensors[i], delta);
      const SensorPose& got = (*poses)[k].sensors[i];
      EXPECT_EQ(got.sensor_id, cameras.sensors[i].sensor_id);
      EXPECT_EQ(got.frame, Frame::kWorld);
      worst_position = std::max(worst_position, (got.position - expected.position).norm());
      worst_rotation = std::max(
          worst_rotation, (got.rotation - expected.rotation).cwiseAbs().maxCoeff());
    }
  }
  EXPECT_LT(worst_position, 1e-6);
  EXPECT_LT(worst_rotation, 1e-8);
}

TEST(PipelineTest, PlanarOnlySkipsSuspension) {
  const Scenario scenario = ArcFromRest();
  absl::StatusOr<Simulation> sim =
      Simulate(scenario.maneuver, {}, scenario.suspension, {});
  ASSERT_TRUE(sim.ok());
  std::vector<OdometrySample> samples = Samples(*sim);
  for (OdometrySample& s : samples) s.heights.reset();
  const CalibrationSet cameras = Cameras();
  absl::StatusOr<std::vector<PoseRecord>> poses =
      RunPipeline(samples, {}, true, cameras);
  ASSERT_TRUE(poses.ok()) << poses.status();
  for (const PoseRecord& r : *poses) {
    EXPECT_FALSE(r.suspension.has_value());
    // Without the suspension delta the camera keeps its calibrated height.
    EXPECT_NEAR(r.sensors[0].position.z(), cameras.sensors[0].position.z(), 1e-12);
  }
  EXPECT_FALSE(RunPipeline(samples, {}, false, cameras).ok());
}

TEST(PipelineTest, StoredReferencePlaneIsUsed) {
  const Scenario scenario = ArcFromRest();
  absl::StatusOr<Simulation> sim =
      Simulate(scenario.maneuver, {}, scenario.suspension, {});
  ASSERT_TRUE(sim.ok());
  const std::vector<OdometrySample> samples = Samples(*sim);
  CalibrationSet calibration;
  calibration.reference_plane = *FitPlane(samples.front().heights.value(), {});
  const std::vector<PoseRecord> stored = *RunPipeline(samples, {}, false, calibration);
  const std::vector<PoseRecord> windowed = *RunPipeline(samples, {}, false, {});
  ASSERT_EQ(stored.size(), windowed.size());
  for (std::size_t k = 0; k < stored.size(); ++k) {
    EXPECT_LT((stored[k].suspension->translation - windowed[k].suspension->translation)
                  .norm(),
              1e-12);
  }
}

TEST(PipelineTest, ErrorsCarryTheSampleTime) {
  std::vector<OdometrySample> samples(3);
  for (int k = 0; k < 3; ++k) samples[k].t = 0.02 * k;
  samples[2].t = 5.0;
  absl::StatusOr<std::vector<PoseRecord>> r = RunPipeline(samples, {}, true, {});
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().message().rfind("t=5:", 0), 0u) << r.status();
}

TEST(PipelineTest, StepwiseMatchesBatch) {
  absl::StatusOr<Scenario> scenario = testing::LoadScenario("slalom");
  ASSERT_TRUE(scenario.ok());
  NoiseSpec noise = NoiseSpec::Default();
  absl::StatusOr<Simulation> sim =
      Simulate(scenario->maneuver, {}, scenario->suspension, noise);
  ASSERT_TRUE(sim.ok());
  const std::vector<OdometrySample> samples = Samples(*sim);
  const std::vector<PoseRecord> batch = *RunPipeline(samples, {}, true, {});
  absl::StatusOr<OdometryPipeline> p = OdometryPipeline::Create({}, true, {}, {});
  ASSERT_TRUE(p.ok());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const PoseRecord r = *p->Step(samples[k]);
    EXPECT_EQ(r.planar.position, batch[k].planar.position);
    EXPECT_EQ(r.planar.theta, batch[k].planar.theta);
  }
}

TEST(ConfigTest, ParsesEveryKey) {
  absl::StatusOr<OdometryConfig> c = ParseConfig(R"({
    "track_width": 1.5, "wheelbase": 2.9, "rear_steering": "adaptive",
    "suspension_offsets": {"fl": [0.1, -0.05]},
    "meters_per_tick": 0.02, "alignment": "nearest",
    "straight_line_epsilon": 1e-7, "spin_epsilon": 1e-10,
    "max_wheel_step": 3, "max_sample_gap": 0.25, "max_yaw_rate": 5,
    "reference_window": 1.5, "height_smoothing": 4,
    "tight_turn_fallback": false
  })");
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->geometry.track_width, 1.5);
  EXPECT_EQ(c->geometry.rear_steering, RearSteering::kAdaptive);
  EXPECT_EQ(c->geometry.suspension_offsets.fl, Vec2(0.1, -0.05));
  EXPECT_EQ(c->alignment, AlignPolicy::kNearest);
  EXPECT_EQ(c->heading.max_gap, 0.25);
  EXPECT_EQ(c->height_smoothing, 4u);
  EXPECT_FALSE(c->planar.tight_turn_fallback);
}

TEST(ConfigTest, RoundTripsThroughJson) {
  OdometryConfig c;
  c.geometry.wheelbase = 3.1;
  c.geometry.rear_steering = RearSteering::kAdaptive;
  c.reference_window = 0.75;
  c.height_smoothing = 3;
  absl::StatusOr<OdometryConfig> back = ParseConfig(ConfigToJson(c));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(ConfigToJson(*back), ConfigToJson(c));
}

TEST(ConfigTest, RejectsBadInput) {
  for (const char* text :
       {"", "[1]", R"({"colour": 1})", R"({"track_width": "wide"})",
        R"({"wheelbase": -1})", R"({"rear_steering": "crab"})",
        R"({"height_smoothing": 0})", R"({"meters_per_tick": 0})",
        R"({"suspension_offsets": {"xx": [0, 0]}})",
        R"({"tight_turn_fallback": 1})"}) {
    EXPECT_FALSE(ParseConfig(text).ok()) << text;
  }
}

TEST(ConfigTest, ShippedVehicleConfigParses) {
  std::ifstream in(testing::DataPath("config/vehicle.json"));
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_TRUE(ParseConfig(buf.str()).ok());
}

}  // namespace
}  // namespace odo25

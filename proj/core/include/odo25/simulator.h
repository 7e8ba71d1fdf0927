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

#ifndef ODO25_SIMULATOR_H_
#define ODO25_SIMULATOR_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "odo25/extrinsics.h"
#include "odo25/ingest.h"
#include "odo25/planar.h"
#include "odo25/suspension.h"

namespace odo25 {

enum class CurvatureProfile { kConstant, kSinusoidal };

// One piece of a maneuver. Speed is the signed datum speed (negative =
// reversing) and ramps linearly from speed_start to speed_end; it may not
// change sign inside a segment. Curvature is either constant or
// amplitude * sin(angular_frequency * tau + phase), tau = local time.
// rear_icr_offset moves the ICR off the rear axle line (rear steering).
struct ManeuverSegment {
  double duration = 0.0;
  double speed_start = 0.0;
  double speed_end = 0.0;
  CurvatureProfile profile = CurvatureProfile::kConstant;
  double curvature = 0.0;
  double amplitude = 0.0;
  double angular_frequency = 0.0;
  double phase = 0.0;
  double rear_icr_offset = 0.0;

  double Speed(double tau) const;
  double Acceleration() const;
  double Curvature(double tau) const;
  // Signed datum travel since the segment start.
  double Distance(double tau) const;
  double MaxAbsCurvature() const;
};

struct ManeuverSpec {
  std::vector<ManeuverSegment> segments;
  double Duration() const;
};

// Quasi-static suspension: roll = k_roll * lateral acceleration, pitch =
// k_pitch * longitudinal acceleration, plus a static heave. Heights are
//   h_i = h0_i - heave - (x_i - x_mean) tan(pitch) + (y_i - y_mean) tan(roll)
// so the suspension-point centroid moves by exactly -heave.
struct SuspensionResponse {
  SuspensionHeights nominal_heights{.rl = 0.32, .rr = 0.32, .fl = 0.30,
                                    .fr = 0.30};
  double k_roll = 0.0;   // rad per m/s^2
  double k_pitch = 0.0;  // rad per m/s^2
  double heave = 0.0;    // m
};

struct NoiseSpec {
  double yaw_rate_sigma = 0.0;    // rad/s
  double tick_size = 0.0;         // m/tick; 0 = ideal (1e-9 m) resolution
  double suspension_sigma = 0.0;  // m
  std::uint64_t seed = 0;

  // yaw 0.002 rad/s, 0.023 m ticks, 1 mm suspension noise.
  static NoiseSpec Default();
};

inline constexpr double kIdealTickSize = 1e-9;
inline constexpr double kDefaultRateHz = 50.0;

struct TruthSample {
  double t = 0.0;
  PlanarState pose;
  double yaw_rate = 0.0;
  double roll = 0.0;
  double pitch = 0.0;
  double heave = 0.0;
  SuspensionHeights heights;  // noise-free
};

struct Simulation {
  std::vector<LogRecord> log;
  double meters_per_tick = kIdealTickSize;
  std::vector<TruthSample> truth;
};

absl::Status ValidateManeuver(const ManeuverSpec& spec,
                              const VehicleGeometry& geom);

// Samples at k / rate_hz plus the exact end time. Deterministic for a given
// seed.
absl::StatusOr<Simulation> Simulate(const ManeuverSpec& spec,
                                    const VehicleGeometry& geom,
                                    const SuspensionResponse& response,
                                    const NoiseSpec& noise,
                                    double rate_hz = kDefaultRateHz);

// Delta between the nominal plane and the truth roll/pitch/heave, built
// from the plane slopes directly rather than by refitting heights.
absl::StatusOr<SuspensionDelta> TrueSuspensionDelta(
    const TruthSample& truth, const SuspensionResponse& response,
    const VehicleGeometry& geom);

absl::StatusOr<SensorPose> GroundTruthSensorPose(
    const TruthSample& truth, const SensorExtrinsics& extrinsics,
    const SuspensionDelta& true_delta);

// Truth file: header `t,x,y,theta,phi,psi,heave`, 17 significant digits.
void WriteTruth(std::ostream& out, std::span<const TruthSample> truth);

// Maneuver script (JSON):
// {
//   "rate_hz": 50,
//   "suspension": {"nominal_heights": {"fl": .30, "fr": .30, "rl": .32,
//                  "rr": .32} | 0.31, "k_roll": 0.01, "k_pitch": 0.01,
//                  "heave": 0.0},
//   "segments": [
//     {"duration": 10, "speed": 1.0 | [v0, v1],
//      "curvature": 0.1 | {"amplitude": 0.1, "frequency": 0.5, "phase": 0},
//      "rear_offset": 0.0}
//   ]
// }
struct Scenario {
  ManeuverSpec maneuver;
  SuspensionResponse suspension;
  double rate_hz = kDefaultRateHz;
};

absl::StatusOr<Scenario> ParseScenario(std::string_view json_text);

// Noise file (JSON): {"yaw_rate_sigma": .., "tick": .., "suspension_sigma":
// .., "seed": ..}; missing keys take NoiseSpec::Default() values.
absl::StatusOr<NoiseSpec> ParseNoise(std::string_view json_text);

}  // namespace odo25

#endif  // ODO25_SIMULATOR_H_

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

#ifndef ODO25_CONFIG_H_
#define ODO25_CONFIG_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "odo25/heading.h"
#include "odo25/ingest.h"
#include "odo25/planar.h"

namespace odo25 {

// Vehicle/odometry configuration, JSON:
// {
//   "track_width": 1.6, "wheelbase": 2.7, "rear_steering": "fixed",
//   "suspension_offsets": {"fl": [dx, dy], ...},
//   "meters_per_tick": 0.023, "alignment": "linear",
//   "straight_line_epsilon": 1e-6, "spin_epsilon": 1e-9,
//   "max_wheel_step": 2.0, "max_sample_gap": 0.5, "max_yaw_rate": 10.0,
//   "reference_window": 2.0, "height_smoothing": 1
// }
// Every key is optional; unknown keys are rejected.
struct OdometryConfig {
  VehicleGeometry geometry;
  PlanarConfig planar;
  HeadingLimits heading;
  double meters_per_tick = 0.023;
  AlignPolicy alignment = AlignPolicy::kLinear;
  double reference_window = 2.0;  // s of settled heights for the reference
  std::size_t height_smoothing = 1;
};

absl::StatusOr<OdometryConfig> ParseConfig(std::string_view json_text);
std::string ConfigToJson(const OdometryConfig& config);

}  // namespace odo25

#endif  // ODO25_CONFIG_H_

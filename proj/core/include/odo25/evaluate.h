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

#ifndef ODO25_EVALUATE_H_
#define ODO25_EVALUATE_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace odo25 {

struct TrajectoryPoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  std::optional<double> theta;
};

using Trajectory = std::vector<TrajectoryPoint>;

struct TrajectoryMetrics {
  double endpoint_drift = 0.0;
  double mean_position_error = 0.0;  // over samples after the anchor
  double max_position_error = 0.0;
  std::optional<double> final_heading_error;  // signed; absent without theta
  double path_length = 0.0;                    // of the reference
  std::size_t compared_samples = 0;
};

// Resamples `reference` onto the estimate timestamps it covers (linear
// interpolation), anchors both at the first common pose and measures the
// planar position error. Without a reference heading the start heading of
// each trajectory is taken from its chord to the first reference point at
// least 1 m from the start.
absl::StatusOr<TrajectoryMetrics> Compare(const Trajectory& estimated,
                                          const Trajectory& reference);

// CSV with a header naming at least t, x, y; theta is optional and any other
// columns (e.g. the simulator's phi, psi, heave) are ignored.
absl::StatusOr<Trajectory> ReadTrajectoryCsv(std::istream& in);
void WriteTrajectoryCsv(std::ostream& out, const Trajectory& trajectory);

// key=value lines; a missing heading error is written as `absent`.
void WriteMetrics(std::ostream& out, const TrajectoryMetrics& metrics);

// Overlay of both paths (estimate red, reference blue) with a start marker.
void WriteOverlaySvg(std::ostream& out, const Trajectory& estimated,
                     const Trajectory& reference);

// Pearson correlation coefficient; 0 when either input has no variance.
double PearsonCorrelation(std::span<const double> a, std::span<const double> b);

}  // namespace odo25

#endif  // ODO25_EVALUATE_H_

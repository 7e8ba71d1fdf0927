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

#ifndef ODO25_HEADING_H_
#define ODO25_HEADING_H_

#include "absl/status/statusor.h"

namespace odo25 {

struct YawSample {
  double t = 0.0;         // seconds
  double yaw_rate = 0.0;  // rad/s, positive = left turn
};

struct HeadingLimits {
  // Bus signals arrive every 10-20 ms; anything longer breaks the
  // constant-curvature-per-step assumption.
  double max_gap = 0.5;        // s
  double max_yaw_rate = 10.0;  // rad/s
};

// Accumulated heading. Not wrapped; see WrapAngle() for presentation.
struct HeadingState {
  double theta = 0.0;
  YawSample last_sample;
};

struct HeadingStep {
  double delta_theta = 0.0;
  HeadingState state;
};

// Heading is zero at the first sample (constant of integration dropped).
absl::StatusOr<HeadingState> StartHeading(const YawSample& first,
                                          const HeadingLimits& limits = {});

// Trapezoidal increment over [last_sample.t, sample.t]:
//   delta = (w1 + w2) / 2 * (t2 - t1)
absl::StatusOr<HeadingStep> StepHeading(const HeadingState& state,
                                        const YawSample& sample,
                                        const HeadingLimits& limits = {});

}  // namespace odo25

#endif  // ODO25_HEADING_H_

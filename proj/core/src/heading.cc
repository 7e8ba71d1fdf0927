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

#include "odo25/heading.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace odo25 {
namespace {

absl::Status CheckSample(const YawSample& sample, const HeadingLimits& limits) {
  if (!std::isfinite(sample.t) || !std::isfinite(sample.yaw_rate)) {
    return absl::InvalidArgumentError(
        absl::StrCat("non-finite yaw sample at t=", sample.t));
  }
  if (std::abs(sample.yaw_rate) >= limits.max_yaw_rate) {
    return absl::OutOfRangeError(absl::StrCat(
        "yaw rate ", sample.yaw_rate, " rad/s exceeds sanity bound at t=",
        sample.t));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<HeadingState> StartHeading(const YawSample& first,
                                          const HeadingLimits& limits) {
  if (absl::Status s = CheckSample(first, limits); !s.ok()) return s;
  return HeadingState{.theta = 0.0, .last_sample = first};
}

absl::StatusOr<HeadingStep> StepHeading(const HeadingState& state,
                                        const YawSample& sample,
                                        const HeadingLimits& limits) {
  if (absl::Status s = CheckSample(sample, limits); !s.ok()) return s;
  const double dt = sample.t - state.last_sample.t;
  if (dt < 0.0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "time regression: ", sample.t, " < ", state.last_sample.t));
  }
  if (dt > limits.max_gap) {
    return absl::OutOfRangeError(absl::StrCat(
        "sample gap of ", dt, " s at t=", sample.t));
  }
  const double delta = 0.5 * (state.last_sample.yaw_rate + sample.yaw_rate) * dt;
  return HeadingStep{
      .delta_theta = delta,
      .state = HeadingState{.theta = state.theta + delta, .last_sample = sample}};
}

}  // namespace odo25

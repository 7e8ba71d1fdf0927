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

#ifndef ODO25_INGEST_H_
#define ODO25_INGEST_H_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "odo25/planar.h"
#include "odo25/suspension.h"

namespace odo25 {

// Sensor log format
// -----------------
// UTF-8 text, one sample per line:  t_seconds,channel_id,value
// '#' starts a comment line; a non-numeric first data line is a header.
//   yaw_rate            rad/s, + = left
//   wheel_{rl,rr,fl,fr} cumulative (unsigned) tick count
//   susp_{fl,fr,rl,rr}  wheel-arch height, millimeters
//   direction           +1 forward, -1 reverse (optional, default +1)
// A comment of the form `# meters_per_tick=<value>` overrides the configured
// tick size for that log.
enum class Channel {
  kYawRate,
  kWheelRl,
  kWheelRr,
  kWheelFl,
  kWheelFr,
  kSuspFl,
  kSuspFr,
  kSuspRl,
  kSuspRr,
  kDirection,
};

std::string_view ChannelName(Channel channel);
std::optional<Channel> ChannelFromName(std::string_view name);
Channel WheelChannel(Wheel w);
Channel SuspensionChannel(Wheel w);

struct TimedValue {
  double t = 0.0;
  double value = 0.0;
};

// After parsing, wheel channels hold signed cumulative distance in meters
// (zero at the first sample) and suspension channels hold meters.
struct ChannelStream {
  Channel channel = Channel::kYawRate;
  std::vector<TimedValue> samples;
};

struct LogStreams {
  std::map<Channel, ChannelStream> streams;
  std::vector<std::string> warnings;
  double meters_per_tick = 0.0;  // the value actually used
};

struct LogRecord {
  double t = 0.0;
  Channel channel = Channel::kYawRate;
  double value = 0.0;
};

double TicksToMeters(double ticks, double meters_per_tick, double direction);

absl::StatusOr<LogStreams> ParseLog(std::istream& in, double meters_per_tick);

// Writes records in log order with 17 significant digits.
void WriteLog(std::ostream& out, std::span<const LogRecord> records,
              std::optional<double> meters_per_tick_directive);

struct OdometrySample {
  double t = 0.0;
  double yaw_rate = 0.0;
  WheelDistances wheels;  // travel since the previous aligned sample
  std::optional<SuspensionHeights> heights;
};

enum class AlignPolicy { kLinear, kNearest };

struct AlignOptions {
  AlignPolicy policy = AlignPolicy::kLinear;
  bool require_suspension = true;
};

// Resamples every channel onto the yaw-rate timestamps that fall inside all
// channels' time support. Wheel channels are resampled as cumulative
// distance and differenced, so totals are preserved.
absl::StatusOr<std::vector<OdometrySample>> Align(const LogStreams& log,
                                                  const AlignOptions& options);

// Inverse view of Align's output: streams whose wheel channels carry the
// running sum of the per-step distances.
LogStreams StreamsFromSamples(std::span<const OdometrySample> samples);

}  // namespace odo25

#endif  // ODO25_INGEST_H_

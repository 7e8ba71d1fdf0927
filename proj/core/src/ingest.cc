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

#include "odo25/ingest.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "text_util.h"

namespace odo25 {
namespace {

using internal::ParseDouble;
using internal::Split;
using internal::Trim;

struct ChannelInfo {
  Channel channel;
  std::string_view name;
};

constexpr std::array<ChannelInfo, 10> kChannels = {{
    {Channel::kYawRate, "yaw_rate"},
    {Channel::kWheelRl, "wheel_rl"},
    {Channel::kWheelRr, "wheel_rr"},
    {Channel::kWheelFl, "wheel_fl"},
    {Channel::kWheelFr, "wheel_fr"},
    {Channel::kSuspFl, "susp_fl"},
    {Channel::kSuspFr, "susp_fr"},
    {Channel::kSuspRl, "susp_rl"},
    {Channel::kSuspRr, "susp_rr"},
    {Channel::kDirection, "direction"},
}};

constexpr std::string_view kTickDirective = "meters_per_tick=";

bool IsWheel(Channel c) {
  return c == Channel::kWheelRl || c == Channel::kWheelRr ||
         c == Channel::kWheelFl || c == Channel::kWheelFr;
}

bool IsSuspension(Channel c) {
  return c == Channel::kSuspFl || c == Channel::kSuspFr ||
         c == Channel::kSuspRl || c == Channel::kSuspRr;
}

struct RawSample {
  double t;
  double value;
  int line;
};

// Value of the sample nearest to t (ties go to the earlier sample).
double NearestValue(const std::vector<RawSample>& samples, double t) {
  auto it = std::lower_bound(
      samples.begin(), samples.end(), t,
      [](const RawSample& s, double v) { return s.t < v; });
  if (it == samples.end()) return samples.back().value;
  if (it == samples.begin()) return it->value;
  auto prev = std::prev(it);
  return (t - prev->t) <= (it->t - t) ? prev->value : it->value;
}

// Cursor-based resampler; query times must be non-decreasing.
class Resampler {
 public:
  Resampler(const std::vector<TimedValue>& samples, AlignPolicy policy)
      : samples_(samples), policy_(policy) {}

  double At(double t) {
    while (cursor_ + 1 < samples_.size() && samples_[cursor_ + 1].t <= t) {
      ++cursor_;
    }
    const TimedValue& a = samples_[cursor_];
    if (t == a.t || cursor_ + 1 == samples_.size()) return a.value;
    const TimedValue& b = samples_[cursor_ + 1];
    if (policy_ == AlignPolicy::kNearest) {
      return (t - a.t) <= (b.t - t) ? a.value : b.value;
    }
    const double u = (t - a.t) / (b.t - a.t);
    return a.value + u * (b.value - a.value);
  }

 private:
  const std::vector<TimedValue>& samples_;
  AlignPolicy policy_;
  std::size_t cursor_ = 0;
};

}  // namespace

std::string_view ChannelName(Channel channel) {
  for (const ChannelInfo& info : kChannels) {
    if (info.channel == channel) return info.name;
  }
  return "unknown";
}

std::optional<Channel> ChannelFromName(std::string_view name) {
  for (const ChannelInfo& info : kChannels) {
    if (info.name == name) return info.channel;
  }
  return std::nullopt;
}

Channel WheelChannel(Wheel w) {
  switch (w) {
    case Wheel::kRearLeft: return Channel::kWheelRl;
    case Wheel::kRearRight: return Channel::kWheelRr;
    case Wheel::kFrontLeft: return Channel::kWheelFl;
    case Wheel::kFrontRight: return Channel::kWheelFr;
  }
  return Channel::kWheelRl;
}

Channel SuspensionChannel(Wheel w) {
  switch (w) {
    case Wheel::kRearLeft: return Channel::kSuspRl;
    case Wheel::kRearRight: return Channel::kSuspRr;
    case Wheel::kFrontLeft: return Channel::kSuspFl;
    case Wheel::kFrontRight: return Channel::kSuspFr;
  }
  return Channel::kSuspRl;
}

double TicksToMeters(double ticks, double meters_per_tick, double direction) {
  return ticks * meters_per_tick * direction;
}

absl::StatusOr<LogStreams> ParseLog(std::istream& in, double meters_per_tick) {
  std::map<Channel, std::vector<RawSample>> raw;
  LogStreams out;
  out.meters_per_tick = meters_per_tick;

  std::string line;
  int line_number = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view text = Trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      text.remove_prefix(1);
      text = Trim(text);
      if (text.starts_with(kTickDirective)) {
        double mpt = 0.0;
        if (!ParseDouble(text.substr(kTickDirective.size()), mpt) || mpt <= 0.0) {
          return absl::InvalidArgumentError(absl::StrCat(
              "line ", line_number, ": bad meters_per_tick directive"));
        }
        out.meters_per_tick = mpt;
      }
      continue;
    }

    const std::vector<std::string_view> fields = Split(text, ',');
    double t = 0.0;
    double value = 0.0;
    const bool numeric_time = fields.size() == 3 && ParseDouble(fields[0], t);
    if (!seen_data && !numeric_time) {
      seen_data = true;  // header
      continue;
    }
    seen_data = true;
    if (!numeric_time || !ParseDouble(fields[2], value)) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": malformed record '", std::string(text), "'"));
    }
    const std::string_view name = Trim(fields[1]);
    std::optional<Channel> channel = ChannelFromName(name);
    if (!channel) {
      out.warnings.push_back(absl::StrCat("line ", line_number,
                                          ": unknown channel '", std::string(name),
                                          "' skipped"));
      continue;
    }
    std::vector<RawSample>& samples = raw[*channel];
    if (!samples.empty() && t <= samples.back().t) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": non-monotone timestamp in channel ", std::string(name)));
    }
    samples.push_back({t, value, line_number});
  }

  if (!(out.meters_per_tick > 0.0)) {
    return absl::InvalidArgumentError("meters_per_tick must be positive");
  }

  const std::vector<RawSample>* direction = nullptr;
  if (auto it = raw.find(Channel::kDirection); it != raw.end()) {
    for (const RawSample& s : it->second) {
      if (s.value != 1.0 && s.value != -1.0) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", s.line, ": direction must be +1 or -1"));
      }
    }
    direction = &it->second;
  }

  for (const auto& [channel, samples] : raw) {
    ChannelStream stream{.channel = channel, .samples = {}};
    stream.samples.reserve(samples.size());
    if (IsWheel(channel)) {
      double cumulative = 0.0;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const RawSample& s = samples[i];
        if (s.value < 0.0) {
          return absl::InvalidArgumentError(
              absl::StrCat("line ", s.line, ": negative tick count"));
        }
        if (i > 0) {
          const double ticks = s.value - samples[i - 1].value;
          if (ticks < 0.0) {
            return absl::InvalidArgumentError(
                absl::StrCat("line ", s.line, ": tick counter decreased"));
          }
          const double dir = direction ? NearestValue(*direction, s.t) : 1.0;
          cumulative += TicksToMeters(ticks, out.meters_per_tick, dir);
        }
        stream.samples.push_back({s.t, cumulative});
      }
    } else if (IsSuspension(channel)) {
      for (const RawSample& s : samples) {
        stream.samples.push_back({s.t, s.value * 1e-3});
      }
    } else {
      for (const RawSample& s : samples) {
        stream.samples.push_back({s.t, s.value});
      }
    }
    out.streams.emplace(channel, std::move(stream));
  }
  return out;
}

void WriteLog(std::ostream& out, std::span<const LogRecord> records,
              std::optional<double> meters_per_tick_directive) {
  out << "# odo25 sensor log\n";
  char buf[96];
  if (meters_per_tick_directive) {
    std::snprintf(buf, sizeof(buf), "# meters_per_tick=%.17g\n",
                  *meters_per_tick_directive);
    out << buf;
  }
  out << "t,channel,value\n";
  for (const LogRecord& r : records) {
    const std::string name(ChannelName(r.channel));
    std::snprintf(buf, sizeof(buf), "%.17g,%s,%.17g\n", r.t, name.c_str(),
                  r.value);
    out << buf;
  }
}

absl::StatusOr<std::vector<OdometrySample>> Align(const LogStreams& log,
                                                  const AlignOptions& options) {
  std::vector<Channel> required = {Channel::kYawRate};
  for (Wheel w : kAllWheels) required.push_back(WheelChannel(w));
  if (options.require_suspension) {
    for (Wheel w : kAllWheels) required.push_back(SuspensionChannel(w));
  }

  double start = -std::numeric_limits<double>::infinity();
  double end = std::numeric_limits<double>::infinity();
  for (Channel c : required) {
    auto it = log.streams.find(c);
    if (it == log.streams.end() || it->second.samples.empty()) {
      return absl::NotFoundError(
          absl::StrCat("missing required channel ", std::string(ChannelName(c))));
    }
    const std::vector<TimedValue>& s = it->second.samples;
    if (s.size() < 2) {
      return absl::FailedPreconditionError(absl::StrCat(
          "channel ", std::string(ChannelName(c)), " needs at least 2 samples"));
    }
    start = std::max(start, s.front().t);
    end = std::min(end, s.back().t);
  }

  const std::vector<TimedValue>& master =
      log.streams.at(Channel::kYawRate).samples;
  std::vector<TimedValue> clock;
  for (const TimedValue& s : master) {
    if (s.t >= start && s.t <= end) clock.push_back(s);
  }
  if (clock.size() < 2) {
    return absl::FailedPreconditionError("insufficient overlap");
  }

  std::vector<Resampler> resamplers;
  resamplers.reserve(8);
  for (Wheel w : kAllWheels) {
    resamplers.emplace_back(log.streams.at(WheelChannel(w)).samples,
                            options.policy);
  }
  if (options.require_suspension) {
    for (Wheel w : kAllWheels) {
      resamplers.emplace_back(log.streams.at(SuspensionChannel(w)).samples,
                              options.policy);
    }
  }

  std::vector<OdometrySample> out;
  out.reserve(clock.size());
  PerWheel<double> previous_distance;
  for (std::size_t k = 0; k < clock.size(); ++k) {
    OdometrySample sample;
    sample.t = clock[k].t;
    sample.yaw_rate = clock[k].value;
    for (std::size_t i = 0; i < 4; ++i) {
      const Wheel w = kAllWheels[i];
      const double cumulative = resamplers[i].At(sample.t);
      sample.wheels[w] = k == 0 ? 0.0 : cumulative - previous_distance[w];
      previous_distance[w] = cumulative;
    }
    if (options.require_suspension) {
      SuspensionHeights h;
      for (std::size_t i = 0; i < 4; ++i) {
        h[kAllWheels[i]] = resamplers[4 + i].At(sample.t);
      }
      sample.heights = h;
    }
    out.push_back(sample);
  }
  return out;
}

LogStreams StreamsFromSamples(std::span<const OdometrySample> samples) {
  LogStreams out;
  out.meters_per_tick = 1.0;
  const auto stream = [&](Channel c) -> std::vector<TimedValue>& {
    ChannelStream& s = out.streams[c];
    s.channel = c;
    return s.samples;
  };
  PerWheel<double> cumulative;
  for (const OdometrySample& s : samples) {
    stream(Channel::kYawRate).push_back({s.t, s.yaw_rate});
    for (Wheel w : kAllWheels) {
      cumulative[w] += s.wheels[w];
      stream(WheelChannel(w)).push_back({s.t, cumulative[w]});
      if (s.heights) {
        stream(SuspensionChannel(w)).push_back({s.t, (*s.heights)[w]});
      }
    }
  }
  return out;
}

}  // namespace odo25

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

#include <cmath>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "support/test_support.h"

namespace odo25 {
namespace {

using testing::Gen;

absl::StatusOr<LogStreams> Parse(const std::string& text, double mpt = 0.023) {
  std::istringstream in(text);
  return ParseLog(in, mpt);
}

// A synthetic log where every channel shares `times`.
std::string SharedClockLog(const std::vector<double>& times) {
  std::ostringstream out;
  out.precision(17);
  out << "t,channel,value\n";
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    out << t << ",yaw_rate," << 0.1 * std::sin(t) << "\n";
    int offset = 0;
    for (const char* w : {"rl", "rr", "fl", "fr"}) {
      out << t << ",wheel_" << w << "," << 3 * k + offset++ << "\n";
    }
    for (const char* w : {"fl", "fr", "rl", "rr"}) {
      out << t << ",susp_" << w << "," << 300.0 + 5 * std::cos(t + offset++) << "\n";
    }
  }
  return out.str();
}

TEST(ParseLogTest, YawRateLine) {
  absl::StatusOr<LogStreams> log = Parse("0.020,yaw_rate,0.100\n");
  ASSERT_TRUE(log.ok());
  const ChannelStream& s = log->streams.at(Channel::kYawRate);
  ASSERT_EQ(s.samples.size(), 1u);
  EXPECT_EQ(s.samples[0].t, 0.020);
  EXPECT_EQ(s.samples[0].value, 0.100);
}

TEST(ParseLogTest, TicksToSignedMeters) {
  EXPECT_NEAR(TicksToMeters(4, 0.023, -1), -0.092, 1e-15);
  absl::StatusOr<LogStreams> log = Parse(
      "0.00,direction,-1\n0.00,wheel_rl,10\n0.02,wheel_rl,14\n");
  ASSERT_TRUE(log.ok()) << log.status();
  const auto& s = log->streams.at(Channel::kWheelRl).samples;
  EXPECT_EQ(s[0].value, 0.0);
  EXPECT_NEAR(s[1].value, -0.092, 1e-15);
}

TEST(ParseLogTest, EmptyInputIsEmpty) {
  absl::StatusOr<LogStreams> log = Parse("");
  ASSERT_TRUE(log.ok());
  EXPECT_TRUE(log->streams.empty());
  EXPECT_TRUE(log->warnings.empty());
}

TEST(ParseLogTest, SuspensionMillimetersToMeters) {
  absl::StatusOr<LogStreams> log = Parse("1.0,susp_fl,310.5\n");
  ASSERT_TRUE(log.ok());
  EXPECT_NEAR(log->streams.at(Channel::kSuspFl).samples[0].value, 0.3105, 1e-15);
}

TEST(ParseLogTest, HeaderCommentsAndDirective) {
  absl::StatusOr<LogStreams> log = Parse(
      "# recorded on the test track\n# meters_per_tick=0.05\n"
      "t,channel,value\n0,wheel_fr,0\n0.02,wheel_fr,2\n");
  ASSERT_TRUE(log.ok()) << log.status();
  EXPECT_EQ(log->meters_per_tick, 0.05);
  EXPECT_NEAR(log->streams.at(Channel::kWheelFr).samples[1].value, 0.1, 1e-15);
}

TEST(ParseLogTest, MalformedLineNamesItsNumber) {
  std::string text = SharedClockLog({0.0, 0.02});
  text += "0.04,yaw_rate\n";
  absl::StatusOr<LogStreams> log = Parse(text);
  ASSERT_FALSE(log.ok());
  EXPECT_NE(log.status().message().find("line 20:"), std::string::npos)
      << log.status();
}

TEST(ParseLogTest, UnknownChannelWarnsAndSkips) {
  absl::StatusOr<LogStreams> log = Parse("0,steering_angle,0.3\n0,yaw_rate,0\n");
  ASSERT_TRUE(log.ok());
  ASSERT_EQ(log->warnings.size(), 1u);
  EXPECT_NE(log->warnings[0].find("steering_angle"), std::string::npos);
  EXPECT_EQ(log->streams.size(), 1u);
}

TEST(ParseLogTest, NonMonotoneTimestampIsAnError) {
  absl::StatusOr<LogStreams> log = Parse("0.02,yaw_rate,0\n0.02,yaw_rate,0\n");
  ASSERT_FALSE(log.ok());
  EXPECT_NE(log.status().message().find("line 2"), std::string::npos);
}

TEST(ParseLogTest, RejectsBadDirectionAndCounters) {
  EXPECT_FALSE(Parse("0,direction,0\n").ok());
  EXPECT_FALSE(Parse("0,wheel_rl,5\n0.02,wheel_rl,4\n").ok());
  EXPECT_FALSE(Parse("0,wheel_rl,-1\n").ok());
  EXPECT_FALSE(Parse("0,wheel_rl,1\n", 0.0).ok());
}

TEST(ParseLogTest, WriteThenParseRoundTrips) {
  const std::vector<LogRecord> records{
      {0.0, Channel::kYawRate, 0.125}, {0.0, Channel::kWheelRl, 0},
      {0.02, Channel::kYawRate, -1.0 / 3.0}, {0.02, Channel::kWheelRl, 17}};
  std::stringstream text;
  WriteLog(text, records, 0.01);
  absl::StatusOr<LogStreams> log = ParseLog(text, 0.023);
  ASSERT_TRUE(log.ok());
  EXPECT_EQ(log->meters_per_tick, 0.01);
  EXPECT_EQ(log->streams.at(Channel::kYawRate).samples[1].value, -1.0 / 3.0);
  EXPECT_NEAR(log->streams.at(Channel::kWheelRl).samples[1].value, 0.17, 1e-15);
}

TEST(AlignTest, SharedTimestampsAreUntouched) {
  std::vector<double> times;
  for (int k = 0; k < 50; ++k) times.push_back(0.02 * k);
  absl::StatusOr<LogStreams> log = Parse(SharedClockLog(times));
  ASSERT_TRUE(log.ok());
  absl::StatusOr<std::vector<OdometrySample>> aligned = Align(*log, {});
  ASSERT_TRUE(aligned.ok()) << aligned.status();
  ASSERT_EQ(aligned->size(), times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const OdometrySample& s = (*aligned)[k];
    EXPECT_EQ(s.t, times[k]);
    EXPECT_EQ(s.yaw_rate, log->streams.at(Channel::kYawRate).samples[k].value);
    EXPECT_EQ(s.heights->fl, log->streams.at(Channel::kSuspFl).samples[k].value);
    if (k > 0) EXPECT_NEAR(s.wheels.rl, 3 * 0.023, 1e-15);
  }
  EXPECT_EQ((*aligned)[0].wheels.rl, 0.0);
}

TEST(AlignTest, HalfRateChannelIsLinearlyInterpolated) {
  LogStreams log;
  log.meters_per_tick = 1.0;
  auto add = [&](Channel c, double t, double v) {
    log.streams[c].channel = c;
    log.streams[c].samples.push_back({t, v});
  };
  for (int k = 0; k <= 10; ++k) {
    const double t = 0.02 * k;
    add(Channel::kYawRate, t, 0.0);
    for (Wheel w : kAllWheels) add(WheelChannel(w), t, 0.01 * k);
    if (k % 2 == 0) {
      for (Wheel w : kAllWheels) add(SuspensionChannel(w), t, 0.3 + 0.001 * k * k);
    }
  }
  absl::StatusOr<std::vector<OdometrySample>> aligned = Align(log, {});
  ASSERT_TRUE(aligned.ok());
  for (int k = 1; k < 10; k += 2) {
    const double before = 0.3 + 0.001 * (k - 1) * (k - 1);
    const double after = 0.3 + 0.001 * (k + 1) * (k + 1);
    EXPECT_NEAR((*aligned)[k].heights->rr, 0.5 * (before + after), 1e-15);
  }
  absl::StatusOr<std::vector<OdometrySample>> nearest =
      Align(log, {.policy = AlignPolicy::kNearest});
  ASSERT_TRUE(nearest.ok());
  const double h1 = (*nearest)[1].heights->rr;
  EXPECT_TRUE(h1 == 0.3 || h1 == 0.3 + 0.004);
}

TEST(AlignTest, OutputIsRestrictedToEveryChannelsSupport) {
  LogStreams log;
  log.meters_per_tick = 1.0;
  for (int k = 0; k <= 150; ++k) {
    const double t = 0.02 * k;
    log.streams[Channel::kYawRate].samples.push_back({t, 0.0});
    for (Wheel w : kAllWheels) {
      log.streams[WheelChannel(w)].samples.push_back({t, 0.0});
      if (t >= 1.0 - 1e-12 && t <= 2.0 + 1e-12) {
        log.streams[SuspensionChannel(w)].samples.push_back({t, 0.3});
      }
    }
  }
  absl::StatusOr<std::vector<OdometrySample>> aligned = Align(log, {});
  ASSERT_TRUE(aligned.ok());
  EXPECT_GE(aligned->front().t, 1.0 - 1e-12);
  EXPECT_LE(aligned->back().t, 2.0 + 1e-12);
  EXPECT_EQ(aligned->size(), 51u);
}

TEST(AlignTest, MissingChannelIsNamed) {
  std::string text = SharedClockLog({0.0, 0.02, 0.04});
  std::string filtered;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.find("susp_rr") == std::string::npos) filtered += line + "\n";
  }
  absl::StatusOr<LogStreams> log = Parse(filtered);
  ASSERT_TRUE(log.ok());
  absl::StatusOr<std::vector<OdometrySample>> aligned = Align(*log, {});
  ASSERT_FALSE(aligned.ok());
  EXPECT_NE(aligned.status().message().find("susp_rr"), std::string::npos);
  EXPECT_TRUE(Align(*log, {.require_suspension = false}).ok());
}

TEST(AlignTest, InsufficientOverlap) {
  LogStreams log;
  log.meters_per_tick = 1.0;
  log.streams[Channel::kYawRate].samples = {{0.0, 0}, {0.02, 0}};
  for (Wheel w : kAllWheels) {
    log.streams[WheelChannel(w)].samples = {{0.02, 0}, {0.04, 0}};
  }
  absl::StatusOr<std::vector<OdometrySample>> aligned =
      Align(log, {.require_suspension = false});
  ASSERT_FALSE(aligned.ok());
  EXPECT_NE(aligned.status().message().find("insufficient overlap"),
            std::string::npos);
}

TEST(AlignPropertyTest, IdempotentOnAlignedStreams) {
  Gen gen(61);
  std::vector<double> times{0.0};
  for (int k = 0; k < 300; ++k) times.push_back(times.back() + gen.Uniform(0.005, 0.03));
  absl::StatusOr<LogStreams> log = Parse(SharedClockLog(times));
  ASSERT_TRUE(log.ok());
  const std::vector<OdometrySample> once = *Align(*log, {});
  const std::vector<OdometrySample> twice = *Align(StreamsFromSamples(once), {});
  ASSERT_EQ(once.size(), twice.size());
  for (std::size_t k = 0; k < once.size(); ++k) {
    EXPECT_EQ(once[k].t, twice[k].t);
    EXPECT_EQ(once[k].yaw_rate, twice[k].yaw_rate);
    for (Wheel w : kAllWheels) {
      EXPECT_EQ(once[k].wheels[w], twice[k].wheels[w]);
      EXPECT_EQ((*once[k].heights)[w], (*twice[k].heights)[w]);
    }
  }
}

TEST(AlignPropertyTest, ResamplingPreservesWheelTotals) {
  Gen gen(62);
  for (int trial = 0; trial < 20; ++trial) {
    LogStreams log;
    log.meters_per_tick = 0.023;
    double t = 0.0;
    for (int k = 0; k < 200; ++k) {
      log.streams[Channel::kYawRate].samples.push_back({t, 0.0});
      t += 0.02;
    }
    const double end = t;
    for (Wheel w : kAllWheels) {
      // Own jittered clock starting with the master, at most one tick per
      // message.
      double tw = 0.0;
      double ticks = 0.0;
      auto& s = log.streams[WheelChannel(w)].samples;
      while (tw < end + 0.05) {
        s.push_back({tw, ticks * 0.023});
        tw += gen.Uniform(0.007, 0.013);
        ticks += gen.Uniform(0.0, 1.0) < 0.6 ? 1.0 : 0.0;
      }
    }
    const std::vector<OdometrySample> out =
        *Align(log, {.require_suspension = false});
    const double t0 = out.front().t;
    const double t1 = out.back().t;
    for (Wheel w : kAllWheels) {
      double sum = 0.0;
      for (const OdometrySample& s : out) sum += s.wheels[w];
      double first = NAN;
      double last = NAN;
      for (const TimedValue& v : log.streams[WheelChannel(w)].samples) {
        if (v.t < t0 || v.t > t1) continue;
        if (std::isnan(first)) first = v.value;
        last = v.value;
      }
      EXPECT_LT(std::abs(sum - (last - first)), 0.023);
    }
  }
}

TEST(ChannelNamesTest, RoundTrip) {
  for (Channel c : {Channel::kYawRate, Channel::kWheelRl, Channel::kWheelRr,
                    Channel::kWheelFl, Channel::kWheelFr, Channel::kSuspFl,
                    Channel::kSuspFr, Channel::kSuspRl, Channel::kSuspRr,
                    Channel::kDirection}) {
    EXPECT_EQ(ChannelFromName(ChannelName(c)), c);
  }
  EXPECT_FALSE(ChannelFromName("wheel_xx").has_value());
}

}  // namespace
}  // namespace odo25

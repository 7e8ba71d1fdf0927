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

#include "odo25/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "absl/strings/str_cat.h"
#include "text_util.h"
#include "json.hpp"

namespace odo25 {
namespace {

using internal::Format17;
using Json = nlohmann::json;

// RK4 substeps per sample interval on sinusoidal segments.
constexpr int kSubstepsPerSample = 64;

struct Kinematics {
  double theta = 0.0;
  Vec2 position = Vec2::Zero();
  PerWheel<double> wheel_travel;  // unsigned, cumulative
  double datum_travel = 0.0;      // signed, cumulative
};

// Unit datum velocity direction (vehicle frame) for curvature k and ICR
// x-offset x: the datum moves perpendicular to the ICR ray.
Vec2 MotionDirection(double k, double x) {
  return {std::sqrt(std::max(0.0, 1.0 - k * k * x * x)), -k * x};
}

Vec2 Rotate(double theta, const Vec2& v) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

// Constant curvature: rigid rotation about a fixed ICR.
Kinematics AdvanceConstant(const Kinematics& start, const ManeuverSegment& seg,
                           const PerWheel<Vec3>& wheels, double tau) {
  const double s = seg.Distance(tau);
  const double k = seg.curvature;
  Kinematics out = start;
  out.datum_travel += s;
  if (k == 0.0) {
    out.position += Rotate(start.theta, Vec2(s, 0.0));
    for (Wheel w : kAllWheels) out.wheel_travel[w] += std::abs(s);
    return out;
  }
  const double x = seg.rear_icr_offset;
  const double y = std::copysign(std::sqrt(1.0 / (k * k) - x * x), k);
  const Vec2 icr(x, y);
  const Vec2 icr_world = start.position + Rotate(start.theta, icr);
  out.theta = start.theta + k * s;
  out.position = icr_world + Rotate(out.theta, -icr);
  for (Wheel w : kAllWheels) {
    out.wheel_travel[w] +=
        std::abs(s) * std::abs(k) * (wheels[w].head<2>() - icr).norm();
  }
  return out;
}

struct Derivative {
  double theta;
  Vec2 position;
  PerWheel<double> wheels;
  double datum;
};

Derivative Rates(const Kinematics& state, const ManeuverSegment& seg,
                 const PerWheel<Vec3>& wheels, double tau) {
  const double v = seg.Speed(tau);
  const double k = seg.Curvature(tau);
  const Vec2 u = MotionDirection(k, seg.rear_icr_offset);
  Derivative d;
  d.theta = v * k;
  d.position = v * Rotate(state.theta, u);
  d.datum = v;
  for (Wheel w : kAllWheels) {
    const Vec2 lever(-wheels[w].y(), wheels[w].x());
    d.wheels[w] = std::abs(v) * (u + k * lever).norm();
  }
  return d;
}

Kinematics Apply(const Kinematics& s, const Derivative& d, double h) {
  Kinematics out = s;
  out.theta += h * d.theta;
  out.position += h * d.position;
  out.datum_travel += h * d.datum;
  for (Wheel w : kAllWheels) out.wheel_travel[w] += h * d.wheels[w];
  return out;
}

Kinematics Rk4Step(const Kinematics& s, const ManeuverSegment& seg,
                   const PerWheel<Vec3>& wheels, double tau, double h) {
  const Derivative k1 = Rates(s, seg, wheels, tau);
  const Derivative k2 = Rates(Apply(s, k1, h / 2), seg, wheels, tau + h / 2);
  const Derivative k3 = Rates(Apply(s, k2, h / 2), seg, wheels, tau + h / 2);
  const Derivative k4 = Rates(Apply(s, k3, h), seg, wheels, tau + h);
  Kinematics out = s;
  out.theta += h / 6 * (k1.theta + 2 * k2.theta + 2 * k3.theta + k4.theta);
  out.position += h / 6 * (k1.position + 2 * k2.position + 2 * k3.position +
                           k4.position);
  out.datum_travel +=
      h / 6 * (k1.datum + 2 * k2.datum + 2 * k3.datum + k4.datum);
  for (Wheel w : kAllWheels) {
    out.wheel_travel[w] += h / 6 * (k1.wheels[w] + 2 * k2.wheels[w] +
                                    2 * k3.wheels[w] + k4.wheels[w]);
  }
  return out;
}

// Marches a sinusoidal segment forward; query times must not decrease.
class SegmentIntegrator {
 public:
  SegmentIntegrator(const Kinematics& start, const ManeuverSegment& seg,
                    const PerWheel<Vec3>& wheels, double max_step)
      : start_(start), seg_(seg), wheels_(wheels), max_step_(max_step),
        state_(start) {}

  Kinematics At(double tau) {
    if (seg_.profile == CurvatureProfile::kConstant) {
      return AdvanceConstant(start_, seg_, wheels_, tau);
    }
    const double span = tau - tau_;
    if (span > 0.0) {
      const int n = static_cast<int>(std::ceil(span / max_step_));
      const double h = span / n;
      for (int i = 0; i < n; ++i) {
        state_ = Rk4Step(state_, seg_, wheels_, tau_ + i * h, h);
      }
      tau_ = tau;
    }
    return state_;
  }

 private:
  Kinematics start_;
  const ManeuverSegment& seg_;
  const PerWheel<Vec3>& wheels_;
  double max_step_;
  Kinematics state_;
  double tau_ = 0.0;
};

SuspensionHeights HeightsFor(const SuspensionResponse& response,
                             const VehicleGeometry& geom, double roll,
                             double pitch) {
  Vec2 mean = Vec2::Zero();
  for (Wheel w : kAllWheels) mean += geom.SuspensionPoint(w);
  mean /= 4.0;
  SuspensionHeights h;
  for (Wheel w : kAllWheels) {
    const Vec2 p = geom.SuspensionPoint(w) - mean;
    h[w] = response.nominal_heights[w] - response.heave -
           p.x() * std::tan(pitch) + p.y() * std::tan(roll);
  }
  return h;
}

absl::Status JsonError(const std::string& what) {
  return absl::InvalidArgumentError(absl::StrCat("maneuver: ", what));
}

absl::StatusOr<double> NumberAt(const Json& obj, const char* key,
                                double fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number()) return JsonError(absl::StrCat("'", key, "' must be a number"));
  return v.get<double>();
}

}  // namespace

double ManeuverSegment::Speed(double tau) const {
  return speed_start + Acceleration() * tau;
}

double ManeuverSegment::Acceleration() const {
  return duration > 0.0 ? (speed_end - speed_start) / duration : 0.0;
}

double ManeuverSegment::Curvature(double tau) const {
  if (profile == CurvatureProfile::kConstant) return curvature;
  return amplitude * std::sin(angular_frequency * tau + phase);
}

double ManeuverSegment::Distance(double tau) const {
  return speed_start * tau + 0.5 * Acceleration() * tau * tau;
}

double ManeuverSegment::MaxAbsCurvature() const {
  return profile == CurvatureProfile::kConstant ? std::abs(curvature)
                                                : std::abs(amplitude);
}

double ManeuverSpec::Duration() const {
  double total = 0.0;
  for (const ManeuverSegment& s : segments) total += s.duration;
  return total;
}

NoiseSpec NoiseSpec::Default() {
  return NoiseSpec{.yaw_rate_sigma = 0.002,
                   .tick_size = 0.023,
                   .suspension_sigma = 0.001,
                   .seed = 0};
}

absl::Status ValidateManeuver(const ManeuverSpec& spec,
                              const VehicleGeometry& geom) {
  if (absl::Status s = geom.Validate(); !s.ok()) return s;
  if (spec.segments.empty()) return JsonError("no segments");
  const double half = 0.5 * geom.track_width;
  for (std::size_t i = 0; i < spec.segments.size(); ++i) {
    const ManeuverSegment& seg = spec.segments[i];
    const auto bad = [&](const std::string& what) {
      return absl::InvalidArgumentError(
          absl::StrCat("segment ", i + 1, ": ", what));
    };
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
      return bad("duration must be positive");
    }
    if (!std::isfinite(seg.speed_start) || !std::isfinite(seg.speed_end)) {
      return bad("speed must be finite");
    }
    if (seg.speed_start * seg.speed_end < 0.0) {
      return bad("speed changes sign inside the segment");
    }
    const double k = seg.MaxAbsCurvature();
    if (!std::isfinite(k) || !std::isfinite(seg.angular_frequency) ||
        !std::isfinite(seg.phase) || !std::isfinite(seg.rear_icr_offset)) {
      return bad("curvature parameters must be finite");
    }
    if (k * half >= 1.0) return bad("ICR inside the wheel track");
    if (k * std::abs(seg.rear_icr_offset) >= 1.0) {
      return bad("rear ICR offset exceeds the turning radius");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Simulation> Simulate(const ManeuverSpec& spec,
                                    const VehicleGeometry& geom,
                                    const SuspensionResponse& response,
                                    const NoiseSpec& noise, double rate_hz) {
  if (absl::Status s = ValidateManeuver(spec, geom); !s.ok()) return s;
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
    return absl::InvalidArgumentError("sample rate must be positive");
  }
  if (noise.yaw_rate_sigma < 0.0 || noise.tick_size < 0.0 ||
      noise.suspension_sigma < 0.0) {
    return absl::InvalidArgumentError("noise parameters must be >= 0");
  }
  if (absl::Status s = ValidateHeights(response.nominal_heights); !s.ok()) {
    return s;
  }
  if (response.k_roll < 0.0 || response.k_pitch < 0.0) {
    return absl::InvalidArgumentError("suspension gains must be >= 0");
  }

  const double total = spec.Duration();
  std::vector<double> times;
  for (long k = 0;; ++k) {
    const double t = static_cast<double>(k) / rate_hz;
    if (t > total + 1e-12) break;
    times.push_back(std::min(t, total));
  }
  if (total - times.back() > 1e-9) times.push_back(total);

  const PerWheel<Vec3> wheels = geom.WheelPositions();
  const double max_step = 1.0 / (rate_hz * kSubstepsPerSample);

  Simulation out;
  out.meters_per_tick = noise.tick_size > 0.0 ? noise.tick_size : kIdealTickSize;
  out.truth.reserve(times.size());
  out.log.reserve(times.size() * 10);

  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> unit(0.0, 1.0);

  Kinematics segment_start;
  double segment_t0 = 0.0;
  std::size_t next_time = 0;
  double previous_travel = 0.0;
  double direction = spec.segments.front().speed_start +
                             spec.segments.front().speed_end < 0.0
                         ? -1.0
                         : 1.0;

  for (std::size_t j = 0; j < spec.segments.size(); ++j) {
    const ManeuverSegment& seg = spec.segments[j];
    const bool last = j + 1 == spec.segments.size();
    const double segment_t1 = last ? total : segment_t0 + seg.duration;
    SegmentIntegrator integrator(segment_start, seg, wheels, max_step);

    while (next_time < times.size() &&
           (times[next_time] < segment_t1 || (last && times[next_time] <= total))) {
      const double t = times[next_time];
      const double tau = std::clamp(t - segment_t0, 0.0, seg.duration);
      const Kinematics k = integrator.At(tau);

      TruthSample truth;
      truth.t = t;
      truth.pose.position = Vec3(k.position.x(), k.position.y(), 0.0);
      truth.pose.theta = k.theta;
      const double v = seg.Speed(tau);
      const double kappa = seg.Curvature(tau);
      truth.yaw_rate = v * kappa;
      truth.roll = response.k_roll * v * v * kappa;
      truth.pitch = response.k_pitch * seg.Acceleration();
      truth.heave = response.heave;
      truth.heights = HeightsFor(response, geom, truth.roll, truth.pitch);
      out.truth.push_back(truth);

      if (next_time > 0) {
        const double moved = k.datum_travel - previous_travel;
        if (moved != 0.0) direction = moved < 0.0 ? -1.0 : 1.0;
      }
      previous_travel = k.datum_travel;

      const double yaw = truth.yaw_rate + noise.yaw_rate_sigma * unit(rng);
      out.log.push_back({t, Channel::kYawRate, yaw});
      for (Wheel w : kAllWheels) {
        const double ticks =
            std::floor(k.wheel_travel[w] / out.meters_per_tick);
        out.log.push_back({t, WheelChannel(w), ticks});
      }
      for (Wheel w : {Wheel::kFrontLeft, Wheel::kFrontRight, Wheel::kRearLeft,
                      Wheel::kRearRight}) {
        const double h = truth.heights[w] + noise.suspension_sigma * unit(rng);
        out.log.push_back({t, SuspensionChannel(w), h * 1e3});
      }
      out.log.push_back({t, Channel::kDirection, direction});
      ++next_time;
    }
    segment_start = integrator.At(seg.duration);
    segment_t0 = segment_t1;
  }
  return out;
}

absl::StatusOr<SuspensionDelta> TrueSuspensionDelta(
    const TruthSample& truth, const SuspensionResponse& response,
    const VehicleGeometry& geom) {
  absl::StatusOr<SuspensionPlane> reference =
      FitPlane(response.nominal_heights, geom);
  if (!reference.ok()) return reference.status();
  SuspensionPlane live = *reference;
  live.slope_x = reference->slope_x - std::tan(truth.pitch);
  live.slope_y = reference->slope_y + std::tan(truth.roll);
  live.normal = Vec3(-live.slope_x, -live.slope_y, 1.0).normalized();
  live.reference_point.z() -= truth.heave;
  return ComputeSuspensionDelta(*reference, live);
}

absl::StatusOr<SensorPose> GroundTruthSensorPose(
    const TruthSample& truth, const SensorExtrinsics& extrinsics,
    const SuspensionDelta& true_delta) {
  return SensorWorldPose(ComposeVehiclePose(extrinsics, true_delta),
                         truth.pose);
}

void WriteTruth(std::ostream& out, std::span<const TruthSample> truth) {
  out << "t,x,y,theta,phi,psi,heave\n";
  for (const TruthSample& s : truth) {
    out << Format17(s.t) << ',' << Format17(s.pose.position.x()) << ','
        << Format17(s.pose.position.y()) << ',' << Format17(s.pose.theta)
        << ',' << Format17(s.roll) << ',' << Format17(s.pitch) << ','
        << Format17(s.heave) << '\n';
  }
}

absl::StatusOr<Scenario> ParseScenario(std::string_view json_text) {
  Json root = Json::parse(json_text, nullptr, /*allow_exceptions=*/false,
                          /*ignore_comments=*/true);
  if (root.is_discarded() || !root.is_object()) {
    return JsonError("not a JSON object");
  }
  Scenario scenario;
  absl::StatusOr<double> rate = NumberAt(root, "rate_hz", kDefaultRateHz);
  if (!rate.ok()) return rate.status();
  scenario.rate_hz = *rate;

  if (root.contains("suspension")) {
    const Json& s = root.at("suspension");
    if (!s.is_object()) return JsonError("'suspension' must be an object");
    if (s.contains("nominal_heights")) {
      const Json& h = s.at("nominal_heights");
      if (h.is_number()) {
        const double v = h.get<double>();
        scenario.suspension.nominal_heights = {v, v, v, v};
      } else if (h.is_object()) {
        for (const char* key : {"fl", "fr", "rl", "rr"}) {
          if (!h.contains(key) || !h.at(key).is_number()) {
            return JsonError(absl::StrCat("nominal_heights needs '", key, "'"));
          }
        }
        scenario.suspension.nominal_heights = {
            .rl = h.at("rl").get<double>(), .rr = h.at("rr").get<double>(),
            .fl = h.at("fl").get<double>(), .fr = h.at("fr").get<double>()};
      } else {
        return JsonError("'nominal_heights' must be a number or object");
      }
    }
    for (auto [key, field] :
         {std::pair{"k_roll", &scenario.suspension.k_roll},
          std::pair{"k_pitch", &scenario.suspension.k_pitch},
          std::pair{"heave", &scenario.suspension.heave}}) {
      absl::StatusOr<double> v = NumberAt(s, key, *field);
      if (!v.ok()) return v.status();
      *field = *v;
    }
  }

  if (!root.contains("segments") || !root.at("segments").is_array()) {
    return JsonError("'segments' array required");
  }
  for (const Json& js : root.at("segments")) {
    if (!js.is_object()) return JsonError("segment must be an object");
    ManeuverSegment seg;
    if (!js.contains("duration")) return JsonError("segment needs 'duration'");
    absl::StatusOr<double> duration = NumberAt(js, "duration", 0.0);
    if (!duration.ok()) return duration.status();
    seg.duration = *duration;

    if (!js.contains("speed")) return JsonError("segment needs 'speed'");
    const Json& speed = js.at("speed");
    if (speed.is_number()) {
      seg.speed_start = seg.speed_end = speed.get<double>();
    } else if (speed.is_array() && speed.size() == 2 && speed[0].is_number() &&
               speed[1].is_number()) {
      seg.speed_start = speed[0].get<double>();
      seg.speed_end = speed[1].get<double>();
    } else {
      return JsonError("'speed' must be a number or [start, end]");
    }

    if (js.contains("curvature")) {
      const Json& k = js.at("curvature");
      if (k.is_number()) {
        seg.curvature = k.get<double>();
      } else if (k.is_object()) {
        seg.profile = CurvatureProfile::kSinusoidal;
        for (auto [key, field] :
             {std::pair{"amplitude", &seg.amplitude},
              std::pair{"frequency", &seg.angular_frequency},
              std::pair{"phase", &seg.phase}}) {
          absl::StatusOr<double> v = NumberAt(k, key, 0.0);
          if (!v.ok()) return v.status();
          *field = *v;
        }
      } else {
        return JsonError("'curvature' must be a number or object");
      }
    }
    absl::StatusOr<double> offset = NumberAt(js, "rear_offset", 0.0);
    if (!offset.ok()) return offset.status();
    seg.rear_icr_offset = *offset;
    scenario.maneuver.segments.push_back(seg);
  }
  return scenario;
}

absl::StatusOr<NoiseSpec> ParseNoise(std::string_view json_text) {
  Json root = Json::parse(json_text, nullptr, false, true);
  if (root.is_discarded() || !root.is_object()) {
    return absl::InvalidArgumentError("noise: not a JSON object");
  }
  NoiseSpec noise = NoiseSpec::Default();
  for (auto [key, field] : {std::pair{"yaw_rate_sigma", &noise.yaw_rate_sigma},
                            std::pair{"tick", &noise.tick_size},
                            std::pair{"suspension_sigma", &noise.suspension_sigma}}) {
    absl::StatusOr<double> v = NumberAt(root, key, *field);
    if (!v.ok()) return v.status();
    *field = *v;
  }
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned()) {
      return absl::InvalidArgumentError("noise: 'seed' must be unsigned");
    }
    noise.seed = root.at("seed").get<std::uint64_t>();
  }
  return noise;
}

}  // namespace odo25

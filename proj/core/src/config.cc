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

#include "odo25/config.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace odo25 {
namespace {

using Json = nlohmann::json;

absl::Status Bad(const std::string& what) {
  return absl::InvalidArgumentError(absl::StrCat("config: ", what));
}

}  // namespace

absl::StatusOr<OdometryConfig> ParseConfig(std::string_view json_text) {
  const Json root = Json::parse(json_text, nullptr, false, true);
  if (root.is_discarded() || !root.is_object()) return Bad("not a JSON object");

  OdometryConfig config;
  const std::pair<const char*, double*> numbers[] = {
      {"track_width", &config.geometry.track_width},
      {"wheelbase", &config.geometry.wheelbase},
      {"meters_per_tick", &config.meters_per_tick},
      {"straight_line_epsilon", &config.planar.straight_line_epsilon},
      {"spin_epsilon", &config.planar.spin_epsilon},
      {"max_wheel_step", &config.planar.max_wheel_step},
      {"max_sample_gap", &config.heading.max_gap},
      {"max_yaw_rate", &config.heading.max_yaw_rate},
      {"reference_window", &config.reference_window},
  };

  for (const auto& [key, value] : root.items()) {
    bool handled = false;
    for (const auto& [name, field] : numbers) {
      if (key != name) continue;
      if (!value.is_number()) return Bad(absl::StrCat("'", key, "' must be a number"));
      *field = value.get<double>();
      if (!std::isfinite(*field) || *field < 0.0) {
        return Bad(absl::StrCat("'", key, "' must be finite and >= 0"));
      }
      handled = true;
    }
    if (handled) continue;

    if (key == "rear_steering") {
      const std::string v = value.is_string() ? value.get<std::string>() : "";
      if (v == "fixed") {
        config.geometry.rear_steering = RearSteering::kFixed;
      } else if (v == "adaptive") {
        config.geometry.rear_steering = RearSteering::kAdaptive;
      } else {
        return Bad("'rear_steering' must be \"fixed\" or \"adaptive\"");
      }
    } else if (key == "alignment") {
      const std::string v = value.is_string() ? value.get<std::string>() : "";
      if (v == "linear") {
        config.alignment = AlignPolicy::kLinear;
      } else if (v == "nearest") {
        config.alignment = AlignPolicy::kNearest;
      } else {
        return Bad("'alignment' must be \"linear\" or \"nearest\"");
      }
    } else if (key == "tight_turn_fallback") {
      if (!value.is_boolean()) return Bad("'tight_turn_fallback' must be a boolean");
      config.planar.tight_turn_fallback = value.get<bool>();
    } else if (key == "height_smoothing") {
      if (!value.is_number_unsigned() || value.get<std::size_t>() == 0) {
        return Bad("'height_smoothing' must be a positive integer");
      }
      config.height_smoothing = value.get<std::size_t>();
    } else if (key == "suspension_offsets") {
      if (!value.is_object()) return Bad("'suspension_offsets' must be an object");
      for (const auto& [wheel, offset] : value.items()) {
        Vec2* target = nullptr;
        if (wheel == "fl") target = &config.geometry.suspension_offsets.fl;
        if (wheel == "fr") target = &config.geometry.suspension_offsets.fr;
        if (wheel == "rl") target = &config.geometry.suspension_offsets.rl;
        if (wheel == "rr") target = &config.geometry.suspension_offsets.rr;
        if (target == nullptr || !offset.is_array() || offset.size() != 2 ||
            !offset[0].is_number() || !offset[1].is_number()) {
          return Bad(absl::StrCat("bad suspension offset '", wheel, "'"));
        }
        *target = Vec2(offset[0].get<double>(), offset[1].get<double>());
      }
    } else {
      return Bad(absl::StrCat("unknown key '", key, "'"));
    }
  }

  if (absl::Status s = config.geometry.Validate(); !s.ok()) return s;
  if (!(config.meters_per_tick > 0.0)) return Bad("meters_per_tick must be > 0");
  return config;
}

std::string ConfigToJson(const OdometryConfig& config) {
  Json j;
  j["track_width"] = config.geometry.track_width;
  j["wheelbase"] = config.geometry.wheelbase;
  j["rear_steering"] =
      config.geometry.rear_steering == RearSteering::kFixed ? "fixed" : "adaptive";
  j["meters_per_tick"] = config.meters_per_tick;
  j["alignment"] = config.alignment == AlignPolicy::kLinear ? "linear" : "nearest";
  j["straight_line_epsilon"] = config.planar.straight_line_epsilon;
  j["spin_epsilon"] = config.planar.spin_epsilon;
  j["max_wheel_step"] = config.planar.max_wheel_step;
  j["max_sample_gap"] = config.heading.max_gap;
  j["max_yaw_rate"] = config.heading.max_yaw_rate;
  j["reference_window"] = config.reference_window;
  j["tight_turn_fallback"] = config.planar.tight_turn_fallback;
  j["height_smoothing"] = config.height_smoothing;
  return j.dump(2);
}

}  // namespace odo25

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

#include "odo25/evaluate.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "odo25/geometry.h"
#include "text_util.h"

namespace odo25 {
namespace {

using internal::Format17;
using internal::ParseDouble;
using internal::Split;
using internal::Trim;

constexpr double kChordLength = 1.0;

TrajectoryPoint InterpolateAt(const Trajectory& ref, double t) {
  auto it = std::lower_bound(
      ref.begin(), ref.end(), t,
      [](const TrajectoryPoint& p, double v) { return p.t < v; });
  if (it == ref.end()) return ref.back();
  if (it->t == t || it == ref.begin()) return *it;
  const TrajectoryPoint& a = *std::prev(it);
  const TrajectoryPoint& b = *it;
  const double u = (t - a.t) / (b.t - a.t);
  TrajectoryPoint out{.t = t,
                      .x = a.x + u * (b.x - a.x),
                      .y = a.y + u * (b.y - a.y),
                      .theta = std::nullopt};
  if (a.theta && b.theta) {
    out.theta = *a.theta + u * WrapAngle(*b.theta - *a.theta);
  }
  return out;
}

struct Anchor {
  double x0, y0, c, s;  // translation and rotation by -heading

  Vec2 Local(const TrajectoryPoint& p) const {
    const double dx = p.x - x0;
    const double dy = p.y - y0;
    return {c * dx + s * dy, -s * dx + c * dy};
  }
};

Anchor MakeAnchor(const TrajectoryPoint& start, double heading) {
  return {start.x, start.y, std::cos(heading), std::sin(heading)};
}

double ChordHeading(const Trajectory& t, std::size_t index) {
  return std::atan2(t[index].y - t[0].y, t[index].x - t[0].x);
}

}  // namespace

absl::StatusOr<TrajectoryMetrics> Compare(const Trajectory& estimated,
                                          const Trajectory& reference) {
  if (estimated.empty() || reference.empty()) {
    return absl::InvalidArgumentError("no temporal overlap: empty trajectory");
  }
  Trajectory est;
  Trajectory ref;
  for (const TrajectoryPoint& p : estimated) {
    if (p.t < reference.front().t || p.t > reference.back().t) continue;
    est.push_back(p);
    ref.push_back(InterpolateAt(reference, p.t));
  }
  if (est.empty()) return absl::InvalidArgumentError("no temporal overlap");

  const bool have_heading =
      std::all_of(est.begin(), est.end(), [](auto& p) { return p.theta.has_value(); }) &&
      std::all_of(ref.begin(), ref.end(), [](auto& p) { return p.theta.has_value(); });

  double est_heading = 0.0;
  double ref_heading = 0.0;
  if (have_heading) {
    est_heading = *est.front().theta;
    ref_heading = *ref.front().theta;
  } else {
    for (std::size_t k = 1; k < ref.size(); ++k) {
      if (std::hypot(ref[k].x - ref[0].x, ref[k].y - ref[0].y) >= kChordLength) {
        est_heading = ChordHeading(est, k);
        ref_heading = ChordHeading(ref, k);
        break;
      }
    }
  }
  const Anchor est_anchor = MakeAnchor(est.front(), est_heading);
  const Anchor ref_anchor = MakeAnchor(ref.front(), ref_heading);

  TrajectoryMetrics m;
  m.compared_samples = est.size();
  double sum = 0.0;
  for (std::size_t k = 0; k < est.size(); ++k) {
    const double e = (est_anchor.Local(est[k]) - ref_anchor.Local(ref[k])).norm();
    if (k > 0) {
      sum += e;
      m.path_length += std::hypot(ref[k].x - ref[k - 1].x, ref[k].y - ref[k - 1].y);
    }
    m.max_position_error = std::max(m.max_position_error, e);
    m.endpoint_drift = e;
  }
  m.mean_position_error = est.size() > 1 ? sum / (est.size() - 1) : 0.0;
  if (have_heading) {
    m.final_heading_error = WrapAngle((*est.back().theta - est_heading) -
                                      (*ref.back().theta - ref_heading));
  }
  return m;
}

absl::StatusOr<Trajectory> ReadTrajectoryCsv(std::istream& in) {
  std::string line;
  int line_number = 0;
  int col_t = -1, col_x = -1, col_y = -1, col_theta = -1;
  std::size_t columns = 0;
  Trajectory out;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view text = Trim(line);
    if (text.empty() || text.front() == '#') continue;
    std::vector<std::string_view> fields = Split(text, ',');
    if (col_t < 0) {
      columns = fields.size();
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const std::string_view name = Trim(fields[i]);
        if (name == "t") col_t = static_cast<int>(i);
        if (name == "x") col_x = static_cast<int>(i);
        if (name == "y") col_y = static_cast<int>(i);
        if (name == "theta") col_theta = static_cast<int>(i);
      }
      if (col_t < 0 || col_x < 0 || col_y < 0) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line ", line_number, ": header must name t, x and y columns"));
      }
      continue;
    }
    if (fields.size() != columns) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": expected ", columns, " fields"));
    }
    const auto number = [&](int col, double& v) {
      return ParseDouble(fields[col], v);
    };
    TrajectoryPoint p;
    double theta = 0.0;
    if (!number(col_t, p.t) || !number(col_x, p.x) || !number(col_y, p.y) ||
        (col_theta >= 0 && !number(col_theta, theta))) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": malformed number"));
    }
    if (col_theta >= 0) p.theta = theta;
    if (!out.empty() && p.t <= out.back().t) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": timestamps must increase"));
    }
    out.push_back(p);
  }
  return out;
}

void WriteTrajectoryCsv(std::ostream& out, const Trajectory& trajectory) {
  out << "t,x,y,theta\n";
  for (const TrajectoryPoint& p : trajectory) {
    out << Format17(p.t) << ',' << Format17(p.x) << ',' << Format17(p.y) << ','
        << Format17(p.theta.value_or(0.0)) << '\n';
  }
}

void WriteMetrics(std::ostream& out, const TrajectoryMetrics& m) {
  out << "endpoint_drift=" << Format17(m.endpoint_drift) << '\n'
      << "mean_position_error=" << Format17(m.mean_position_error) << '\n'
      << "max_position_error=" << Format17(m.max_position_error) << '\n'
      << "final_heading_error="
      << (m.final_heading_error ? Format17(*m.final_heading_error) : "absent")
      << '\n'
      << "path_length=" << Format17(m.path_length) << '\n'
      << "compared_samples=" << m.compared_samples << '\n';
}

void WriteOverlaySvg(std::ostream& out, const Trajectory& estimated,
                     const Trajectory& reference) {
  constexpr double kSize = 800.0;
  constexpr double kMargin = 20.0;
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x, max_x = -min_x, max_y = -min_x;
  for (const Trajectory* t : {&estimated, &reference}) {
    for (const TrajectoryPoint& p : *t) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  if (!std::isfinite(min_x)) min_x = max_x = min_y = max_y = 0.0;
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double scale = (kSize - 2 * kMargin) / span;
  char buf[64];
  const auto point = [&](const TrajectoryPoint& p) {
    // SVG y grows downwards.
    std::snprintf(buf, sizeof(buf), "%.3f,%.3f ",
                  kMargin + (p.x - min_x) * scale,
                  kSize - kMargin - (p.y - min_y) * scale);
    return std::string(buf);
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"800\" viewBox=\"0 0 800 800\">\n"
      << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (auto [t, colour] : {std::pair{&reference, "blue"},
                           std::pair{&estimated, "red"}}) {
    out << "<polyline fill=\"none\" stroke=\"" << colour
        << "\" stroke-width=\"1.5\" points=\"";
    for (const TrajectoryPoint& p : *t) out << point(p);
    out << "\"/>\n";
  }
  const Trajectory& first = reference.empty() ? estimated : reference;
  if (!first.empty()) {
    const std::string start = point(first.front());
    const auto comma = start.find(',');
    out << "<circle cx=\"" << start.substr(0, comma) << "\" cy=\""
        << start.substr(comma + 1, start.size() - comma - 2)
        << "\" r=\"5\" fill=\"green\"/>\n";
  }
  out << "<text x=\"10\" y=\"16\" font-size=\"12\">estimate (red) vs "
         "reference (blue)</text>\n</svg>\n";
}

double PearsonCorrelation(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::min(a.size(), b.size());
  if (n < 2) return 0.0;
  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a <= 0.0 || var_b <= 0.0) return 0.0;
  return cov / std::sqrt(var_a * var_b);
}

}  // namespace odo25

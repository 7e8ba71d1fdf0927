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

#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "odo25/config.h"
#include "odo25/evaluate.h"
#include "odo25/extrinsics.h"
#include "odo25/ingest.h"
#include "odo25/pipeline.h"
#include "odo25/simulator.h"

namespace odo25::cli {
namespace {

namespace fs = std::filesystem;

std::string G17(double v) { return fmt::format("{:.17g}", v); }

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Temp file plus rename.
absl::Status WriteFileAtomic(const fs::path& path, const std::string& contents) {
  const fs::path tmp = fs::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", tmp.string()));
    out << contents;
    if (!out.flush()) return absl::DataLossError(absl::StrCat("short write to ", tmp.string()));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    return absl::InternalError(absl::StrCat("cannot rename ", tmp.string(), ": ", ec.message()));
  }
  spdlog::info("wrote {}", path.string());
  return absl::OkStatus();
}

absl::Status PrepareOutDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    return absl::PermissionDeniedError(absl::StrCat("cannot create output directory ", dir.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<OdometryConfig> LoadConfig(const std::string& path) {
  if (path.empty()) return OdometryConfig{};
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseConfig(*text);
}

absl::StatusOr<CalibrationSet> LoadCalibration(const std::string& path,
                                               const VehicleGeometry& geom) {
  if (path.empty()) return CalibrationSet{};
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  absl::StatusOr<CalibrationSet> c = ReadCalibration(in, geom);
  if (!c.ok()) return absl::Status(c.status().code(), absl::StrCat(path, ": ", c.status().message()));
  return c;
}

void AppendSensorRow(std::string& out, double t, const SensorPose& pose) {
  out += G17(t);
  out += ',';
  out += pose.sensor_id;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out += ',';
      out += G17(pose.rotation(r, c));
    }
  }
  for (int i = 0; i < 3; ++i) {
    out += ',';
    out += G17(pose.position[i]);
  }
  out += '\n';
}

constexpr char kSensorHeader[] =
    "t,sensor_id,r00,r01,r02,r10,r11,r12,r20,r21,r22,x,y,z\n";

struct SimulateArgs {
  std::string maneuver;
  std::string config;
  std::string noise;
  std::optional<std::uint64_t> seed;
  std::string calibration;
  std::string out = ".";
};

absl::Status RunSimulate(const SimulateArgs& args, std::ostream& out) {
  absl::StatusOr<std::string> text = ReadFile(args.maneuver);
  if (!text.ok()) return text.status();
  absl::StatusOr<Scenario> scenario = ParseScenario(*text);
  if (!scenario.ok()) return scenario.status();
  absl::StatusOr<OdometryConfig> config = LoadConfig(args.config);
  if (!config.ok()) return config.status();

  NoiseSpec noise;
  if (!args.noise.empty()) {
    absl::StatusOr<std::string> noise_text = ReadFile(args.noise);
    if (!noise_text.ok()) return noise_text.status();
    absl::StatusOr<NoiseSpec> parsed = ParseNoise(*noise_text);
    if (!parsed.ok()) return parsed.status();
    noise = *parsed;
  }
  if (args.seed) noise.seed = *args.seed;

  absl::StatusOr<CalibrationSet> calibration =
      LoadCalibration(args.calibration, config->geometry);
  if (!calibration.ok()) return calibration.status();

  absl::StatusOr<Simulation> sim =
      Simulate(scenario->maneuver, config->geometry, scenario->suspension,
               noise, scenario->rate_hz);
  if (!sim.ok()) return sim.status();
  spdlog::debug("simulated {} samples, seed {}", sim->truth.size(), noise.seed);

  const fs::path dir(args.out);
  if (absl::Status s = PrepareOutDir(dir); !s.ok()) return s;

  std::ostringstream log;
  WriteLog(log, sim->log, sim->meters_per_tick);
  if (absl::Status s = WriteFileAtomic(dir / "log.csv", log.str()); !s.ok()) return s;
  std::ostringstream truth;
  WriteTruth(truth, sim->truth);
  if (absl::Status s = WriteFileAtomic(dir / "truth.csv", truth.str()); !s.ok()) return s;

  if (!calibration->sensors.empty()) {
    std::string poses = kSensorHeader;
    for (const TruthSample& sample : sim->truth) {
      absl::StatusOr<SuspensionDelta> delta =
          TrueSuspensionDelta(sample, scenario->suspension, config->geometry);
      if (!delta.ok()) return delta.status();
      for (const SensorExtrinsics& ext : calibration->sensors) {
        absl::StatusOr<SensorPose> pose = GroundTruthSensorPose(sample, ext, *delta);
        if (!pose.ok()) return pose.status();
        AppendSensorRow(poses, sample.t, *pose);
      }
    }
    if (absl::Status s = WriteFileAtomic(dir / "truth_sensor_poses.csv", poses); !s.ok()) {
      return s;
    }
  }
  out << "samples=" << sim->truth.size() << '\n';
  return absl::OkStatus();
}

struct EstimateArgs {
  std::string log;
  std::string config;
  std::string calibration;
  bool planar_only = false;
  std::string out = ".";
};

absl::Status RunEstimate(const EstimateArgs& args, std::ostream& out) {
  absl::StatusOr<OdometryConfig> config = LoadConfig(args.config);
  if (!config.ok()) return config.status();
  absl::StatusOr<CalibrationSet> calibration =
      LoadCalibration(args.calibration, config->geometry);
  if (!calibration.ok()) return calibration.status();

  std::ifstream in(args.log);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", args.log));
  absl::StatusOr<LogStreams> streams = ParseLog(in, config->meters_per_tick);
  if (!streams.ok()) {
    return absl::Status(streams.status().code(),
                        absl::StrCat(args.log, ": ", streams.status().message()));
  }
  absl::StatusOr<std::vector<OdometrySample>> samples =
      Align(*streams, {.policy = config->alignment,
                       .require_suspension = !args.planar_only});
  if (!samples.ok()) return samples.status();
  spdlog::debug("aligned {} samples", samples->size());

  absl::StatusOr<std::vector<PoseRecord>> poses =
      RunPipeline(*samples, *config, args.planar_only, *calibration);
  if (!poses.ok()) return poses.status();

  const fs::path dir(args.out);
  if (absl::Status s = PrepareOutDir(dir); !s.ok()) return s;

  std::string trajectory = "t,x,y,theta\n";
  std::string sensors = kSensorHeader;
  std::string suspension = "t,roll,pitch,heave\n";
  for (const PoseRecord& r : *poses) {
    trajectory += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", r.t,
                              r.planar.position.x(), r.planar.position.y(),
                              r.planar.theta);
    for (const SensorPose& p : r.sensors) AppendSensorRow(sensors, r.t, p);
    if (r.attitude) {
      suspension += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", r.t,
                                r.attitude->roll, r.attitude->pitch,
                                r.attitude->heave);
    }
  }
  if (absl::Status s = WriteFileAtomic(dir / "trajectory.csv", trajectory); !s.ok()) return s;
  if (absl::Status s = WriteFileAtomic(dir / "sensor_poses.csv", sensors); !s.ok()) return s;
  if (!args.planar_only) {
    if (absl::Status s = WriteFileAtomic(dir / "suspension.csv", suspension); !s.ok()) return s;
  }
  out << "samples=" << poses->size() << '\n';
  return absl::OkStatus();
}

struct EvaluateArgs {
  std::string estimated;
  std::string reference;
  std::string out = ".";
};

absl::StatusOr<Trajectory> LoadTrajectory(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  absl::StatusOr<Trajectory> t = ReadTrajectoryCsv(in);
  if (!t.ok()) return absl::Status(t.status().code(), absl::StrCat(path, ": ", t.status().message()));
  return t;
}

absl::Status RunEvaluate(const EvaluateArgs& args, std::ostream& out) {
  absl::StatusOr<Trajectory> est = LoadTrajectory(args.estimated);
  if (!est.ok()) return est.status();
  absl::StatusOr<Trajectory> ref = LoadTrajectory(args.reference);
  if (!ref.ok()) return ref.status();
  absl::StatusOr<TrajectoryMetrics> metrics = Compare(*est, *ref);
  if (!metrics.ok()) return metrics.status();

  const fs::path dir(args.out);
  if (absl::Status s = PrepareOutDir(dir); !s.ok()) return s;
  std::ostringstream text;
  WriteMetrics(text, *metrics);
  std::ostringstream svg;
  WriteOverlaySvg(svg, *est, *ref);
  if (absl::Status s = WriteFileAtomic(dir / "metrics.txt", text.str()); !s.ok()) return s;
  if (absl::Status s = WriteFileAtomic(dir / "overlay.svg", svg.str()); !s.ok()) return s;
  out << text.str();
  return absl::OkStatus();
}

void ConfigureLogging() {
  auto logger = spdlog::stderr_logger_st("odo25");
  logger->set_pattern("odo25 [%l] %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("ODO25_LOG_LEVEL"); env != nullptr && *env) {
    level = spdlog::level::from_str(env);
  }
  logger->set_level(level);
  spdlog::set_default_logger(logger);
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  if (spdlog::get("odo25") == nullptr) ConfigureLogging();

  CLI::App app{"2.5D wheel odometry: simulate, estimate and evaluate", "odo25"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand("simulate", "Simulate a sensor log and ground truth");
  simulate->add_option("--maneuver", sim_args.maneuver, "Maneuver script (JSON)")
      ->required()->check(CLI::ExistingFile);
  simulate->add_option("--config", sim_args.config, "Vehicle config (JSON)")
      ->check(CLI::ExistingFile);
  simulate->add_option("--noise", sim_args.noise, "Noise spec (JSON); noise-free if omitted")
      ->check(CLI::ExistingFile);
  simulate->add_option("--seed", sim_args.seed, "Overrides the noise seed");
  simulate->add_option("--calibration", sim_args.calibration,
                       "Sensor extrinsics; also writes truth_sensor_poses.csv")
      ->check(CLI::ExistingFile);
  simulate->add_option("--out", sim_args.out, "Output directory")->capture_default_str();

  EstimateArgs est_args;
  CLI::App* estimate = app.add_subcommand("estimate", "Run odometry on a sensor log");
  estimate->add_option("log", est_args.log, "Sensor log")->required()->check(CLI::ExistingFile);
  estimate->add_option("--config", est_args.config, "Vehicle config (JSON)")
      ->check(CLI::ExistingFile);
  estimate->add_option("--calibration", est_args.calibration, "Sensor extrinsics")
      ->check(CLI::ExistingFile);
  estimate->add_flag("--planar-only", est_args.planar_only,
                     "Ignore suspension heights; 2D odometry only");
  estimate->add_option("--out", est_args.out, "Output directory")->capture_default_str();

  EvaluateArgs eval_args;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Compare a trajectory against a reference");
  evaluate->add_option("estimated", eval_args.estimated, "Estimated trajectory CSV")
      ->required()->check(CLI::ExistingFile);
  evaluate->add_option("reference", eval_args.reference, "Reference trajectory CSV")
      ->required()->check(CLI::ExistingFile);
  evaluate->add_option("--out", eval_args.out, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  absl::Status status;
  if (*simulate) status = RunSimulate(sim_args, out);
  if (*estimate) status = RunEstimate(est_args, out);
  if (*evaluate) status = RunEvaluate(eval_args, out);
  if (!status.ok()) {
    err << "odo25: " << status.message() << '\n';
    spdlog::debug("status code {}", static_cast<int>(status.code()));
    return 1;
  }
  return 0;
}

}  // namespace odo25::cli

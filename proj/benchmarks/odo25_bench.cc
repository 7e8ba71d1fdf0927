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

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <benchmark/benchmark.h>

#include "odo25/pipeline.h"
#include "odo25/planar.h"
#include "odo25/simulator.h"
#include "odo25/suspension.h"

namespace odo25 {
namespace {

const VehicleGeometry kGeom{};

// Wheel travel for a rotation of `dtheta` about (cx, cy).
WheelDistances ArcDistances(double cx, double cy, double dtheta) {
  WheelDistances d;
  for (Wheel w : kAllWheels) {
    const Vec3 p = kGeom.WheelPosition(w);
    d[w] = std::copysign(std::hypot(p.x() - cx, p.y() - cy), cy) * dtheta;
  }
  return d;
}

std::vector<OdometrySample> SimulatedSlalom() {
  ManeuverSpec spec;
  spec.segments.push_back({.duration = 2.0});
  spec.segments.push_back({.duration = 60.0,
                           .speed_start = 3.0,
                           .speed_end = 3.0,
                           .profile = CurvatureProfile::kSinusoidal,
                           .amplitude = 0.1,
                           .angular_frequency = 0.5});
  SuspensionResponse response;
  response.k_roll = 0.01;
  response.k_pitch = 0.01;
  const Simulation sim = *Simulate(spec, kGeom, response, NoiseSpec::Default());
  std::stringstream log;
  WriteLog(log, sim.log, sim.meters_per_tick);
  return *Align(*ParseLog(log, sim.meters_per_tick), {});
}

void BM_PlanarStepFixed(benchmark::State& state) {
  const WheelDistances d = ArcDistances(0.0, 12.0, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(EstimatePlanarStep(d, 0.01, kGeom));
  }
}
BENCHMARK(BM_PlanarStepFixed);

void BM_AdaptiveIcrFit(benchmark::State& state) {
  const WheelRadii r = ComputeWheelRadii(ArcDistances(1.0, 8.0, 0.02), 0.02);
  const PerWheel<Vec3> wheels = kGeom.WheelPositions();
  const IcrEstimate init{.centre = Vec3(0, 8, 0), .datum_radius = 8.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitIcrAdaptiveRear(r, wheels, init));
  }
}
BENCHMARK(BM_AdaptiveIcrFit);

void BM_PlaneFitAndDelta(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> h(0.28, 0.34);
  const SuspensionPlane ref = *FitPlane({0.31, 0.31, 0.31, 0.31}, kGeom);
  std::vector<SuspensionHeights> heights(1024);
  for (SuspensionHeights& s : heights) s = {h(rng), h(rng), h(rng), h(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    const SuspensionPlane live = *FitPlane(heights[i++ & 1023], kGeom);
    benchmark::DoNotOptimize(ComputeSuspensionDelta(ref, live));
  }
}
BENCHMARK(BM_PlaneFitAndDelta);

void BM_PipelineStream(benchmark::State& state) {
  const std::vector<OdometrySample> samples = SimulatedSlalom();
  const bool planar_only = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunPipeline(samples, {}, planar_only, {}));
  }
  state.SetItemsProcessed(state.iterations() * samples.size());
}
BENCHMARK(BM_PipelineStream)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace odo25

BENCHMARK_MAIN();

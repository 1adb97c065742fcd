/*
 * Copyright 2026 The Evermap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "evermap/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "evermap/error.hpp"
#include "evermap/format.hpp"
#include "evermap/random.hpp"

namespace evermap {
namespace {

constexpr std::uint64_t kSensorStream = 1;

}  // namespace

SimulationResult simulate(const RouteConfig& route, const RobotConfig& robot,
                          const SceneConfig& scene, const SimulationOptions& options) {
  validate(robot.profile);
  validate(robot.drum);
  validate(scene.sensor);
  if (!(route.route.total_length() > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "route has zero length");
  }
  if (!(options.sample_rate_hz > 0.0 && options.sample_rate_hz <= 1000.0)) {
    throw Error(ErrorKind::kInvalidArgument, "sample rate must be in (0, 1000] Hz");
  }
  if (!(options.crank_speed_mps > 0.0) || !std::isfinite(options.crank_speed_mps)) {
    throw Error(ErrorKind::kInvalidArgument, "crank speed must be positive");
  }
  for (const Source& src : scene.sources) validate(src, route.route);

  SimulationResult result;
  result.verdict = can_traverse(robot.profile, robot.rules, route.route);
  double reach = max_extension(robot.profile, route.route);
  if (!result.verdict.feasible) reach = std::min(reach, result.verdict.blocker->s);
  result.reachable_extension = reach;

  std::vector<CrankLeg> legs = options.schedule;
  if (legs.empty()) legs.push_back({reach, options.crank_speed_mps});
  for (const CrankLeg& leg : legs) {
    if (!(leg.tip_speed > 0.0) || !std::isfinite(leg.target_extension)) {
      throw Error(ErrorKind::kInvalidArgument, "invalid crank schedule leg");
    }
  }

  Trace& trace = result.trace;
  trace.set_meta("robot", robot.name);
  trace.set_meta("drum", robot.name + ".drum");
  trace.set_meta("route", route.name);
  trace.set_meta("scene", scene.name);
  trace.set_meta("seed", std::to_string(options.seed));
  trace.set_meta("sample_rate_hz", format_number(options.sample_rate_hz));
  trace.set_meta("crank_speed_mps", format_number(options.crank_speed_mps));

  RandomStream rng = RandomStream(options.seed).split(kSensorStream);
  const double dt = 1.0 / options.sample_rate_hz;
  std::int64_t index = 0;
  auto record = [&](double extension) {
    const double sensor_s = sensor_position(robot.profile, extension);
    Sample sample;
    sample.t_ms = static_cast<std::int64_t>(std::llround(static_cast<double>(index) * dt * 1000.0));
    sample.encoder_ticks = ticks_from_extension(robot.drum, extension);
    sample.sensor_raw = reading(scene.sources, sensor_s, route.route, scene.sensor,
                                scene.mu, rng);
    trace.append(sample);
    ++index;
  };

  double x = 0.0;
  record(x);
  for (const CrankLeg& leg : legs) {
    const double target = std::clamp(leg.target_extension, 0.0, reach);
    const double step = leg.tip_speed * dt;
    const double start = x;
    const auto n = static_cast<std::int64_t>(std::ceil(std::abs(target - start) / step - 1e-9));
    const double dir = target >= start ? 1.0 : -1.0;
    for (std::int64_t i = 1; i <= n; ++i) {
      x = i == n ? target : start + dir * static_cast<double>(i) * step;
      record(x);
    }
  }
  return result;
}

}  // namespace evermap

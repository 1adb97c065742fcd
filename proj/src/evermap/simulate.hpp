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

#ifndef EVERMAP_SIMULATE_HPP_
#define EVERMAP_SIMULATE_HPP_

#include <cstdint>
#include <vector>

#include "evermap/acquisition.hpp"
#include "evermap/config.hpp"
#include "evermap/feasibility.hpp"

namespace evermap {

// One leg of the crank schedule: drive the tip to `target_extension` at
// `tip_speed` (always positive; direction follows from the target).
struct CrankLeg {
  double target_extension = 0.0;
  double tip_speed = 0.05;
};

struct SimulationOptions {
  std::uint64_t seed = 0;
  double sample_rate_hz = 100.0;
  double crank_speed_mps = 0.05;
  // Empty: one extending leg up to the reachable extension at crank_speed.
  std::vector<CrankLeg> schedule;
};

struct SimulationResult {
  Trace trace;
  Verdict verdict;
  double reachable_extension = 0.0;
};

// Synthesises what the logging chain would record. When the robot cannot
// traverse the route the trace stops with the tip at the blocker.
SimulationResult simulate(const RouteConfig& route, const RobotConfig& robot,
                          const SceneConfig& scene, const SimulationOptions& options);

}  // namespace evermap

#endif  // EVERMAP_SIMULATE_HPP_

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

#ifndef EVERMAP_KINEMATICS_HPP_
#define EVERMAP_KINEMATICS_HPP_

#include <cstdint>
#include <string>

#include "evermap/route.hpp"

namespace evermap {

enum class Material { kFabric, kPlastic };

std::string to_string(Material material);
Material material_from_string(const std::string& name);

struct RobotProfile {
  double sleeve_length = 5.0;   // total sleeve material, m
  double flat_diameter = 0.06;  // inflated diameter, m
  Material material = Material::kFabric;
};

// Tendon drum at the base. The tendon runs to the sealed end, so it pays out
// `payout_ratio` metres per metre of tip growth.
struct DrumConfig {
  double drum_radius = 0.02;
  std::int64_t ticks_per_rev = 1024;
  double payout_ratio = 2.0;
};

struct MaterialBudget {
  double outer = 0.0;  // everted wall, stationary against the pipe
  double inner = 0.0;  // inverted material running back from the tip
  double tail = 0.0;   // material still outside the pipe entrance
};

struct KinematicState {
  double extension = 0.0;
  std::int64_t encoder_ticks = 0;
  double sensor_s = 0.0;
};

void validate(const RobotProfile& profile);
void validate(const DrumConfig& drum);

// Tip extension implied by an encoder count. Negative ticks are passed
// through; clamping is left to the caller.
double extension_from_ticks(const DrumConfig& drum, std::int64_t ticks);

// Nearest encoder count for a given tip extension (inverse of the above,
// rounded half away from zero).
std::int64_t ticks_from_extension(const DrumConfig& drum, double extension);

// Extension represented by a single encoder tick.
double extension_per_tick(const DrumConfig& drum);

// Arc position of the sealed end (and the sensor riding on it). Negative
// while the sealed end is still outside the pipe entrance.
double sensor_position(const RobotProfile& profile, double extension);

MaterialBudget material_budget(const RobotProfile& profile, double extension);

KinematicState kinematic_state(const RobotProfile& profile,
                               const DrumConfig& drum, std::int64_t ticks);

double max_extension(const RobotProfile& profile, const PipeRoute& route);

// Element-by-element simulation of the sleeve being fed around the tip.
// Agrees with sensor_position() to within sleeve_length / n_elements.
double discrete_material_oracle(const RobotProfile& profile, double extension,
                                int n_elements);

}  // namespace evermap

#endif  // EVERMAP_KINEMATICS_HPP_

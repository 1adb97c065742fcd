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

#include "evermap/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include "evermap/error.hpp"

namespace evermap {
namespace {

void check_extension(const RobotProfile& profile, double extension) {
  if (!(extension >= 0.0 && extension <= profile.sleeve_length)) {
    std::ostringstream os;
    os << "extension " << extension << " outside [0, " << profile.sleeve_length
       << "]";
    throw Error(ErrorKind::kOutOfRange, os.str());
  }
}

}  // namespace

std::string to_string(Material material) {
  return material == Material::kFabric ? "fabric" : "plastic";
}

Material material_from_string(const std::string& name) {
  if (name == "fabric") return Material::kFabric;
  if (name == "plastic") return Material::kPlastic;
  throw Error(ErrorKind::kInvalidArgument, "unknown material '" + name + "'");
}

void validate(const RobotProfile& profile) {
  if (!(profile.sleeve_length > 0.0) || !std::isfinite(profile.sleeve_length)) {
    throw Error(ErrorKind::kInvalidArgument, "sleeve length must be positive");
  }
  if (!(profile.flat_diameter > 0.0) || !std::isfinite(profile.flat_diameter)) {
    throw Error(ErrorKind::kInvalidArgument, "diameter must be positive");
  }
}

void validate(const DrumConfig& drum) {
  if (!(drum.drum_radius > 0.0) || !std::isfinite(drum.drum_radius)) {
    throw Error(ErrorKind::kInvalidArgument, "drum radius must be positive");
  }
  if (drum.ticks_per_rev < 1) {
    throw Error(ErrorKind::kInvalidArgument, "ticks per revolution must be >= 1");
  }
  if (!(drum.payout_ratio > 0.0) || !std::isfinite(drum.payout_ratio)) {
    throw Error(ErrorKind::kInvalidArgument, "payout ratio must be positive");
  }
}

double extension_from_ticks(const DrumConfig& drum, std::int64_t ticks) {
  const double tendon = 2.0 * std::numbers::pi * drum.drum_radius *
                        static_cast<double>(ticks) /
                        static_cast<double>(drum.ticks_per_rev);
  return tendon / drum.payout_ratio;
}

double extension_per_tick(const DrumConfig& drum) {
  return extension_from_ticks(drum, 1);
}

std::int64_t ticks_from_extension(const DrumConfig& drum, double extension) {
  return static_cast<std::int64_t>(std::round(extension / extension_per_tick(drum)));
}

double sensor_position(const RobotProfile& profile, double extension) {
  check_extension(profile, extension);
  return 2.0 * extension - profile.sleeve_length;
}

MaterialBudget material_budget(const RobotProfile& profile, double extension) {
  check_extension(profile, extension);
  const double total = profile.sleeve_length;
  MaterialBudget b;
  b.outer = extension;
  b.inner = std::min(extension, total - extension);
  // Tail takes the remainder so the three parts sum to the sleeve exactly.
  b.tail = total - b.outer - b.inner;
  return b;
}

KinematicState kinematic_state(const RobotProfile& profile,
                               const DrumConfig& drum, std::int64_t ticks) {
  KinematicState st;
  st.encoder_ticks = ticks;
  st.extension = extension_from_ticks(drum, ticks);
  st.sensor_s = sensor_position(profile, st.extension);
  return st;
}

double max_extension(const RobotProfile& profile, const PipeRoute& route) {
  return std::min(profile.sleeve_length, route.total_length());
}

double discrete_material_oracle(const RobotProfile& profile, double extension,
                                int n_elements) {
  if (n_elements < 1) {
    throw Error(ErrorKind::kInvalidArgument, "oracle needs at least one element");
  }
  const double h = profile.sleeve_length / n_elements;
  const long steps = std::clamp<long>(std::lround(extension / h), 0, n_elements);

  // Element 0 is fixed to the base; element n-1 carries the sealed end. All
  // material starts inverted, queued from the tip backwards.
  std::deque<int> inverted;
  for (int i = 0; i < n_elements; ++i) inverted.push_back(i);
  std::vector<int> everted;
  everted.reserve(static_cast<std::size_t>(n_elements));

  double tip = 0.0;
  for (long step = 0; step < steps; ++step) {
    everted.push_back(inverted.front());
    inverted.pop_front();
    tip += h;
  }

  // Walk the inverted chain from the tip back towards (and past) the base.
  double pos = tip;
  for (std::size_t i = 0; i < inverted.size(); ++i) pos -= h;
  return pos;
}

}  // namespace evermap

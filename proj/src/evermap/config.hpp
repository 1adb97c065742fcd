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

#ifndef EVERMAP_CONFIG_HPP_
#define EVERMAP_CONFIG_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "evermap/feasibility.hpp"
#include "evermap/kinematics.hpp"
#include "evermap/route.hpp"
#include "evermap/sensor.hpp"

namespace evermap {

// Sectioned key-value text:
//
//   # comment
//   [segment]
//   kind = straight
//   length_m = 0.5
//
// Sections may repeat. Keys outside a section, duplicate keys within a
// section and unknown keys are errors; every error carries its line number.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(std::string_view key) const;
};

struct ConfigFile {
  std::string source;
  std::vector<ConfigSection> sections;
};

ConfigFile parse_config(std::string_view text, const std::string& source);
std::string read_text_file(const std::string& path);

struct RouteConfig {
  std::string name;
  PipeRoute route;
};

struct RobotConfig {
  std::string name;
  RobotProfile profile;
  DrumConfig drum;
  MaterialRules rules;
};

struct SceneConfig {
  std::string name;
  std::vector<Source> sources;
  SensorConfig sensor;
  double mu = 0.0;
};

// `[route]` (optional: name) followed by one `[segment]` per segment with
// kind, length_m, bore_m, bend_radius_m, bend_angle_deg, roll_deg.
RouteConfig parse_route_config(std::string_view text, const std::string& source);

// `[robot]`: name, sleeve_length_m, flat_diameter_m, material;
// `[drum]`: drum_radius_m, ticks_per_rev, payout_ratio;
// `[rules]`: max_sharp_bend_deg, min_bore_ratio, notes. Rules not given
// fall back to the material defaults.
RobotConfig parse_robot_config(std::string_view text, const std::string& source);

// `[source]` blocks: s_m, strength, kind, lateral_offset_m;
// `[sensor]`: kind, baseline, sigma, adc_bits, adc_min, adc_max, dwell_s,
// distance_floor_m, mu_per_m. Source positions are checked against a route
// only when one is supplied.
SceneConfig parse_scene_config(std::string_view text, const std::string& source,
                               const PipeRoute* route = nullptr);

RouteConfig load_route_config(const std::string& path);
RobotConfig load_robot_config(const std::string& path);
SceneConfig load_scene_config(const std::string& path,
                              const PipeRoute* route = nullptr);

}  // namespace evermap

#endif  // EVERMAP_CONFIG_HPP_

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

#include "evermap/config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>

#include "evermap/error.hpp"

namespace evermap {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// Typed access to one section; rejects keys the caller never asked about.
class SectionReader {
 public:
  SectionReader(const ConfigFile& file, const ConfigSection& section,
                std::initializer_list<std::string_view> allowed)
      : file_(file), section_(section) {
    const std::set<std::string_view> ok(allowed);
    for (const ConfigEntry& e : section.entries) {
      if (!ok.count(e.key)) {
        fail(e.line, "unknown key '" + e.key + "' in [" + section.name + "]");
      }
    }
  }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ParseError(file_.source, line, msg);
  }

  int line() const { return section_.line; }

  std::optional<std::string> text(std::string_view key) const {
    if (const ConfigEntry* e = section_.find(key)) return e->value;
    return std::nullopt;
  }

  std::optional<double> number(std::string_view key) const {
    const ConfigEntry* e = section_.find(key);
    if (e == nullptr) return std::nullopt;
    double v = 0.0;
    const char* end = e->value.data() + e->value.size();
    const auto [ptr, ec] = std::from_chars(e->value.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      fail(e->line, "'" + e->key + "' is not a number: '" + e->value + "'");
    }
    return v;
  }

  std::optional<long long> integer(std::string_view key) const {
    const ConfigEntry* e = section_.find(key);
    if (e == nullptr) return std::nullopt;
    long long v = 0;
    const char* end = e->value.data() + e->value.size();
    const auto [ptr, ec] = std::from_chars(e->value.data(), end, v);
    if (ec != std::errc() || ptr != end) {
      fail(e->line, "'" + e->key + "' is not an integer: '" + e->value + "'");
    }
    return v;
  }

  double require_number(std::string_view key) const {
    if (auto v = number(key)) return *v;
    fail(section_.line, "[" + section_.name + "] is missing '" + std::string(key) + "'");
  }

  int line_of(std::string_view key) const {
    const ConfigEntry* e = section_.find(key);
    return e ? e->line : section_.line;
  }

 private:
  const ConfigFile& file_;
  const ConfigSection& section_;
};

template <typename Fn>
auto rethrow_with_line(const SectionReader& reader, int line, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    reader.fail(line, e.what());
  }
}

const ConfigSection* single_section(const ConfigFile& file, std::string_view name) {
  const ConfigSection* found = nullptr;
  for (const ConfigSection& s : file.sections) {
    if (s.name != name) continue;
    if (found != nullptr) {
      throw ParseError(file.source, s.line, "duplicate [" + s.name + "] section");
    }
    found = &s;
  }
  return found;
}

void check_sections(const ConfigFile& file, std::initializer_list<std::string_view> allowed) {
  const std::set<std::string_view> ok(allowed);
  for (const ConfigSection& s : file.sections) {
    if (!ok.count(s.name)) {
      throw ParseError(file.source, s.line, "unknown section [" + s.name + "]");
    }
  }
}

}  // namespace

const ConfigEntry* ConfigSection::find(std::string_view key) const {
  for (const ConfigEntry& e : entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

ConfigFile parse_config(std::string_view text, const std::string& source) {
  ConfigFile file;
  file.source = source;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError(source, line_no, "malformed section header");
      }
      file.sections.push_back({std::string(trim(line.substr(1, line.size() - 2))), line_no, {}});
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(source, line_no, "expected 'key = value'");
    }
    if (file.sections.empty()) {
      throw ParseError(source, line_no, "key outside of any section");
    }
    ConfigEntry entry{std::string(trim(line.substr(0, eq))),
                      std::string(trim(line.substr(eq + 1))), line_no};
    if (entry.key.empty()) throw ParseError(source, line_no, "empty key");
    ConfigSection& section = file.sections.back();
    if (section.find(entry.key)) {
      throw ParseError(source, line_no, "duplicate key '" + entry.key + "'");
    }
    section.entries.push_back(std::move(entry));
  }
  return file;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RouteConfig parse_route_config(std::string_view text, const std::string& source) {
  const ConfigFile file = parse_config(text, source);
  check_sections(file, {"route", "segment"});
  std::string name = stem_of(source);
  if (const ConfigSection* s = single_section(file, "route")) {
    const SectionReader r(file, *s, {"name"});
    if (auto v = r.text("name")) name = *v;
  }

  std::vector<Segment> segments;
  for (const ConfigSection& section : file.sections) {
    if (section.name != "segment") continue;
    const SectionReader r(file, section, {"kind", "length_m", "bore_m", "bend_radius_m",
                                          "bend_angle_deg", "roll_deg"});
    const auto kind = r.text("kind");
    if (!kind) r.fail(section.line, "[segment] is missing 'kind'");
    if (*kind != "straight" && *kind != "constriction" && *kind != "bend") {
      r.fail(r.line_of("kind"), "unknown segment kind '" + *kind + "'");
    }
    Segment seg;
    const double bore = r.require_number("bore_m");
    if (!(bore > 0.0)) r.fail(r.line_of("bore_m"), "bore_m must be positive");
    if (*kind == "straight" || *kind == "constriction") {
      const double length = r.require_number("length_m");
      if (length < 0.0) r.fail(r.line_of("length_m"), "length_m must be non-negative");
      if (r.text("bend_radius_m") || r.text("bend_angle_deg") || r.text("roll_deg")) {
        r.fail(section.line, "bend keys are only valid for kind = bend");
      }
      seg = *kind == "straight" ? Segment::Straight(length, bore)
                                : Segment::Constriction(length, bore);
    } else if (*kind == "bend") {
      if (r.text("length_m")) {
        r.fail(r.line_of("length_m"), "bend length follows from radius and angle");
      }
      const double radius = r.number("bend_radius_m").value_or(0.0);
      const double angle = r.require_number("bend_angle_deg");
      if (radius < 0.0) r.fail(r.line_of("bend_radius_m"), "bend_radius_m must be non-negative");
      if (angle < 0.0) r.fail(r.line_of("bend_angle_deg"), "bend_angle_deg must be non-negative");
      seg = Segment::Bend(radius, angle, bore, r.number("roll_deg").value_or(0.0));
    }
    segments.push_back(seg);
  }
  if (segments.empty()) {
    throw ParseError(source, 1, "route has no [segment] sections");
  }
  return RouteConfig{name, PipeRoute::Build(std::move(segments))};
}

RobotConfig parse_robot_config(std::string_view text, const std::string& source) {
  const ConfigFile file = parse_config(text, source);
  check_sections(file, {"robot", "drum", "rules"});
  RobotConfig cfg;
  cfg.name = stem_of(source);

  const ConfigSection* robot = single_section(file, "robot");
  if (robot == nullptr) throw ParseError(source, 1, "missing [robot] section");
  {
    const SectionReader r(file, *robot, {"name", "sleeve_length_m", "flat_diameter_m", "material"});
    if (auto v = r.text("name")) cfg.name = *v;
    cfg.profile.sleeve_length = r.require_number("sleeve_length_m");
    cfg.profile.flat_diameter = r.require_number("flat_diameter_m");
    const auto material = r.text("material");
    if (!material) r.fail(robot->line, "[robot] is missing 'material'");
    rethrow_with_line(r, r.line_of("material"), [&] {
      cfg.profile.material = material_from_string(*material);
    });
    rethrow_with_line(r, robot->line, [&] { validate(cfg.profile); });
  }

  if (const ConfigSection* drum = single_section(file, "drum")) {
    const SectionReader r(file, *drum, {"drum_radius_m", "ticks_per_rev", "payout_ratio"});
    if (auto v = r.number("drum_radius_m")) cfg.drum.drum_radius = *v;
    if (auto v = r.integer("ticks_per_rev")) cfg.drum.ticks_per_rev = *v;
    if (auto v = r.number("payout_ratio")) cfg.drum.payout_ratio = *v;
    rethrow_with_line(r, drum->line, [&] { validate(cfg.drum); });
  }

  cfg.rules = MaterialRules::Defaults(cfg.profile.material);
  if (const ConfigSection* rules = single_section(file, "rules")) {
    const SectionReader r(file, *rules, {"max_sharp_bend_deg", "min_bore_ratio", "notes"});
    if (auto v = r.number("max_sharp_bend_deg")) cfg.rules.max_sharp_bend_deg = *v;
    if (auto v = r.number("min_bore_ratio")) cfg.rules.min_bore_ratio = *v;
    if (auto v = r.text("notes")) cfg.rules.notes = *v;
    rethrow_with_line(r, rules->line, [&] { validate(cfg.rules); });
  }
  return cfg;
}

SceneConfig parse_scene_config(std::string_view text, const std::string& source,
                               const PipeRoute* route) {
  const ConfigFile file = parse_config(text, source);
  check_sections(file, {"scene", "source", "sensor"});
  SceneConfig cfg;
  cfg.name = stem_of(source);
  if (const ConfigSection* s = single_section(file, "scene")) {
    const SectionReader r(file, *s, {"name"});
    if (auto v = r.text("name")) cfg.name = *v;
  }

  if (const ConfigSection* sensor = single_section(file, "sensor")) {
    const SectionReader r(file, *sensor, {"kind", "baseline", "sigma", "adc_bits", "adc_min",
                                          "adc_max", "dwell_s", "distance_floor_m", "mu_per_m"});
    SensorConfig& sc = cfg.sensor;
    if (auto v = r.text("kind")) {
      rethrow_with_line(r, r.line_of("kind"), [&] { sc.kind = sensor_kind_from_string(*v); });
    }
    if (auto v = r.number("baseline")) sc.baseline = *v;
    if (auto v = r.number("sigma")) sc.gaussian_sigma = *v;
    if (auto v = r.integer("adc_bits")) {
      if (*v < 1 || *v > 32) r.fail(r.line_of("adc_bits"), "adc_bits must be in [1, 32]");
      sc.adc_bits = static_cast<int>(*v);
    }
    if (auto v = r.number("adc_min")) sc.adc_min = *v;
    if (auto v = r.number("adc_max")) sc.adc_max = *v;
    if (auto v = r.number("dwell_s")) sc.dwell_time = *v;
    if (auto v = r.number("distance_floor_m")) sc.distance_floor = *v;
    if (auto v = r.number("mu_per_m")) {
      if (*v < 0.0) r.fail(r.line_of("mu_per_m"), "mu_per_m must be non-negative");
      cfg.mu = *v;
    }
    rethrow_with_line(r, sensor->line, [&] { validate(sc); });
  }

  for (const ConfigSection& section : file.sections) {
    if (section.name != "source") continue;
    const SectionReader r(file, section, {"s_m", "strength", "kind", "lateral_offset_m"});
    Source src;
    src.s = r.require_number("s_m");
    src.strength = r.require_number("strength");
    if (auto v = r.text("kind")) {
      rethrow_with_line(r, r.line_of("kind"), [&] { src.kind = source_kind_from_string(*v); });
    }
    if (auto v = r.number("lateral_offset_m")) src.lateral_offset = *v;
    if (!(src.strength > 0.0)) r.fail(r.line_of("strength"), "strength must be positive");
    if (src.s < 0.0) r.fail(r.line_of("s_m"), "s_m must be non-negative");
    if (src.lateral_offset && *src.lateral_offset < 0.0) {
      r.fail(r.line_of("lateral_offset_m"), "lateral_offset_m must be non-negative");
    }
    if (route != nullptr) {
      rethrow_with_line(r, r.line_of("s_m"), [&] { validate(src, *route); });
    }
    cfg.sources.push_back(src);
  }
  return cfg;
}

RouteConfig load_route_config(const std::string& path) {
  return parse_route_config(read_text_file(path), path);
}

RobotConfig load_robot_config(const std::string& path) {
  return parse_robot_config(read_text_file(path), path);
}

SceneConfig load_scene_config(const std::string& path, const PipeRoute* route) {
  return parse_scene_config(read_text_file(path), path, route);
}

}  // namespace evermap

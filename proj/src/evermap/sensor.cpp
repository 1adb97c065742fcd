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

#include "evermap/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "evermap/error.hpp"

namespace evermap {

std::string to_string(SourceKind kind) {
  return kind == SourceKind::kMagneticDipole ? "magnetic_dipole" : "gamma_point";
}

SourceKind source_kind_from_string(const std::string& name) {
  if (name == "magnetic_dipole") return SourceKind::kMagneticDipole;
  if (name == "gamma_point") return SourceKind::kGammaPoint;
  throw Error(ErrorKind::kInvalidArgument, "unknown source kind '" + name + "'");
}

std::string to_string(SensorKind kind) {
  return kind == SensorKind::kHall ? "hall" : "counter";
}

SensorKind sensor_kind_from_string(const std::string& name) {
  if (name == "hall") return SensorKind::kHall;
  if (name == "counter") return SensorKind::kCounter;
  throw Error(ErrorKind::kInvalidArgument, "unknown sensor kind '" + name + "'");
}

void validate(const SensorConfig& cfg) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorKind::kInvalidArgument, "sensor: " + msg);
  };
  if (cfg.adc_bits < 1 || cfg.adc_bits > 32) fail("adc_bits must be in [1, 32]");
  if (!(cfg.gaussian_sigma >= 0.0)) fail("sigma must be non-negative");
  if (!(cfg.dwell_time > 0.0)) fail("dwell time must be positive");
  if (!(cfg.distance_floor > 0.0)) fail("distance floor must be positive");
  if (cfg.kind == SensorKind::kHall && !(cfg.adc_min < cfg.adc_max)) {
    fail("adc_min must be below adc_max");
  }
  if (!std::isfinite(cfg.baseline)) fail("baseline must be finite");
}

void validate(const Source& source, const PipeRoute& route) {
  if (!(source.strength > 0.0) || !std::isfinite(source.strength)) {
    throw Error(ErrorKind::kInvalidArgument, "source strength must be positive");
  }
  if (!(source.s >= 0.0 && source.s <= route.total_length())) {
    std::ostringstream os;
    os << "source at s=" << source.s << " lies outside the route";
    throw Error(ErrorKind::kOutOfRange, os.str());
  }
  if (source.lateral_offset && !(*source.lateral_offset >= 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "lateral offset must be non-negative");
  }
}

double kernel(SourceKind kind, double distance, double mu, double floor) {
  const double d = std::max(distance, floor);
  if (kind == SourceKind::kMagneticDipole) return 1.0 / (d * d * d);
  return std::exp(-mu * distance) / (d * d);
}

double field_at(const Source& source, double distance, double mu, double floor) {
  return source.strength * kernel(source.kind, distance, mu, floor);
}

double effective_offset(const Source& source, const PipeRoute& route) {
  if (source.lateral_offset) return *source.lateral_offset;
  return 0.5 * route.bore_at(source.s);
}

Eigen::Vector3d source_point(const PipeRoute& route, const Source& source) {
  const Frame f = route.frame_at(source.s);
  return f.position + effective_offset(source, route) * f.normal;
}

Eigen::Vector3d sensor_point(const PipeRoute& route, double sensor_s) {
  if (sensor_s < 0.0) {
    const Pose& entry = route.entry_pose();
    return entry.position + sensor_s * entry.tangent;
  }
  return route.pose_at(sensor_s).position;
}

double sensor_distance(const PipeRoute& route, const Source& source,
                       double sensor_s) {
  return (sensor_point(route, sensor_s) - source_point(route, source)).norm();
}

double total_field(std::span<const Source> sources, double sensor_s,
                   const PipeRoute& route, double mu, double floor) {
  const Eigen::Vector3d sensor = sensor_point(route, sensor_s);
  double sum = 0.0;
  for (const Source& src : sources) {
    const double d = (sensor - source_point(route, src)).norm();
    sum += field_at(src, d, mu, floor);
  }
  return sum;
}

std::int64_t quantize(double value, int bits, double min, double max) {
  if (bits < 1 || bits > 32) {
    throw Error(ErrorKind::kInvalidArgument, "quantize: bits must be in [1, 32]");
  }
  if (!(min < max)) {
    throw Error(ErrorKind::kInvalidArgument, "quantize: invalid range");
  }
  const double top = std::ldexp(1.0, bits) - 1.0;
  const double clamped = std::clamp(value, min, max);
  const double scaled = (clamped - min) / (max - min) * top;
  return static_cast<std::int64_t>(std::round(scaled));
}

std::int64_t reading(std::span<const Source> sources, double sensor_s,
                     const PipeRoute& route, const SensorConfig& cfg,
                     double mu, RandomStream& rng) {
  for (const Source& src : sources) validate(src, route);
  if (sensor_s > route.total_length()) {
    throw Error(ErrorKind::kOutOfRange, "sensor beyond the end of the route");
  }
  const double field =
      cfg.baseline + total_field(sources, sensor_s, route, mu, cfg.distance_floor);
  if (cfg.kind == SensorKind::kHall) {
    const double noisy = rng.normal(field, cfg.gaussian_sigma);
    return quantize(noisy, cfg.adc_bits, cfg.adc_min, cfg.adc_max);
  }
  return rng.poisson(cfg.dwell_time * field);
}

double to_reading_units(const SensorConfig& cfg, double raw) {
  if (cfg.kind == SensorKind::kCounter) return raw / cfg.dwell_time;
  const double top = std::ldexp(1.0, cfg.adc_bits) - 1.0;
  return cfg.adc_min + raw / top * (cfg.adc_max - cfg.adc_min);
}

double reading_resolution(const SensorConfig& cfg) {
  if (cfg.kind == SensorKind::kCounter) return 1.0 / cfg.dwell_time;
  return (cfg.adc_max - cfg.adc_min) / (std::ldexp(1.0, cfg.adc_bits) - 1.0);
}

}  // namespace evermap

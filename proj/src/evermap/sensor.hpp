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

#ifndef EVERMAP_SENSOR_HPP_
#define EVERMAP_SENSOR_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Core>

#include "evermap/random.hpp"
#include "evermap/route.hpp"

namespace evermap {

enum class SourceKind { kMagneticDipole, kGammaPoint };

std::string to_string(SourceKind kind);
SourceKind source_kind_from_string(const std::string& name);

struct Source {
  double s = 0.0;
  double strength = 1.0;  // dipole coefficient or activity, model units
  SourceKind kind = SourceKind::kMagneticDipole;
  // Radial distance from the centreline; unset means "on the wall", i.e.
  // half the local bore.
  std::optional<double> lateral_offset;
};

enum class SensorKind { kHall, kCounter };

std::string to_string(SensorKind kind);
SensorKind sensor_kind_from_string(const std::string& name);

struct SensorConfig {
  SensorKind kind = SensorKind::kHall;
  double baseline = 0.0;
  double gaussian_sigma = 0.0;  // hall
  int adc_bits = 10;            // hall
  double adc_min = -100.0;      // hall
  double adc_max = 100.0;       // hall
  double dwell_time = 0.01;     // counter, seconds
  double distance_floor = 1e-3;
};

void validate(const SensorConfig& cfg);
void validate(const Source& source, const PipeRoute& route);

// Field per unit strength at `distance`; the floor guards the singularity.
double kernel(SourceKind kind, double distance, double mu, double floor);

double field_at(const Source& source, double distance, double mu,
                double floor = 1e-3);

double effective_offset(const Source& source, const PipeRoute& route);

// Point on the pipe wall where the source sits.
Eigen::Vector3d source_point(const PipeRoute& route, const Source& source);

// Sensor location for an arc position; negative positions extend backwards
// from the entry along the entry tangent.
Eigen::Vector3d sensor_point(const PipeRoute& route, double sensor_s);

double sensor_distance(const PipeRoute& route, const Source& source,
                       double sensor_s);

// Noise-free sum of source fields at the sensor (baseline excluded).
double total_field(std::span<const Source> sources, double sensor_s,
                   const PipeRoute& route, double mu, double floor);

// Clamp into [min, max], scale onto [0, 2^bits - 1], round half away from
// zero. Throws Error(kInvalidArgument) on a bad range or bit count.
std::int64_t quantize(double value, int bits, double min, double max);

// One raw sample as the logging chain would record it: an ADC code for the
// hall sensor, a count for the counter.
std::int64_t reading(std::span<const Source> sources, double sensor_s,
                     const PipeRoute& route, const SensorConfig& cfg,
                     double mu, RandomStream& rng);

// Raw code/count back to reading units (field units for hall, counts per
// second for the counter).
double to_reading_units(const SensorConfig& cfg, double raw);

// Size of one raw step in reading units.
double reading_resolution(const SensorConfig& cfg);

}  // namespace evermap

#endif  // EVERMAP_SENSOR_HPP_

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

#ifndef EVERMAP_ACQUISITION_HPP_
#define EVERMAP_ACQUISITION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "evermap/kinematics.hpp"
#include "evermap/sensor.hpp"

namespace evermap {

struct Sample {
  std::int64_t t_ms = 0;
  std::int64_t encoder_ticks = 0;
  std::int64_t sensor_raw = 0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

// Ordered `key=value` pairs carried as leading comment lines.
using TraceMeta = std::vector<std::pair<std::string, std::string>>;

// Time-ordered record of encoder and sensor readings. Append-only; t_ms
// must strictly increase.
class Trace {
 public:
  Trace() = default;
  explicit Trace(TraceMeta meta) : meta_(std::move(meta)) {}

  // Throws Error(kInvalidArgument) if t_ms is negative or not increasing.
  void append(const Sample& sample);

  void set_meta(const std::string& key, const std::string& value);
  std::optional<std::string> meta_value(const std::string& key) const;

  const std::vector<Sample>& samples() const { return samples_; }
  const TraceMeta& meta() const { return meta_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

 private:
  TraceMeta meta_;
  std::vector<Sample> samples_;
};

inline constexpr std::string_view kTraceHeader = "t_ms,encoder_ticks,sensor_raw";

// Strict parser for the canonical trace CSV: `# key=value` lines, the exact
// header, canonical decimal integers, every line `\n` terminated. Errors are
// ParseError with the 1-based line number.
Trace parse_trace_csv(std::string_view text, const std::string& source = "trace");

std::string write_trace_csv(const Trace& trace);

Trace load_trace_csv(const std::string& path);
void save_trace_csv(const Trace& trace, const std::string& path);

struct DecodeError {
  std::string message;
  std::string frame;
};

using DecodeResult = std::variant<Sample, DecodeError>;

// Decodes one framed record; a trailing "\n" or "\r\n" is optional.
DecodeResult stream_decode(std::string_view line);

// Incremental decoder for a newline-delimited live feed. Bytes may arrive in
// arbitrary chunks; a malformed frame yields one DecodeError and decoding
// resumes at the next newline.
class StreamDecoder {
 public:
  std::vector<DecodeResult> feed(std::string_view bytes);
  std::size_t error_count() const { return errors_; }
  std::size_t pending_bytes() const { return pending_.size(); }

 private:
  std::string pending_;
  std::size_t errors_ = 0;
};

enum class Phase { kExtend, kRetract, kMixed };

std::string to_string(Phase phase);

// Motion direction per sample from the net tick change over a centred
// three-sample window; a zero change counts as extend.
std::vector<Phase> flag_phases(std::span<const Sample> samples);

struct ProfileBin {
  double s_center = 0.0;
  double mean_reading = 0.0;
  std::size_t n = 0;
  Phase phase = Phase::kExtend;
};

// Reading against sensor arc position. Bins lie on the grid
// s_center = (i + 0.5) * bin_width; only populated bins are stored.
struct Profile {
  double bin_width = 0.01;
  std::vector<ProfileBin> bins;

  bool empty() const { return bins.empty(); }
  double span_begin() const { return bins.front().s_center - 0.5 * bin_width; }
  double span_end() const { return bins.back().s_center + 0.5 * bin_width; }
};

inline constexpr double kDefaultBinWidth = 0.01;

// Throws Error(kNoInPipeSamples) when no sample survives filtering.
Profile build_profile(const Trace& trace, const DrumConfig& drum,
                      const RobotProfile& robot, double bin_width,
                      bool include_retract);

// Converts mean raw codes/counts into reading units.
Profile calibrate(Profile profile, const SensorConfig& sensor);

}  // namespace evermap

#endif  // EVERMAP_ACQUISITION_HPP_

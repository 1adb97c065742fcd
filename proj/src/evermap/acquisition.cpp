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

#include "evermap/acquisition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "evermap/error.hpp"

namespace evermap {
namespace {

// Canonical decimal only: no sign on zero, no leading zeros, no '+'.
bool parse_canonical_int(std::string_view field, std::int64_t& out) {
  if (field.empty()) return false;
  std::string_view digits = field;
  if (digits.front() == '-') digits.remove_prefix(1);
  if (digits.empty()) return false;
  if (digits.size() > 1 && digits.front() == '0') return false;
  if (field.front() == '-' && digits == "0") return false;
  for (char c : digits) {
    if (c < '0' || c > '9') return false;
  }
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

// Splits a data row into a sample or returns an error message.
std::optional<std::string> parse_row(std::string_view row, Sample& out) {
  std::int64_t values[3];
  std::size_t begin = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t comma = row.find(',', begin);
    const bool last = i == 2;
    if (last != (comma == std::string_view::npos)) {
      return std::string("expected 3 comma-separated fields");
    }
    const std::size_t end = last ? row.size() : comma;
    const std::string_view field = row.substr(begin, end - begin);
    if (!parse_canonical_int(field, values[i])) {
      static const char* const kNames[] = {"t_ms", "encoder_ticks", "sensor_raw"};
      return "non-numeric " + std::string(kNames[i]) + " field '" +
             std::string(field) + "'";
    }
    begin = end + 1;
  }
  if (values[0] < 0) return std::string("negative t_ms");
  out = Sample{values[0], values[1], values[2]};
  return std::nullopt;
}

}  // namespace

void Trace::append(const Sample& sample) {
  if (sample.t_ms < 0) {
    throw Error(ErrorKind::kInvalidArgument, "t_ms must be non-negative");
  }
  if (!samples_.empty() && sample.t_ms <= samples_.back().t_ms) {
    throw Error(ErrorKind::kInvalidArgument,
                "t_ms must strictly increase (got " + std::to_string(sample.t_ms) +
                    " after " + std::to_string(samples_.back().t_ms) + ")");
  }
  samples_.push_back(sample);
}

void Trace::set_meta(const std::string& key, const std::string& value) {
  if (key.empty() || key.find_first_of("=\n") != std::string::npos ||
      value.find('\n') != std::string::npos) {
    throw Error(ErrorKind::kInvalidArgument, "invalid metadata entry '" + key + "'");
  }
  for (auto& [k, v] : meta_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  meta_.emplace_back(key, value);
}

std::optional<std::string> Trace::meta_value(const std::string& key) const {
  for (const auto& [k, v] : meta_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

Trace parse_trace_csv(std::string_view text, const std::string& source) {
  Trace trace;
  bool header_seen = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      throw ParseError(source, line_no, "line is not newline-terminated");
    }
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;

    if (!header_seen) {
      if (line.starts_with("# ")) {
        const std::string_view body = line.substr(2);
        const std::size_t eq = body.find('=');
        if (eq == std::string_view::npos || eq == 0) {
          throw ParseError(source, line_no, "metadata must be '# key=value'");
        }
        const std::string key(body.substr(0, eq));
        if (trace.meta_value(key)) {
          throw ParseError(source, line_no, "duplicate metadata key '" + key + "'");
        }
        trace.set_meta(key, std::string(body.substr(eq + 1)));
        continue;
      }
      if (line != kTraceHeader) {
        throw ParseError(source, line_no,
                         "expected header '" + std::string(kTraceHeader) + "'");
      }
      header_seen = true;
      continue;
    }

    Sample sample;
    if (auto err = parse_row(line, sample)) throw ParseError(source, line_no, *err);
    if (!trace.empty() && sample.t_ms <= trace.samples().back().t_ms) {
      throw ParseError(source, line_no, "t_ms is not strictly increasing");
    }
    trace.append(sample);
  }
  if (!header_seen) {
    throw ParseError(source, line_no + 1, "missing header");
  }
  return trace;
}

std::string write_trace_csv(const Trace& trace) {
  std::string out;
  out.reserve(32 * (trace.size() + trace.meta().size() + 1));
  for (const auto& [k, v] : trace.meta()) {
    out += "# ";
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  out += kTraceHeader;
  out += '\n';
  for (const Sample& s : trace.samples()) {
    out += std::to_string(s.t_ms);
    out += ',';
    out += std::to_string(s.encoder_ticks);
    out += ',';
    out += std::to_string(s.sensor_raw);
    out += '\n';
  }
  return out;
}

Trace load_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open trace '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_trace_csv(buf.str(), path);
}

void save_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write trace '" + path + "'");
  out << write_trace_csv(trace);
  if (!out) throw Error(ErrorKind::kIo, "write failed for '" + path + "'");
}

DecodeResult stream_decode(std::string_view line) {
  std::string_view frame = line;
  if (frame.ends_with('\n')) frame.remove_suffix(1);
  if (frame.ends_with('\r')) frame.remove_suffix(1);
  Sample sample;
  if (auto err = parse_row(frame, sample)) {
    return DecodeError{*err, std::string(frame)};
  }
  return sample;
}

std::vector<DecodeResult> StreamDecoder::feed(std::string_view bytes) {
  pending_.append(bytes);
  std::vector<DecodeResult> out;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t nl = pending_.find('\n', begin);
    if (nl == std::string::npos) break;
    DecodeResult r =
        stream_decode(std::string_view(pending_).substr(begin, nl - begin));
    if (std::holds_alternative<DecodeError>(r)) ++errors_;
    out.push_back(std::move(r));
    begin = nl + 1;
  }
  pending_.erase(0, begin);
  return out;
}

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::kExtend:
      return "extend";
    case Phase::kRetract:
      return "retract";
    case Phase::kMixed:
      return "mixed";
  }
  return "unknown";
}

std::vector<Phase> flag_phases(std::span<const Sample> samples) {
  std::vector<Phase> phases(samples.size(), Phase::kExtend);
  if (samples.size() < 2) return phases;
  const std::size_t last = samples.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = std::min(i + 1, last);
    if (samples[hi].encoder_ticks < samples[lo].encoder_ticks) {
      phases[i] = Phase::kRetract;
    }
  }
  return phases;
}

Profile build_profile(const Trace& trace, const DrumConfig& drum,
                      const RobotProfile& robot, double bin_width,
                      bool include_retract) {
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw Error(ErrorKind::kInvalidArgument, "bin width must be positive");
  }
  validate(drum);
  validate(robot);

  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
    bool extend = false;
    bool retract = false;
  };
  std::map<std::int64_t, Acc> acc;

  const std::vector<Phase> phases = flag_phases(trace.samples());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const Sample& sample = trace.samples()[i];
    if (phases[i] == Phase::kRetract && !include_retract) continue;
    const double extension = std::clamp(
        extension_from_ticks(drum, sample.encoder_ticks), 0.0, robot.sleeve_length);
    const double s = sensor_position(robot, extension);
    if (s < 0.0) continue;
    const auto index = static_cast<std::int64_t>(std::floor(s / bin_width));
    Acc& a = acc[index];
    a.sum += static_cast<double>(sample.sensor_raw);
    ++a.n;
    (phases[i] == Phase::kRetract ? a.retract : a.extend) = true;
  }
  if (acc.empty()) {
    throw Error(ErrorKind::kNoInPipeSamples, "no in-pipe samples");
  }

  Profile profile;
  profile.bin_width = bin_width;
  profile.bins.reserve(acc.size());
  for (const auto& [index, a] : acc) {
    ProfileBin bin;
    bin.s_center = (static_cast<double>(index) + 0.5) * bin_width;
    bin.mean_reading = a.sum / static_cast<double>(a.n);
    bin.n = a.n;
    bin.phase = a.extend && a.retract ? Phase::kMixed
                : a.retract           ? Phase::kRetract
                                      : Phase::kExtend;
    profile.bins.push_back(bin);
  }
  return profile;
}

Profile calibrate(Profile profile, const SensorConfig& sensor) {
  for (ProfileBin& bin : profile.bins) {
    bin.mean_reading = to_reading_units(sensor, bin.mean_reading);
  }
  return profile;
}

}  // namespace evermap

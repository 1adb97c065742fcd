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

#include "evermap/evermap.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "evermap/acquisition.hpp"
#include "evermap/config.hpp"
#include "evermap/error.hpp"
#include "evermap/feasibility.hpp"
#include "evermap/format.hpp"
#include "evermap/mapping.hpp"
#include "evermap/simulate.hpp"

struct evermap_route {
  evermap::RouteConfig cfg;
};

struct evermap_robot {
  evermap::RobotConfig cfg;
};

struct evermap_scene {
  evermap::SceneConfig cfg;
};

struct evermap_trace {
  evermap::Trace trace;
};

struct evermap_decoder {
  evermap::StreamDecoder decoder;
  std::vector<evermap::DecodeResult> ready;
  std::size_t next = 0;
};

struct evermap_map {
  evermap::LocalizeResult result;
  bool fitted = false;
};

namespace {

thread_local std::string g_last_error;

evermap_status status_for(evermap::ErrorKind kind) {
  using evermap::ErrorKind;
  switch (kind) {
    case ErrorKind::kInvalidArgument:
      return EVERMAP_ERR_INVALID_ARGUMENT;
    case ErrorKind::kParse:
      return EVERMAP_ERR_PARSE;
    case ErrorKind::kOutOfRange:
      return EVERMAP_ERR_OUT_OF_RANGE;
    case ErrorKind::kNoInPipeSamples:
      return EVERMAP_ERR_NO_IN_PIPE_SAMPLES;
    case ErrorKind::kIllPosed:
      return EVERMAP_ERR_ILL_POSED;
    case ErrorKind::kNumeric:
      return EVERMAP_ERR_NUMERIC;
    case ErrorKind::kIo:
      return EVERMAP_ERR_IO;
  }
  return EVERMAP_ERR_INTERNAL;
}

evermap_status fail(evermap_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes at the boundary.
template <typename Fn>
evermap_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const evermap::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(EVERMAP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(EVERMAP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(EVERMAP_ERR_INTERNAL, "unknown error");
  }
}

evermap_status null_argument(const char* name) {
  return fail(EVERMAP_ERR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void fill_verdict(const evermap::Verdict& v, evermap_verdict* out) {
  if (out == nullptr) return;
  std::memset(out, 0, sizeof *out);
  out->feasible = v.feasible ? 1 : 0;
  out->reason = EVERMAP_BLOCK_NONE;
  if (v.blocker) {
    out->blocker_s = v.blocker->s;
    out->blocker_segment = v.blocker->segment_index;
    out->reason = v.blocker->reason == evermap::BlockReason::kSharpBend
                      ? EVERMAP_BLOCK_SHARP_BEND
                      : EVERMAP_BLOCK_BORE;
    std::strncpy(out->description, v.blocker->description.c_str(),
                 sizeof out->description - 1);
  }
}

evermap::LocalizeOptions to_options(const evermap_scene* scene,
                                    const evermap_map_options* options) {
  evermap::LocalizeOptions opts;
  if (scene != nullptr) {
    opts.sensor = scene->cfg.sensor;
    opts.mu = scene->cfg.mu;
  }
  evermap_map_options defaults;
  evermap_map_options_init(&defaults);
  const evermap_map_options& o = options != nullptr ? *options : defaults;
  opts.bin_width = o.bin_width_m;
  opts.include_retract = o.include_retract != 0;
  opts.kmax = o.kmax;
  opts.min_prominence = o.min_prominence;
  opts.min_separation = o.min_separation_m;
  opts.strength_floor = o.strength_floor;
  opts.kind = o.kind == EVERMAP_SOURCE_GAMMA_POINT ? evermap::SourceKind::kGammaPoint
                                                   : evermap::SourceKind::kMagneticDipole;
  if (o.lateral_offset_m >= 0.0) opts.lateral_offset = o.lateral_offset_m;
  return opts;
}

}  // namespace

extern "C" {

const char* evermap_version(void) { return "1.0.0"; }

const char* evermap_status_name(evermap_status status) {
  switch (status) {
    case EVERMAP_OK:
      return "ok";
    case EVERMAP_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case EVERMAP_ERR_PARSE:
      return "parse error";
    case EVERMAP_ERR_INFEASIBLE:
      return "route not traversable";
    case EVERMAP_ERR_NO_IN_PIPE_SAMPLES:
      return "no in-pipe samples";
    case EVERMAP_ERR_OUT_OF_RANGE:
      return "out of range";
    case EVERMAP_ERR_ILL_POSED:
      return "ill-posed fit";
    case EVERMAP_ERR_NUMERIC:
      return "numeric error";
    case EVERMAP_ERR_IO:
      return "i/o error";
    case EVERMAP_ERR_INTERNAL:
      return "internal error";
    case EVERMAP_END:
      return "end of data";
  }
  return "unknown status";
}

const char* evermap_last_error(void) { return g_last_error.c_str(); }

void evermap_string_free(char* str) { std::free(str); }

/* routes */

evermap_status evermap_route_load(const char* path, evermap_route** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new evermap_route{evermap::load_route_config(path)};
    return EVERMAP_OK;
  });
}

evermap_status evermap_route_parse(const char* text, const char* source_name,
                                   evermap_route** out) {
  if (text == nullptr) return null_argument("text");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new evermap_route{
        evermap::parse_route_config(text, source_name ? source_name : "route")};
    return EVERMAP_OK;
  });
}

void evermap_route_free(evermap_route* route) { delete route; }

double evermap_route_length(const evermap_route* route) {
  return route == nullptr ? 0.0 : route->cfg.route.total_length();
}

evermap_status evermap_route_pose_at(const evermap_route* route, double s,
                                     double position[3], double tangent[3]) {
  if (route == nullptr) return null_argument("route");
  return guarded([&] {
    const evermap::Pose pose = route->cfg.route.pose_at(s);
    for (int i = 0; i < 3; ++i) {
      if (position != nullptr) position[i] = pose.position[i];
      if (tangent != nullptr) tangent[i] = pose.tangent[i];
    }
    return EVERMAP_OK;
  });
}

evermap_status evermap_route_bore_at(const evermap_route* route, double s, double* bore) {
  if (route == nullptr) return null_argument("route");
  if (bore == nullptr) return null_argument("bore");
  return guarded([&] {
    *bore = route->cfg.route.bore_at(s);
    return EVERMAP_OK;
  });
}

size_t evermap_route_feature_count(const evermap_route* route) {
  return route == nullptr ? 0 : route->cfg.route.features().size();
}

evermap_status evermap_route_feature(const evermap_route* route, size_t index,
                                     evermap_feature* out) {
  if (route == nullptr) return null_argument("route");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto features = route->cfg.route.features();
    if (index >= features.size()) {
      return fail(EVERMAP_ERR_OUT_OF_RANGE, "feature index out of range");
    }
    const evermap::Feature& f = features[index];
    out->s = f.s;
    out->angle_deg = f.angle_deg;
    out->bore = f.bore;
    switch (f.kind) {
      case evermap::FeatureKind::kSharpBend:
        out->kind = EVERMAP_FEATURE_SHARP_BEND;
        break;
      case evermap::FeatureKind::kSweptBend:
        out->kind = EVERMAP_FEATURE_SWEPT_BEND;
        break;
      case evermap::FeatureKind::kConstriction:
        out->kind = EVERMAP_FEATURE_CONSTRICTION;
        break;
    }
    return EVERMAP_OK;
  });
}

/* robots */

evermap_status evermap_robot_load(const char* path, evermap_robot** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new evermap_robot{evermap::load_robot_config(path)};
    return EVERMAP_OK;
  });
}

evermap_status evermap_robot_parse(const char* text, const char* source_name,
                                   evermap_robot** out) {
  if (text == nullptr) return null_argument("text");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new evermap_robot{
        evermap::parse_robot_config(text, source_name ? source_name : "robot")};
    return EVERMAP_OK;
  });
}

void evermap_robot_free(evermap_robot* robot) { delete robot; }

evermap_status evermap_robot_get_info(const evermap_robot* robot, evermap_robot_info* out) {
  if (robot == nullptr) return null_argument("robot");
  if (out == nullptr) return null_argument("out");
  const auto& c = robot->cfg;
  out->sleeve_length = c.profile.sleeve_length;
  out->flat_diameter = c.profile.flat_diameter;
  out->material = c.profile.material == evermap::Material::kFabric
                      ? EVERMAP_MATERIAL_FABRIC
                      : EVERMAP_MATERIAL_PLASTIC;
  out->drum_radius = c.drum.drum_radius;
  out->ticks_per_rev = c.drum.ticks_per_rev;
  out->payout_ratio = c.drum.payout_ratio;
  out->max_sharp_bend_deg = c.rules.max_sharp_bend_deg;
  out->min_bore_ratio = c.rules.min_bore_ratio;
  return EVERMAP_OK;
}

evermap_status evermap_extension_from_ticks(const evermap_robot* robot, int64_t ticks,
                                            double* extension) {
  if (robot == nullptr) return null_argument("robot");
  if (extension == nullptr) return null_argument("extension");
  *extension = evermap::extension_from_ticks(robot->cfg.drum, ticks);
  return EVERMAP_OK;
}

evermap_status evermap_sensor_position(const evermap_robot* robot, double extension,
                                       double* sensor_s) {
  if (robot == nullptr) return null_argument("robot");
  if (sensor_s == nullptr) return null_argument("sensor_s");
  return guarded([&] {
    *sensor_s = evermap::sensor_position(robot->cfg.profile, extension);
    return EVERMAP_OK;
  });
}

/* scenes */

evermap_status evermap_scene_load(const char* path, const evermap_route* route,
                                  evermap_scene** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new evermap_scene{
        evermap::load_scene_config(path, route ? &route->cfg.route : nullptr)};
    return EVERMAP_OK;
  });
}

evermap_status evermap_scene_parse(const char* text, const char* source_name,
                                   const evermap_route* route, evermap_scene** out) {
  if (text == nullptr) return null_argument("text");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new evermap_scene{evermap::parse_scene_config(
        text, source_name ? source_name : "scene", route ? &route->cfg.route : nullptr)};
    return EVERMAP_OK;
  });
}

void evermap_scene_free(evermap_scene* scene) { delete scene; }

size_t evermap_scene_source_count(const evermap_scene* scene) {
  return scene == nullptr ? 0 : scene->cfg.sources.size();
}

/* feasibility */

evermap_status evermap_check_feasibility(const evermap_robot* robot,
                                         const evermap_route* route, evermap_verdict* out) {
  if (robot == nullptr) return null_argument("robot");
  if (route == nullptr) return null_argument("route");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    fill_verdict(evermap::can_traverse(robot->cfg.profile, robot->cfg.rules,
                                       route->cfg.route),
                 out);
    return EVERMAP_OK;
  });
}

/* traces */

evermap_status evermap_trace_new(evermap_trace** out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new evermap_trace{};
    return EVERMAP_OK;
  });
}

void evermap_trace_free(evermap_trace* trace) { delete trace; }

evermap_status evermap_trace_append(evermap_trace* trace, evermap_sample sample) {
  if (trace == nullptr) return null_argument("trace");
  return guarded([&] {
    trace->trace.append({sample.t_ms, sample.encoder_ticks, sample.sensor_raw});
    return EVERMAP_OK;
  });
}

evermap_status evermap_trace_set_meta(evermap_trace* trace, const char* key,
                                      const char* value) {
  if (trace == nullptr) return null_argument("trace");
  if (key == nullptr || value == nullptr) return null_argument("key/value");
  return guarded([&] {
    trace->trace.set_meta(key, value);
    return EVERMAP_OK;
  });
}

size_t evermap_trace_size(const evermap_trace* trace) {
  return trace == nullptr ? 0 : trace->trace.size();
}

evermap_status evermap_trace_sample(const evermap_trace* trace, size_t index,
                                    evermap_sample* out) {
  if (trace == nullptr) return null_argument("trace");
  if (out == nullptr) return null_argument("out");
  if (index >= trace->trace.size()) {
    return fail(EVERMAP_ERR_OUT_OF_RANGE, "sample index out of range");
  }
  const evermap::Sample& s = trace->trace.samples()[index];
  *out = evermap_sample{s.t_ms, s.encoder_ticks, s.sensor_raw};
  return EVERMAP_OK;
}

evermap_status evermap_trace_parse(const char* data, size_t length, evermap_trace** out) {
  if (data == nullptr && length > 0) return null_argument("data");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new evermap_trace{evermap::parse_trace_csv(std::string_view(data, length))};
    return EVERMAP_OK;
  });
}

evermap_status evermap_trace_load(const char* path, evermap_trace** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new evermap_trace{evermap::load_trace_csv(path)};
    return EVERMAP_OK;
  });
}

evermap_status evermap_trace_save(const evermap_trace* trace, const char* path) {
  if (trace == nullptr) return null_argument("trace");
  if (path == nullptr) return null_argument("path");
  return guarded([&] {
    evermap::save_trace_csv(trace->trace, path);
    return EVERMAP_OK;
  });
}

evermap_status evermap_trace_to_csv(const evermap_trace* trace, char** out, size_t* length) {
  if (trace == nullptr) return null_argument("trace");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const std::string csv = evermap::write_trace_csv(trace->trace);
    *out = duplicate(csv);
    if (length != nullptr) *length = csv.size();
    return EVERMAP_OK;
  });
}

/* decoder */

evermap_status evermap_decoder_new(evermap_decoder** out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new evermap_decoder{};
    return EVERMAP_OK;
  });
}

void evermap_decoder_free(evermap_decoder* decoder) { delete decoder; }

evermap_status evermap_decoder_feed(evermap_decoder* decoder, const char* bytes,
                                    size_t length) {
  if (decoder == nullptr) return null_argument("decoder");
  if (bytes == nullptr && length > 0) return null_argument("bytes");
  return guarded([&] {
    auto results = decoder->decoder.feed(std::string_view(bytes, length));
    decoder->ready.erase(decoder->ready.begin(),
                         decoder->ready.begin() + static_cast<std::ptrdiff_t>(decoder->next));
    decoder->next = 0;
    for (auto& r : results) decoder->ready.push_back(std::move(r));
    return EVERMAP_OK;
  });
}

evermap_status evermap_decoder_next(evermap_decoder* decoder, evermap_sample* out) {
  if (decoder == nullptr) return null_argument("decoder");
  if (out == nullptr) return null_argument("out");
  if (decoder->next >= decoder->ready.size()) return EVERMAP_END;
  const evermap::DecodeResult& r = decoder->ready[decoder->next++];
  if (const auto* err = std::get_if<evermap::DecodeError>(&r)) {
    return fail(EVERMAP_ERR_PARSE, err->message + " in frame '" + err->frame + "'");
  }
  const auto& s = std::get<evermap::Sample>(r);
  *out = evermap_sample{s.t_ms, s.encoder_ticks, s.sensor_raw};
  return EVERMAP_OK;
}

size_t evermap_decoder_error_count(const evermap_decoder* decoder) {
  return decoder == nullptr ? 0 : decoder->decoder.error_count();
}

/* simulation */

void evermap_sim_options_init(evermap_sim_options* options) {
  if (options == nullptr) return;
  const evermap::SimulationOptions defaults;
  options->seed = defaults.seed;
  options->sample_rate_hz = defaults.sample_rate_hz;
  options->crank_speed_mps = defaults.crank_speed_mps;
}

evermap_status evermap_simulate(const evermap_route* route, const evermap_robot* robot,
                                const evermap_scene* scene,
                                const evermap_sim_options* options, evermap_trace** out,
                                evermap_verdict* verdict) {
  if (route == nullptr) return null_argument("route");
  if (robot == nullptr) return null_argument("robot");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    evermap::SimulationOptions opts;
    if (options != nullptr) {
      opts.seed = options->seed;
      opts.sample_rate_hz = options->sample_rate_hz;
      opts.crank_speed_mps = options->crank_speed_mps;
    }
    const evermap::SceneConfig empty_scene;
    auto result = evermap::simulate(route->cfg, robot->cfg,
                                    scene ? scene->cfg : empty_scene, opts);
    fill_verdict(result.verdict, verdict);
    *out = new evermap_trace{std::move(result.trace)};
    if (!result.verdict.feasible) {
      return fail(EVERMAP_ERR_INFEASIBLE,
                  "route blocked at s=" + evermap::format_number(result.verdict.blocker->s) +
                      " m: " + result.verdict.blocker->description);
    }
    return EVERMAP_OK;
  });
}

/* mapping */

void evermap_map_options_init(evermap_map_options* options) {
  if (options == nullptr) return;
  const evermap::LocalizeOptions defaults;
  options->bin_width_m = defaults.bin_width;
  options->include_retract = defaults.include_retract ? 1 : 0;
  options->kmax = defaults.kmax;
  options->min_prominence = defaults.min_prominence;
  options->min_separation_m = defaults.min_separation;
  options->strength_floor = defaults.strength_floor;
  options->kind = EVERMAP_SOURCE_MAGNETIC_DIPOLE;
  options->lateral_offset_m = -1.0;
}

evermap_status evermap_localize(const evermap_trace* trace, const evermap_robot* robot,
                                const evermap_route* route, const evermap_scene* scene,
                                const evermap_map_options* options, evermap_map** out) {
  if (trace == nullptr) return null_argument("trace");
  if (robot == nullptr) return null_argument("robot");
  if (route == nullptr) return null_argument("route");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    auto result = evermap::localize(trace->trace, robot->cfg.drum, robot->cfg.profile,
                                    route->cfg.route, to_options(scene, options));
    *out = new evermap_map{std::move(result), true};
    return EVERMAP_OK;
  });
}

evermap_status evermap_profile(const evermap_trace* trace, const evermap_robot* robot,
                               const evermap_scene* scene,
                               const evermap_map_options* options, evermap_map** out) {
  if (trace == nullptr) return null_argument("trace");
  if (robot == nullptr) return null_argument("robot");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const evermap::LocalizeOptions opts = to_options(scene, options);
    evermap::validate(opts.sensor);
    evermap::LocalizeResult result;
    result.profile = evermap::calibrate(
        evermap::build_profile(trace->trace, robot->cfg.drum, robot->cfg.profile,
                               opts.bin_width, opts.include_retract),
        opts.sensor);
    result.noise_sigma = evermap::estimate_noise(result.profile);
    result.min_prominence = opts.min_prominence >= 0.0
                                ? opts.min_prominence
                                : evermap::auto_min_prominence(result.profile, opts.sensor);
    result.peaks = evermap::detect_peaks(result.profile, result.min_prominence,
                                         std::max(opts.min_separation, opts.bin_width));
    *out = new evermap_map{std::move(result), false};
    return EVERMAP_OK;
  });
}

void evermap_map_free(evermap_map* map) { delete map; }

int evermap_map_selected_k(const evermap_map* map) {
  return map == nullptr ? 0 : map->result.report.selected_k;
}

double evermap_map_rss(const evermap_map* map) {
  return map == nullptr ? 0.0 : map->result.report.rss;
}

int evermap_map_converged(const evermap_map* map) {
  return map != nullptr && map->result.report.converged ? 1 : 0;
}

size_t evermap_map_estimate_count(const evermap_map* map) {
  return map == nullptr ? 0 : map->result.report.estimates.size();
}

evermap_status evermap_map_estimate(const evermap_map* map, size_t index,
                                    evermap_estimate* out) {
  if (map == nullptr) return null_argument("map");
  if (out == nullptr) return null_argument("out");
  const auto& est = map->result.report.estimates;
  if (index >= est.size()) return fail(EVERMAP_ERR_OUT_OF_RANGE, "estimate index out of range");
  out->s = est[index].s;
  out->strength = est[index].strength;
  return EVERMAP_OK;
}

size_t evermap_map_peak_count(const evermap_map* map) {
  return map == nullptr ? 0 : map->result.peaks.size();
}

size_t evermap_map_bin_count(const evermap_map* map) {
  return map == nullptr ? 0 : map->result.profile.bins.size();
}

evermap_status evermap_map_bin(const evermap_map* map, size_t index, evermap_bin* out) {
  if (map == nullptr) return null_argument("map");
  if (out == nullptr) return null_argument("out");
  const auto& bins = map->result.profile.bins;
  if (index >= bins.size()) return fail(EVERMAP_ERR_OUT_OF_RANGE, "bin index out of range");
  out->s_center = bins[index].s_center;
  out->mean_reading = bins[index].mean_reading;
  out->n = bins[index].n;
  out->phase = static_cast<int>(bins[index].phase);
  return EVERMAP_OK;
}

evermap_status evermap_map_report_text(const evermap_map* map, char** out) {
  if (map == nullptr) return null_argument("map");
  if (out == nullptr) return null_argument("out");
  if (!map->fitted) return fail(EVERMAP_ERR_INVALID_ARGUMENT, "map holds no fit");
  return guarded([&] {
    *out = duplicate(evermap::format_text_report(map->result));
    return EVERMAP_OK;
  });
}

evermap_status evermap_map_report_kv(const evermap_map* map, char** out) {
  if (map == nullptr) return null_argument("map");
  if (out == nullptr) return null_argument("out");
  if (!map->fitted) return fail(EVERMAP_ERR_INVALID_ARGUMENT, "map holds no fit");
  return guarded([&] {
    *out = duplicate(evermap::format_kv_report(map->result));
    return EVERMAP_OK;
  });
}

evermap_status evermap_map_svg(const evermap_map* map, char** out) {
  if (map == nullptr) return null_argument("map");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = duplicate(evermap::render_profile_svg(map->result.profile, map->result.peaks));
    return EVERMAP_OK;
  });
}

}  // extern "C"

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

/*
 * C interface to the evermap library: pipe routes, eversion-robot
 * kinematics, simulated sensor traces and source localisation.
 *
 * Every object is an opaque handle released with its matching *_free
 * function (NULL is accepted). Functions that can fail return an
 * evermap_status; on failure evermap_last_error() describes the most recent
 * error raised on the calling thread. Strings returned through `char**`
 * are heap allocated and must be released with evermap_string_free().
 *
 * Handles are immutable after construction except evermap_trace (append)
 * and evermap_decoder; distinct handles may be used from different threads
 * concurrently.
 */
#ifndef EVERMAP_EVERMAP_H_
#define EVERMAP_EVERMAP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(EVERMAP_BUILDING_LIBRARY)
#define EVERMAP_API __declspec(dllexport)
#else
#define EVERMAP_API __declspec(dllimport)
#endif
#else
#define EVERMAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum evermap_status {
  EVERMAP_OK = 0,
  EVERMAP_ERR_INVALID_ARGUMENT = 1,
  EVERMAP_ERR_PARSE = 2,
  EVERMAP_ERR_INFEASIBLE = 3,
  EVERMAP_ERR_NO_IN_PIPE_SAMPLES = 4,
  EVERMAP_ERR_OUT_OF_RANGE = 5,
  EVERMAP_ERR_ILL_POSED = 6,
  EVERMAP_ERR_NUMERIC = 7,
  EVERMAP_ERR_IO = 8,
  EVERMAP_ERR_INTERNAL = 9,
  /* Decoder has no complete frame buffered. Not an error. */
  EVERMAP_END = 10
} evermap_status;

typedef struct evermap_route evermap_route;
typedef struct evermap_robot evermap_robot;
typedef struct evermap_scene evermap_scene;
typedef struct evermap_trace evermap_trace;
typedef struct evermap_decoder evermap_decoder;
typedef struct evermap_map evermap_map;

EVERMAP_API const char* evermap_version(void);
EVERMAP_API const char* evermap_status_name(evermap_status status);
EVERMAP_API const char* evermap_last_error(void);
EVERMAP_API void evermap_string_free(char* str);

/* ---- routes ------------------------------------------------------------ */

typedef enum evermap_feature_kind {
  EVERMAP_FEATURE_SHARP_BEND = 0,
  EVERMAP_FEATURE_SWEPT_BEND = 1,
  EVERMAP_FEATURE_CONSTRICTION = 2
} evermap_feature_kind;

typedef struct evermap_feature {
  double s;
  evermap_feature_kind kind;
  double angle_deg;
  double bore;
} evermap_feature;

EVERMAP_API evermap_status evermap_route_load(const char* path, evermap_route** out);
/* `source_name` labels diagnostics and defaults the route name. */
EVERMAP_API evermap_status evermap_route_parse(const char* text, const char* source_name,
                                               evermap_route** out);
EVERMAP_API void evermap_route_free(evermap_route* route);
EVERMAP_API double evermap_route_length(const evermap_route* route);
EVERMAP_API evermap_status evermap_route_pose_at(const evermap_route* route, double s,
                                                 double position[3], double tangent[3]);
EVERMAP_API evermap_status evermap_route_bore_at(const evermap_route* route, double s,
                                                 double* bore);
EVERMAP_API size_t evermap_route_feature_count(const evermap_route* route);
EVERMAP_API evermap_status evermap_route_feature(const evermap_route* route, size_t index,
                                                 evermap_feature* out);

/* ---- robots ------------------------------------------------------------ */

typedef enum evermap_material {
  EVERMAP_MATERIAL_FABRIC = 0,
  EVERMAP_MATERIAL_PLASTIC = 1
} evermap_material;

typedef struct evermap_robot_info {
  double sleeve_length;
  double flat_diameter;
  evermap_material material;
  double drum_radius;
  int64_t ticks_per_rev;
  double payout_ratio;
  double max_sharp_bend_deg;
  double min_bore_ratio;
} evermap_robot_info;

EVERMAP_API evermap_status evermap_robot_load(const char* path, evermap_robot** out);
EVERMAP_API evermap_status evermap_robot_parse(const char* text, const char* source_name,
                                               evermap_robot** out);
EVERMAP_API void evermap_robot_free(evermap_robot* robot);
EVERMAP_API evermap_status evermap_robot_get_info(const evermap_robot* robot,
                                                  evermap_robot_info* out);
EVERMAP_API evermap_status evermap_extension_from_ticks(const evermap_robot* robot,
                                                        int64_t ticks, double* extension);
/* Sensor arc position; negative while the sealed end is outside the pipe. */
EVERMAP_API evermap_status evermap_sensor_position(const evermap_robot* robot,
                                                   double extension, double* sensor_s);

/* ---- scenes (planted sources + sensor model) ----------------------------- */

/* `route` may be NULL; when given, source positions are range checked. */
EVERMAP_API evermap_status evermap_scene_load(const char* path, const evermap_route* route,
                                              evermap_scene** out);
EVERMAP_API evermap_status evermap_scene_parse(const char* text, const char* source_name,
                                               const evermap_route* route,
                                               evermap_scene** out);
EVERMAP_API void evermap_scene_free(evermap_scene* scene);
EVERMAP_API size_t evermap_scene_source_count(const evermap_scene* scene);

/* ---- feasibility ------------------------------------------------------- */

typedef enum evermap_block_reason {
  EVERMAP_BLOCK_NONE = 0,
  EVERMAP_BLOCK_SHARP_BEND = 1,
  EVERMAP_BLOCK_BORE = 2
} evermap_block_reason;

typedef struct evermap_verdict {
  int feasible;
  double blocker_s;
  size_t blocker_segment;
  evermap_block_reason reason;
  char description[192];
} evermap_verdict;

EVERMAP_API evermap_status evermap_check_feasibility(const evermap_robot* robot,
                                                     const evermap_route* route,
                                                     evermap_verdict* out);

/* ---- traces ------------------------------------------------------------ */

typedef struct evermap_sample {
  int64_t t_ms;
  int64_t encoder_ticks;
  int64_t sensor_raw;
} evermap_sample;

EVERMAP_API evermap_status evermap_trace_new(evermap_trace** out);
EVERMAP_API void evermap_trace_free(evermap_trace* trace);
EVERMAP_API evermap_status evermap_trace_append(evermap_trace* trace, evermap_sample sample);
EVERMAP_API evermap_status evermap_trace_set_meta(evermap_trace* trace, const char* key,
                                                  const char* value);
EVERMAP_API size_t evermap_trace_size(const evermap_trace* trace);
EVERMAP_API evermap_status evermap_trace_sample(const evermap_trace* trace, size_t index,
                                                evermap_sample* out);
EVERMAP_API evermap_status evermap_trace_parse(const char* data, size_t length,
                                               evermap_trace** out);
EVERMAP_API evermap_status evermap_trace_load(const char* path, evermap_trace** out);
EVERMAP_API evermap_status evermap_trace_save(const evermap_trace* trace, const char* path);
EVERMAP_API evermap_status evermap_trace_to_csv(const evermap_trace* trace, char** out,
                                                size_t* length);

/* Newline-framed live feed. Feed bytes in any chunking, then drain with
 * evermap_decoder_next until it returns EVERMAP_END. A malformed frame
 * yields exactly one EVERMAP_ERR_PARSE and decoding resumes after it. */
EVERMAP_API evermap_status evermap_decoder_new(evermap_decoder** out);
EVERMAP_API void evermap_decoder_free(evermap_decoder* decoder);
EVERMAP_API evermap_status evermap_decoder_feed(evermap_decoder* decoder, const char* bytes,
                                                size_t length);
EVERMAP_API evermap_status evermap_decoder_next(evermap_decoder* decoder,
                                                evermap_sample* out);
EVERMAP_API size_t evermap_decoder_error_count(const evermap_decoder* decoder);

/* ---- simulation -------------------------------------------------------- */

typedef struct evermap_sim_options {
  uint64_t seed;
  double sample_rate_hz;
  double crank_speed_mps;
} evermap_sim_options;

EVERMAP_API void evermap_sim_options_init(evermap_sim_options* options);

/* Returns EVERMAP_ERR_INFEASIBLE, still setting *out to the partial trace
 * that ends with the tip at the blocker. `verdict` may be NULL. */
EVERMAP_API evermap_status evermap_simulate(const evermap_route* route,
                                            const evermap_robot* robot,
                                            const evermap_scene* scene,
                                            const evermap_sim_options* options,
                                            evermap_trace** out, evermap_verdict* verdict);

/* ---- mapping ----------------------------------------------------------- */

typedef enum evermap_source_kind {
  EVERMAP_SOURCE_MAGNETIC_DIPOLE = 0,
  EVERMAP_SOURCE_GAMMA_POINT = 1
} evermap_source_kind;

typedef struct evermap_map_options {
  double bin_width_m;
  int include_retract;
  int kmax;
  double min_prominence;    /* < 0: derived from the profile noise */
  double min_separation_m;
  double strength_floor;    /* < 0: derived from min_prominence */
  evermap_source_kind kind;
  double lateral_offset_m;  /* < 0: sources sit on the pipe wall */
} evermap_map_options;

typedef struct evermap_bin {
  double s_center;
  double mean_reading;
  size_t n;
  int phase; /* 0 extend, 1 retract, 2 mixed */
} evermap_bin;

typedef struct evermap_estimate {
  double s;
  double strength;
} evermap_estimate;

EVERMAP_API void evermap_map_options_init(evermap_map_options* options);

/* Builds the profile, detects peaks and fits sources. `scene` supplies the
 * sensor calibration and attenuation and may be NULL for defaults. */
EVERMAP_API evermap_status evermap_localize(const evermap_trace* trace,
                                            const evermap_robot* robot,
                                            const evermap_route* route,
                                            const evermap_scene* scene,
                                            const evermap_map_options* options,
                                            evermap_map** out);

/* Profile and peaks only; no fit. Used for plotting. */
EVERMAP_API evermap_status evermap_profile(const evermap_trace* trace,
                                           const evermap_robot* robot,
                                           const evermap_scene* scene,
                                           const evermap_map_options* options,
                                           evermap_map** out);

EVERMAP_API void evermap_map_free(evermap_map* map);
EVERMAP_API int evermap_map_selected_k(const evermap_map* map);
EVERMAP_API double evermap_map_rss(const evermap_map* map);
EVERMAP_API int evermap_map_converged(const evermap_map* map);
EVERMAP_API size_t evermap_map_estimate_count(const evermap_map* map);
EVERMAP_API evermap_status evermap_map_estimate(const evermap_map* map, size_t index,
                                                evermap_estimate* out);
EVERMAP_API size_t evermap_map_peak_count(const evermap_map* map);
EVERMAP_API size_t evermap_map_bin_count(const evermap_map* map);
EVERMAP_API evermap_status evermap_map_bin(const evermap_map* map, size_t index,
                                           evermap_bin* out);
EVERMAP_API evermap_status evermap_map_report_text(const evermap_map* map, char** out);
EVERMAP_API evermap_status evermap_map_report_kv(const evermap_map* map, char** out);
EVERMAP_API evermap_status evermap_map_svg(const evermap_map* map, char** out);

#ifdef __cplusplus
}
#endif

#endif /* EVERMAP_EVERMAP_H_ */

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

#ifndef EVERMAP_FORMAT_HPP_
#define EVERMAP_FORMAT_HPP_

#include <string>

#include "evermap/mapping.hpp"

namespace evermap {

// Fixed nine-significant-digit rendering used by every text artifact.
std::string format_number(double value);

// Human-readable summary of a localisation run.
std::string format_text_report(const LocalizeResult& result);

// `key=value` lines: selected_k, rss, converged, n_iterations, then
// source.<i>.s_m / source.<i>.strength for i = 1..selected_k.
std::string format_kv_report(const LocalizeResult& result);

// Static SVG of reading against sensor arc position with one
// `class="peak-marker"` circle per detected peak.
std::string render_profile_svg(const Profile& profile, const std::vector<Peak>& peaks);

}  // namespace evermap

#endif  // EVERMAP_FORMAT_HPP_

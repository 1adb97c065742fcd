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

#include "evermap/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace evermap {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 780.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 350.0;

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string format_text_report(const LocalizeResult& result) {
  std::ostringstream os;
  const FitReport& fit = result.report;
  os << "evermap source map\n";
  os << "bins: " << result.profile.bins.size() << " of width "
     << format_number(result.profile.bin_width) << " m, s in ["
     << format_number(result.profile.span_begin()) << ", "
     << format_number(result.profile.span_end()) << "] m\n";
  os << "noise estimate: " << format_number(result.noise_sigma)
     << ", peak threshold: " << format_number(result.min_prominence) << "\n";
  os << "peaks detected: " << result.peaks.size() << "\n";
  for (const Peak& p : result.peaks) {
    os << "  s=" << format_number(p.s) << " m  height=" << format_number(p.height)
       << "  prominence=" << format_number(p.prominence) << "\n";
  }
  if (fit.estimates.empty()) {
    os << "no sources found\n";
  } else {
    os << "sources: " << fit.selected_k << "\n";
    for (std::size_t i = 0; i < fit.estimates.size(); ++i) {
      const SourceEstimate& e = fit.estimates[i];
      os << "  #" << (i + 1) << "  s=" << format_number(e.s)
         << " m  strength=" << format_number(e.strength) << " (" << to_string(e.kind)
         << ")\n";
    }
  }
  if (result.suppressed > 0) {
    os << "suppressed below strength floor: " << result.suppressed << "\n";
  }
  os << "rss: " << format_number(fit.rss) << "  iterations: " << fit.n_iterations
     << "  converged: " << (fit.converged ? "yes" : "no") << "\n";
  return os.str();
}

std::string format_kv_report(const LocalizeResult& result) {
  std::ostringstream os;
  const FitReport& fit = result.report;
  os << "selected_k=" << fit.selected_k << "\n";
  os << "rss=" << format_number(fit.rss) << "\n";
  os << "converged=" << (fit.converged ? 1 : 0) << "\n";
  os << "n_iterations=" << fit.n_iterations << "\n";
  for (std::size_t i = 0; i < fit.estimates.size(); ++i) {
    const std::string prefix = "source." + std::to_string(i + 1) + ".";
    os << prefix << "s_m=" << format_number(fit.estimates[i].s) << "\n";
    os << prefix << "strength=" << format_number(fit.estimates[i].strength) << "\n";
    os << prefix << "kind=" << to_string(fit.estimates[i].kind) << "\n";
  }
  return os.str();
}

std::string render_profile_svg(const Profile& profile, const std::vector<Peak>& peaks) {
  double s0 = 0.0, s1 = 1.0, y0 = 0.0, y1 = 1.0;
  if (!profile.empty()) {
    s0 = profile.span_begin();
    s1 = profile.span_end();
    const auto [lo, hi] = std::minmax_element(
        profile.bins.begin(), profile.bins.end(),
        [](const ProfileBin& a, const ProfileBin& b) { return a.mean_reading < b.mean_reading; });
    y0 = lo->mean_reading;
    y1 = hi->mean_reading;
  }
  if (y1 - y0 <= 0.0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double s) { return kLeft + (s - s0) / (s1 - s0) * (kRight - kLeft); };
  auto py = [&](double y) { return kBottom - (y - y0) / (y1 - y0) * (kBottom - kTop); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(kWidth)
     << "\" height=\"" << format_number(kHeight) << "\" viewBox=\"0 0 "
     << format_number(kWidth) << " " << format_number(kHeight) << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << format_number(kWidth) << "\" height=\""
     << format_number(kHeight) << "\" fill=\"white\"/>\n";
  os << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << format_number(kLeft) << "\" y1=\"" << format_number(kBottom)
     << "\" x2=\"" << format_number(kRight) << "\" y2=\"" << format_number(kBottom) << "\"/>\n";
  os << "<line x1=\"" << format_number(kLeft) << "\" y1=\"" << format_number(kTop)
     << "\" x2=\"" << format_number(kLeft) << "\" y2=\"" << format_number(kBottom) << "\"/>\n";
  os << "</g>\n";

  os << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double s = s0 + (s1 - s0) * i / 4.0;
    const double y = y0 + (y1 - y0) * i / 4.0;
    os << "<text x=\"" << format_number(px(s)) << "\" y=\"" << format_number(kBottom + 16)
       << "\" text-anchor=\"middle\">" << format_number(s) << "</text>\n";
    os << "<text x=\"" << format_number(kLeft - 6) << "\" y=\"" << format_number(py(y) + 4)
       << "\" text-anchor=\"end\">" << format_number(y) << "</text>\n";
  }
  os << "<text x=\"" << format_number(0.5 * (kLeft + kRight)) << "\" y=\""
     << format_number(kHeight - 12)
     << "\" text-anchor=\"middle\">sensor arc position (m)</text>\n";
  os << "<text x=\"16\" y=\"" << format_number(0.5 * (kTop + kBottom))
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << format_number(0.5 * (kTop + kBottom)) << ")\">reading</text>\n";
  os << "</g>\n";

  os << "<polyline class=\"profile\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < profile.bins.size(); ++i) {
    if (i > 0) os << ' ';
    os << format_number(px(profile.bins[i].s_center)) << ','
       << format_number(py(profile.bins[i].mean_reading));
  }
  os << "\"/>\n";
  for (const Peak& p : peaks) {
    os << "<circle class=\"peak-marker\" cx=\"" << format_number(px(p.s)) << "\" cy=\""
       << format_number(py(p.height)) << "\" r=\"4\" fill=\"none\" stroke=\"crimson\" "
       << "stroke-width=\"1.5\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace evermap

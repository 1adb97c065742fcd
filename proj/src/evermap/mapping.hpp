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

#ifndef EVERMAP_MAPPING_HPP_
#define EVERMAP_MAPPING_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "evermap/acquisition.hpp"
#include "evermap/route.hpp"
#include "evermap/sensor.hpp"

namespace evermap {

struct Peak {
  double s = 0.0;
  double height = 0.0;
  double prominence = 0.0;
  double width = 0.0;  // full width at half prominence, m
  std::size_t bin = 0;
};

struct SourceEstimate {
  double s = 0.0;
  double strength = 0.0;
  SourceKind kind = SourceKind::kMagneticDipole;
};

struct FitReport {
  std::vector<SourceEstimate> estimates;  // sorted by s
  double rss = 0.0;
  int n_iterations = 0;
  bool converged = false;
  int selected_k = 0;
  // rss after every accepted step, starting with the seed.
  std::vector<double> rss_history;
  // Information criterion per k (index 0 is k = 1); select_model only.
  std::vector<double> criterion;
};

// Forward model shared by the inversion and the oracle: the same geometry
// the simulator uses, so a sensor at s_bin sees a source on the wall at s_j.
struct FieldModel {
  const PipeRoute* route = nullptr;
  SourceKind kind = SourceKind::kMagneticDipole;
  std::optional<double> lateral_offset;  // unset: half the local bore
  double mu = 0.0;
  double distance_floor = 1e-3;
  double baseline = 0.0;
  // > 0: a bin reports the mean over [s - w/2, s + w/2] rather than the
  // value at its centre, which is what binning a moving sensor produces.
  double bin_width = 0.0;

  // Reading per unit strength for a source at `source_s` seen from `sensor_s`.
  double unit_response(double source_s, double sensor_s) const;
  // As above, averaged over the bin centred on `sensor_s` when bin_width > 0.
  double bin_response(double source_s, double sensor_s) const;
  // Expected bin reading, baseline included.
  double predict(std::span<const SourceEstimate> sources, double sensor_s) const;
};

// Local maxima with prominence >= min_prominence; of maxima closer than
// min_separation the higher survives (ties: smaller s). Sorted by s.
std::vector<Peak> detect_peaks(const Profile& profile, double min_prominence,
                               double min_separation);

// Damped Gauss-Newton (Levenberg-Marquardt) over k (position, log strength)
// pairs. Throws Error(kIllPosed) if k > bins / 2 and Error(kNumeric) on
// non-finite readings.
FitReport fit_sources(const Profile& profile, int k, const FieldModel& model,
                      std::span<const Peak> seeds);

// Fits k = 1..kmax and keeps the lowest n ln(rss/n) + 2k ln n.
FitReport select_model(const Profile& profile, int kmax, const FieldModel& model,
                       std::span<const Peak> seeds);

// Exhaustive search over k-subsets of grid positions with non-negative
// least-squares strengths. k must be 1 or 2.
FitReport grid_oracle(const Profile& profile, int k, const FieldModel& model,
                      double grid_step);

// Residual sum of squares of a candidate set against a profile.
double residual_sum_of_squares(const Profile& profile, const FieldModel& model,
                               std::span<const SourceEstimate> sources);

// Robust per-bin noise estimate from the median absolute first difference.
double estimate_noise(const Profile& profile);

struct LocalizeOptions {
  SensorConfig sensor;
  SourceKind kind = SourceKind::kMagneticDipole;
  std::optional<double> lateral_offset;
  double mu = 0.0;
  double bin_width = kDefaultBinWidth;
  bool include_retract = false;
  int kmax = 4;
  double min_prominence = -1.0;  // < 0: derived from the noise estimate
  double min_separation = 0.05;
  double strength_floor = -1.0;  // < 0: peak amplitude below min_prominence
};

struct LocalizeResult {
  Profile profile;  // in reading units
  std::vector<Peak> peaks;
  FitReport report;
  double min_prominence = 0.0;
  double noise_sigma = 0.0;
  std::size_t suppressed = 0;  // estimates dropped below the strength floor
};

// Trace to profile to peaks to model selection. Estimates weaker than the
// strength floor are removed and selected_k reflects what remains.
LocalizeResult localize(const Trace& trace, const DrumConfig& drum,
                        const RobotProfile& robot, const PipeRoute& route,
                        const LocalizeOptions& options);

double auto_min_prominence(const Profile& profile, const SensorConfig& sensor);

}  // namespace evermap

#endif  // EVERMAP_MAPPING_HPP_

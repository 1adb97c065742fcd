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

#include "evermap/mapping.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "evermap/error.hpp"

namespace evermap {
namespace {

constexpr int kMaxIterations = 200;
constexpr double kRelativeTolerance = 1e-10;
constexpr double kFdStep = 1e-6;
constexpr double kMaxDamping = 1e16;
constexpr double kLogStrengthLimit = 700.0;
constexpr std::size_t kMaxOracleCandidates = 1'000'000;

// Gauss-Legendre nodes and weights on [-1/2, 1/2], weights summing to 1.
constexpr std::array<double, 5> kBinNodes = {
    -0.45308992296933199640, -0.26923465505284154552, 0.0,
    0.26923465505284154552, 0.45308992296933199640};
constexpr std::array<double, 5> kBinWeights = {
    0.11846344252809454376, 0.23931433524968323402, 0.28444444444444444444,
    0.23931433524968323402, 0.11846344252809454376};

// Offsets and weights used to evaluate one bin.
std::vector<std::pair<double, double>> bin_rule(const FieldModel& model) {
  if (!(model.bin_width > 0.0)) return {{0.0, 1.0}};
  std::vector<std::pair<double, double>> rule;
  for (std::size_t q = 0; q < kBinNodes.size(); ++q) {
    rule.emplace_back(kBinNodes[q] * model.bin_width, kBinWeights[q]);
  }
  return rule;
}

// Caches the sensor locations of every bin so each model evaluation only
// has to place the sources.
class Evaluator {
 public:
  Evaluator(const Profile& profile, const FieldModel& model)
      : model_(model), rule_(bin_rule(model)) {
    if (model.route == nullptr) {
      throw Error(ErrorKind::kInvalidArgument, "field model has no route");
    }
    if (!(model.bin_width >= 0.0) || !std::isfinite(model.bin_width)) {
      throw Error(ErrorKind::kInvalidArgument, "field model bin width must be >= 0");
    }
    const double length = model.route->total_length();
    sensors_.reserve(profile.bins.size() * rule_.size());
    observed_.resize(static_cast<Eigen::Index>(profile.bins.size()));
    for (std::size_t i = 0; i < profile.bins.size(); ++i) {
      const ProfileBin& bin = profile.bins[i];
      if (!std::isfinite(bin.mean_reading) || !std::isfinite(bin.s_center)) {
        throw Error(ErrorKind::kNumeric, "profile contains non-finite values");
      }
      for (const auto& [offset, weight] : rule_) {
        sensors_.push_back(sensor_point(*model.route, std::min(bin.s_center + offset, length)));
      }
      observed_[static_cast<Eigen::Index>(i)] = bin.mean_reading - model.baseline;
    }
  }

  Eigen::Index size() const { return observed_.size(); }
  const Eigen::VectorXd& observed() const { return observed_; }

  // Column of per-unit-strength responses for a source at `s`.
  Eigen::VectorXd response(double s) const {
    Source src;
    src.s = s;
    src.kind = model_.kind;
    src.lateral_offset = model_.lateral_offset;
    const Eigen::Vector3d wall = source_point(*model_.route, src);
    Eigen::VectorXd col(size());
    std::size_t p = 0;
    for (Eigen::Index i = 0; i < size(); ++i) {
      double sum = 0.0;
      for (const auto& node : rule_) {
        const double d = (sensors_[p++] - wall).norm();
        sum += node.second * kernel(model_.kind, d, model_.mu, model_.distance_floor);
      }
      col[i] = sum;
    }
    return col;
  }

  // d(response)/ds by central difference, one-sided at the route ends.
  Eigen::VectorXd response_slope(double s) const {
    const double length = model_.route->total_length();
    const double hi = std::min(s + kFdStep, length);
    const double lo = std::max(s - kFdStep, 0.0);
    return (response(hi) - response(lo)) / (hi - lo);
  }

 private:
  const FieldModel& model_;
  std::vector<std::pair<double, double>> rule_;
  std::vector<Eigen::Vector3d> sensors_;
  Eigen::VectorXd observed_;
};

struct Bounds {
  double lo = 0.0;
  double hi = 0.0;
};

Bounds position_bounds(const Profile& profile, const PipeRoute& route) {
  Bounds b;
  b.lo = std::max(0.0, profile.bins.front().s_center - profile.bin_width);
  b.hi = std::min(route.total_length(),
                  profile.bins.back().s_center + profile.bin_width);
  if (b.hi < b.lo) b.hi = b.lo;
  return b;
}

// params = [s_0, log C_0, s_1, log C_1, ...]
Eigen::VectorXd residuals(const Evaluator& ev, const Eigen::VectorXd& params) {
  Eigen::VectorXd r = ev.observed();
  for (Eigen::Index j = 0; j < params.size() / 2; ++j) {
    r -= std::exp(params[2 * j + 1]) * ev.response(params[2 * j]);
  }
  return r;
}

Eigen::MatrixXd jacobian(const Evaluator& ev, const Eigen::VectorXd& params) {
  Eigen::MatrixXd jac(ev.size(), params.size());
  for (Eigen::Index j = 0; j < params.size() / 2; ++j) {
    const double strength = std::exp(params[2 * j + 1]);
    jac.col(2 * j) = -strength * ev.response_slope(params[2 * j]);
    jac.col(2 * j + 1) = -strength * ev.response(params[2 * j]);
  }
  return jac;
}

void clamp_params(Eigen::VectorXd& params, const Bounds& bounds) {
  for (Eigen::Index j = 0; j < params.size() / 2; ++j) {
    params[2 * j] = std::clamp(params[2 * j], bounds.lo, bounds.hi);
    params[2 * j + 1] =
        std::clamp(params[2 * j + 1], -kLogStrengthLimit, kLogStrengthLimit);
  }
}

struct Seed {
  double s;
  double height;
  double width;
};

// Picks k seed positions, splitting the widest seed while there are too few.
std::vector<Seed> choose_seeds(const Profile& profile, const FieldModel& model,
                               std::span<const Peak> peaks, int k) {
  std::vector<Peak> ranked(peaks.begin(), peaks.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const Peak& a, const Peak& b) {
    return a.prominence > b.prominence;
  });
  std::vector<Seed> seeds;
  for (const Peak& p : ranked) {
    if (static_cast<int>(seeds.size()) == k) break;
    seeds.push_back({p.s, p.height, std::max(p.width, 2.0 * profile.bin_width)});
  }
  if (seeds.empty()) {
    const auto it = std::max_element(
        profile.bins.begin(), profile.bins.end(),
        [](const ProfileBin& a, const ProfileBin& b) {
          return a.mean_reading < b.mean_reading;
        });
    seeds.push_back({it->s_center, it->mean_reading, 4.0 * profile.bin_width});
  }
  while (static_cast<int>(seeds.size()) < k) {
    const auto widest = std::max_element(
        seeds.begin(), seeds.end(),
        [](const Seed& a, const Seed& b) { return a.width < b.width; });
    Seed left = *widest;
    Seed right = *widest;
    left.s -= 0.25 * widest->width;
    right.s += 0.25 * widest->width;
    left.width = right.width = 0.5 * widest->width;
    left.height = right.height = model.baseline + 0.5 * (widest->height - model.baseline);
    *widest = left;
    seeds.push_back(right);
  }
  std::sort(seeds.begin(), seeds.end(),
            [](const Seed& a, const Seed& b) { return a.s < b.s; });
  return seeds;
}

// Initial strengths: least squares at the seed positions, falling back to the
// seed height for any component that comes out non-positive.
Eigen::VectorXd initial_params(const Evaluator& ev, const FieldModel& model,
                               const std::vector<Seed>& seeds, const Bounds& bounds) {
  const auto k = static_cast<Eigen::Index>(seeds.size());
  Eigen::MatrixXd design(ev.size(), k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double s = std::clamp(seeds[static_cast<std::size_t>(j)].s, bounds.lo, bounds.hi);
    design.col(j) = ev.response(s);
  }
  const Eigen::VectorXd linear = design.colPivHouseholderQr().solve(ev.observed());
  const double scale = std::max(ev.observed().cwiseAbs().maxCoeff(), 1e-300);

  Eigen::VectorXd params(2 * k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const Seed& seed = seeds[static_cast<std::size_t>(j)];
    const double s = std::clamp(seed.s, bounds.lo, bounds.hi);
    double strength = linear[j];
    if (!(strength > 0.0) || !std::isfinite(strength)) {
      const double peak_response = model.bin_response(s, s);
      const double amplitude = std::max(seed.height - model.baseline, 1e-6 * scale);
      strength = amplitude / peak_response;
    }
    params[2 * j] = s;
    params[2 * j + 1] = std::log(strength);
  }
  clamp_params(params, bounds);
  return params;
}

FitReport make_report(const Eigen::VectorXd& params, SourceKind kind) {
  FitReport report;
  for (Eigen::Index j = 0; j < params.size() / 2; ++j) {
    report.estimates.push_back({params[2 * j], std::exp(params[2 * j + 1]), kind});
  }
  std::sort(report.estimates.begin(), report.estimates.end(),
            [](const SourceEstimate& a, const SourceEstimate& b) { return a.s < b.s; });
  report.selected_k = static_cast<int>(params.size() / 2);
  return report;
}

void check_profile(const Profile& profile) {
  if (profile.bins.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "profile is empty");
  }
}

}  // namespace

double FieldModel::unit_response(double source_s, double sensor_s) const {
  Source src;
  src.s = source_s;
  src.kind = kind;
  src.lateral_offset = lateral_offset;
  const double d = sensor_distance(*route, src, std::min(sensor_s, route->total_length()));
  return evermap::kernel(kind, d, mu, distance_floor);
}

double FieldModel::bin_response(double source_s, double sensor_s) const {
  const double length = route->total_length();
  double sum = 0.0;
  for (const auto& [offset, weight] : bin_rule(*this)) {
    sum += weight * unit_response(source_s, std::min(sensor_s + offset, length));
  }
  return sum;
}

double FieldModel::predict(std::span<const SourceEstimate> sources,
                           double sensor_s) const {
  double sum = baseline;
  for (const SourceEstimate& e : sources) {
    sum += e.strength * bin_response(e.s, sensor_s);
  }
  return sum;
}

double residual_sum_of_squares(const Profile& profile, const FieldModel& model,
                               std::span<const SourceEstimate> sources) {
  double rss = 0.0;
  for (const ProfileBin& bin : profile.bins) {
    const double r = bin.mean_reading - model.predict(sources, bin.s_center);
    rss += r * r;
  }
  return rss;
}

std::vector<Peak> detect_peaks(const Profile& profile, double min_prominence,
                               double min_separation) {
  check_profile(profile);
  if (!(min_separation >= profile.bin_width)) {
    throw Error(ErrorKind::kInvalidArgument,
                "minimum peak separation must be at least one bin");
  }
  const std::size_t n = profile.bins.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = profile.bins[i].mean_reading;

  std::vector<Peak> candidates;
  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(y[i - 1] < y[i])) {
      ++i;
      continue;
    }
    // A plateau counts once, at its left edge.
    std::size_t j = i;
    while (j + 1 < n && y[j + 1] == y[i]) ++j;
    if (j + 1 < n && y[j + 1] < y[i]) {
      const double height = y[i];
      double left_min = height;
      for (std::size_t a = i; a-- > 0 && y[a] <= height;) left_min = std::min(left_min, y[a]);
      double right_min = height;
      for (std::size_t b = j + 1; b < n && y[b] <= height; ++b) {
        right_min = std::min(right_min, y[b]);
      }
      const double prominence = height - std::max(left_min, right_min);

      // Width at half prominence, interpolated between bins.
      const double ref = height - 0.5 * prominence;
      double left_s = profile.bins[i].s_center;
      for (std::size_t a = i; a-- > 0;) {
        if (y[a] < ref) {
          const double t = (ref - y[a]) / (y[a + 1] - y[a]);
          left_s = profile.bins[a].s_center +
                   t * (profile.bins[a + 1].s_center - profile.bins[a].s_center);
          break;
        }
        left_s = profile.bins[a].s_center;
      }
      double right_s = profile.bins[j].s_center;
      for (std::size_t b = j + 1; b < n; ++b) {
        if (y[b] < ref) {
          const double t = (y[b - 1] - ref) / (y[b - 1] - y[b]);
          right_s = profile.bins[b - 1].s_center +
                    t * (profile.bins[b].s_center - profile.bins[b - 1].s_center);
          break;
        }
        right_s = profile.bins[b].s_center;
      }
      if (prominence >= min_prominence) {
        candidates.push_back({profile.bins[i].s_center, height, prominence,
                              right_s - left_s, i});
      }
    }
    i = j + 1;
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Peak& a, const Peak& b) {
                     if (a.height != b.height) return a.height > b.height;
                     return a.s < b.s;
                   });
  std::vector<Peak> kept;
  for (const Peak& c : candidates) {
    const bool clear = std::none_of(kept.begin(), kept.end(), [&](const Peak& k) {
      return std::abs(k.s - c.s) < min_separation;
    });
    if (clear) kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Peak& a, const Peak& b) { return a.s < b.s; });
  return kept;
}

namespace {

// Damped Gauss-Newton from `params`; see fit_sources for the contract.
FitReport levenberg_marquardt(const Evaluator& ev, const FieldModel& model,
                              const Bounds& bounds, Eigen::VectorXd params) {
  double rss = residuals(ev, params).squaredNorm();

  FitReport report;
  report.rss_history.push_back(rss);
  double damping = 1e-3;
  int iteration = 0;
  bool converged = false;
  while (iteration < kMaxIterations && !converged) {
    ++iteration;
    if (rss == 0.0) {
      converged = true;
      break;
    }
    const Eigen::VectorXd r = residuals(ev, params);
    const Eigen::MatrixXd jac = jacobian(ev, params);
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd gradient = jac.transpose() * r;
    Eigen::VectorXd scaling = normal.diagonal();
    const double diag_floor = std::max(scaling.maxCoeff(), 1e-300) * 1e-12;
    scaling = scaling.cwiseMax(diag_floor);

    bool accepted = false;
    while (!accepted) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal() += damping * scaling;
      Eigen::VectorXd trial = params + damped.ldlt().solve(-gradient);
      clamp_params(trial, bounds);
      const double trial_rss = residuals(ev, trial).squaredNorm();
      if (std::isfinite(trial_rss) && trial_rss < rss) {
        const double improvement = (rss - trial_rss) / rss;
        params = trial;
        rss = trial_rss;
        report.rss_history.push_back(rss);
        damping = std::max(damping / 10.0, 1e-12);
        accepted = true;
        if (improvement < kRelativeTolerance) converged = true;
      } else {
        damping *= 10.0;
        if (damping > kMaxDamping) {
          // No descent direction left at this resolution: stationary point.
          converged = true;
          break;
        }
      }
    }
  }

  FitReport out = make_report(params, model.kind);
  out.rss = rss;
  out.n_iterations = iteration;
  out.converged = converged;
  out.rss_history = std::move(report.rss_history);
  return out;
}

}  // namespace

FitReport fit_sources(const Profile& profile, int k, const FieldModel& model,
                      std::span<const Peak> seeds) {
  check_profile(profile);
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "k must be at least 1");
  if (static_cast<std::size_t>(k) > profile.bins.size() / 2) {
    throw Error(ErrorKind::kIllPosed, "k=" + std::to_string(k) + " exceeds half of " +
                                          std::to_string(profile.bins.size()) +
                                          " bins");
  }
  const Evaluator ev(profile, model);
  const Bounds bounds = position_bounds(profile, *model.route);
  const std::vector<Seed> base = choose_seeds(profile, model, seeds, k);

  // The seeded start, then each seed nudged half a peak width either way;
  // wall positions folded around a sharp bend make single starts fragile.
  FitReport best = levenberg_marquardt(ev, model, bounds,
                                       initial_params(ev, model, base, bounds));
  for (std::size_t j = 0; j < base.size(); ++j) {
    for (double dir : {-0.5, 0.5}) {
      std::vector<Seed> moved = base;
      moved[j].s += dir * base[j].width;
      FitReport trial = levenberg_marquardt(ev, model, bounds,
                                            initial_params(ev, model, moved, bounds));
      if (trial.rss < best.rss) best = std::move(trial);
    }
  }
  return best;
}

FitReport select_model(const Profile& profile, int kmax, const FieldModel& model,
                       std::span<const Peak> seeds) {
  check_profile(profile);
  if (kmax < 1) throw Error(ErrorKind::kInvalidArgument, "kmax must be at least 1");
  const int limit = std::min<int>(kmax, static_cast<int>(profile.bins.size() / 2));
  if (limit < 1) {
    throw Error(ErrorKind::kIllPosed, "profile has too few bins for any fit");
  }
  const double n = static_cast<double>(profile.bins.size());
  // Below this rss differences are rounding, not structure.
  double scale = 0.0;
  for (const ProfileBin& bin : profile.bins) {
    scale = std::max(scale, std::abs(bin.mean_reading - model.baseline));
  }
  const double rss_floor = std::max(n * std::pow(1e-9 * scale, 2.0),
                                    std::numeric_limits<double>::min());

  FitReport best;
  double best_score = std::numeric_limits<double>::infinity();
  std::vector<double> scores;
  for (int k = 1; k <= limit; ++k) {
    FitReport fit = fit_sources(profile, k, model, seeds);
    const double score =
        n * std::log(std::max(fit.rss, rss_floor) / n) + 2.0 * k * std::log(n);
    scores.push_back(score);
    if (score < best_score) {
      best_score = score;
      best = std::move(fit);
    }
  }
  best.criterion = std::move(scores);
  return best;
}

FitReport grid_oracle(const Profile& profile, int k, const FieldModel& model,
                      double grid_step) {
  check_profile(profile);
  if (k < 1 || k > 2) {
    throw Error(ErrorKind::kInvalidArgument, "grid oracle supports k = 1 or 2");
  }
  if (!(grid_step >= profile.bin_width * (1.0 - 1e-12))) {
    throw Error(ErrorKind::kInvalidArgument, "grid step must be at least one bin");
  }
  const Evaluator ev(profile, model);
  const double first = profile.bins.front().s_center;
  const double last = std::min(profile.bins.back().s_center, model.route->total_length());
  const auto m = static_cast<std::size_t>(std::floor((last - first) / grid_step + 1e-9)) + 1;
  const std::size_t candidates = k == 1 ? m : m * (m - 1) / 2;
  if (candidates > kMaxOracleCandidates) {
    throw Error(ErrorKind::kInvalidArgument, "grid oracle would evaluate " +
                                                 std::to_string(candidates) +
                                                 " candidates");
  }

  std::vector<double> grid(m);
  Eigen::MatrixXd design(ev.size(), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    grid[i] = first + static_cast<double>(i) * grid_step;
    design.col(static_cast<Eigen::Index>(i)) = ev.response(grid[i]);
  }
  const Eigen::MatrixXd gram = design.transpose() * design;
  const Eigen::VectorXd proj = design.transpose() * ev.observed();
  const double yy = ev.observed().squaredNorm();

  // rss(c) = yy - 2 c.b + c'Ac, minimised over c >= 0 by trying every
  // active set.
  double best_rss = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_idx;
  std::vector<double> best_strength;
  auto single = [&](std::size_t i, double& c) {
    const double a = gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    c = a > 0.0 ? std::max(proj[static_cast<Eigen::Index>(i)] / a, 0.0) : 0.0;
    return yy - 2.0 * c * proj[static_cast<Eigen::Index>(i)] + c * c * a;
  };
  if (k == 1) {
    for (std::size_t i = 0; i < m; ++i) {
      double c;
      const double rss = single(i, c);
      if (rss < best_rss) {
        best_rss = rss;
        best_idx = {i};
        best_strength = {c};
      }
    }
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        const double a = gram(ii, ii), b = gram(ii, jj), d = gram(jj, jj);
        const double det = a * d - b * b;
        double ci = -1.0, cj = -1.0, rss = std::numeric_limits<double>::infinity();
        if (det > 0.0) {
          ci = (d * proj[ii] - b * proj[jj]) / det;
          cj = (a * proj[jj] - b * proj[ii]) / det;
          if (ci >= 0.0 && cj >= 0.0) {
            rss = yy - 2.0 * (ci * proj[ii] + cj * proj[jj]) + ci * ci * a +
                  2.0 * ci * cj * b + cj * cj * d;
          }
        }
        if (!(ci >= 0.0 && cj >= 0.0) || !std::isfinite(rss)) {
          double c1, c2;
          const double r1 = single(i, c1);
          const double r2 = single(j, c2);
          if (r1 <= r2) {
            rss = r1, ci = c1, cj = 0.0;
          } else {
            rss = r2, ci = 0.0, cj = c2;
          }
        }
        if (rss < best_rss) {
          best_rss = rss;
          best_idx = {i, j};
          best_strength = {ci, cj};
        }
      }
    }
  }

  FitReport report;
  for (std::size_t q = 0; q < best_idx.size(); ++q) {
    report.estimates.push_back({grid[best_idx[q]], best_strength[q], model.kind});
  }
  report.selected_k = k;
  report.converged = true;
  report.n_iterations = static_cast<int>(candidates);
  // Recompute directly; the Gram form loses digits to cancellation.
  report.rss = residual_sum_of_squares(profile, model, report.estimates);
  return report;
}

double estimate_noise(const Profile& profile) {
  if (profile.bins.size() < 3) return 0.0;
  std::vector<double> diffs;
  diffs.reserve(profile.bins.size() - 1);
  for (std::size_t i = 1; i < profile.bins.size(); ++i) {
    diffs.push_back(std::abs(profile.bins[i].mean_reading - profile.bins[i - 1].mean_reading));
  }
  const auto mid = diffs.begin() + static_cast<std::ptrdiff_t>(diffs.size() / 2);
  std::nth_element(diffs.begin(), mid, diffs.end());
  return 1.4826 * *mid / std::sqrt(2.0);
}

double auto_min_prominence(const Profile& profile, const SensorConfig& sensor) {
  return std::max(6.0 * estimate_noise(profile), 2.0 * reading_resolution(sensor));
}

LocalizeResult localize(const Trace& trace, const DrumConfig& drum,
                        const RobotProfile& robot, const PipeRoute& route,
                        const LocalizeOptions& options) {
  validate(options.sensor);
  LocalizeResult result;
  result.profile = calibrate(
      build_profile(trace, drum, robot, options.bin_width, options.include_retract),
      options.sensor);
  result.noise_sigma = estimate_noise(result.profile);
  result.min_prominence = options.min_prominence >= 0.0
                              ? options.min_prominence
                              : auto_min_prominence(result.profile, options.sensor);
  result.peaks = detect_peaks(result.profile, result.min_prominence,
                              std::max(options.min_separation, options.bin_width));

  FieldModel model;
  model.route = &route;
  model.kind = options.kind;
  model.lateral_offset = options.lateral_offset;
  model.mu = options.mu;
  model.distance_floor = options.sensor.distance_floor;
  model.baseline = options.sensor.baseline;
  model.bin_width = result.profile.bin_width;

  FitReport fit = select_model(result.profile, options.kmax, model, result.peaks);
  std::vector<SourceEstimate> kept;
  for (const SourceEstimate& e : fit.estimates) {
    const double floor = options.strength_floor >= 0.0
                             ? options.strength_floor
                             : result.min_prominence / model.bin_response(e.s, e.s);
    if (e.strength >= floor) {
      kept.push_back(e);
    } else {
      ++result.suppressed;
    }
  }
  fit.estimates = std::move(kept);
  fit.selected_k = static_cast<int>(fit.estimates.size());
  result.report = std::move(fit);
  return result;
}

}  // namespace evermap

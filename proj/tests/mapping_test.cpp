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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "evermap/error.hpp"
#include "evermap/simulate.hpp"

namespace evermap {
namespace {

PipeRoute straight_route(double length = 3.0) {
  return PipeRoute::Build({Segment::Straight(length, 0.055)});
}

PipeRoute reference_route() {
  return PipeRoute::Build({
      Segment::Straight(0.5, 0.055),   Segment::Bend(0.0, 45.0, 0.055),
      Segment::Straight(0.4, 0.055),   Segment::Constriction(0.1, 0.040),
      Segment::Straight(0.4, 0.055),   Segment::Bend(0.15, 90.0, 0.055),
      Segment::Straight(0.5, 0.055),
  });
}

FieldModel dipole_model(const PipeRoute& route) {
  FieldModel model;
  model.route = &route;
  return model;
}

// Bins i = first..last on the (i + 0.5) w grid, filled from the model.
Profile synth(const FieldModel& model, const std::vector<SourceEstimate>& sources,
              int first, int last, double w = 0.01) {
  Profile p;
  p.bin_width = w;
  for (int i = first; i <= last; ++i) {
    const double s = (i + 0.5) * w;
    p.bins.push_back({s, model.predict(sources, s), 1, Phase::kExtend});
  }
  return p;
}

void add_noise(Profile& p, double sigma, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  for (ProfileBin& b : p.bins) b.mean_reading += noise(rng);
}

std::vector<SourceEstimate> at(std::initializer_list<std::pair<double, double>> list) {
  std::vector<SourceEstimate> out;
  for (auto [s, c] : list) out.push_back({s, c, SourceKind::kMagneticDipole});
  return out;
}

// ---- peaks ----

TEST(PeakTest, AllZeroProfileHasNoPeaks) {
  Profile p;
  for (int i = 0; i < 100; ++i) p.bins.push_back({(i + 0.5) * 0.01, 0.0, 1, Phase::kExtend});
  EXPECT_TRUE(detect_peaks(p, 0.0, 0.05).empty());
}

TEST(PeakTest, SingleDipole) {
  const auto route = straight_route();
  const Profile p = synth(dipole_model(route), at({{1.2, 1e-6}}), 0, 239);
  const auto peaks = detect_peaks(p, 1e-6, 0.05);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_LE(std::abs(peaks[0].s - 1.2), 0.01);
  EXPECT_GT(peaks[0].width, 0.0);
  EXPECT_LT(peaks[0].width, 0.1);
}

TEST(PeakTest, TwoMagnetsOnReferenceCourse) {
  const auto route = reference_route();
  const Profile p = synth(dipole_model(route), at({{0.7, 1e-3}, {1.2, 1e-3}}), 0, 200);
  const auto peaks = detect_peaks(p, 1.0, 0.05);
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_LE(std::abs(peaks[0].s - 0.7), 0.01);
  EXPECT_LE(std::abs(peaks[1].s - 1.2), 0.01);
}

TEST(PeakTest, SingleStrictMaximumAnyThresholdBelowProminence) {
  Profile p;
  const double y[] = {0, 1, 2, 5, 9, 4, 3, 3, 1};
  for (int i = 0; i < 9; ++i) p.bins.push_back({(i + 0.5) * 0.01, y[i], 1, Phase::kExtend});
  // Right flank bottoms out at 1, so prominence = 9 - max(0, 1).
  for (double thr : {0.0, 1.0, 5.0, 7.5, 8.0}) {
    const auto peaks = detect_peaks(p, thr, 0.01);
    ASSERT_EQ(peaks.size(), 1u) << thr;
    EXPECT_EQ(peaks[0].bin, 4u);
    EXPECT_DOUBLE_EQ(peaks[0].prominence, 8.0);
  }
  EXPECT_TRUE(detect_peaks(p, 8.5, 0.01).empty());
}

TEST(PeakTest, ProminenceUsesHigherFlankingMinimum) {
  // 0 6 2 10 1: the 6 is bounded on the right by 10, so its key col is
  // max(0, 2) = 2.
  Profile p;
  const double y[] = {0, 6, 2, 10, 1};
  for (int i = 0; i < 5; ++i) p.bins.push_back({(i + 0.5) * 0.01, y[i], 1, Phase::kExtend});
  const auto peaks = detect_peaks(p, 0.0, 0.01);
  ASSERT_EQ(peaks.size(), 2u);
  EXPECT_DOUBLE_EQ(peaks[0].prominence, 4.0);
  EXPECT_DOUBLE_EQ(peaks[1].prominence, 9.0);
}

TEST(PeakTest, EqualHeightsWithinSeparationKeepSmallerS) {
  Profile p;
  const double y[] = {0, 5, 0, 5, 0};
  for (int i = 0; i < 5; ++i) p.bins.push_back({(i + 0.5) * 0.01, y[i], 1, Phase::kExtend});
  const auto peaks = detect_peaks(p, 0.0, 0.05);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_EQ(peaks[0].bin, 1u);
  EXPECT_EQ(detect_peaks(p, 0.0, 0.01).size(), 2u);
}

TEST(PeakTest, PlateauReportedOnce) {
  Profile p;
  const double y[] = {0, 3, 3, 3, 0};
  for (int i = 0; i < 5; ++i) p.bins.push_back({(i + 0.5) * 0.01, y[i], 1, Phase::kExtend});
  const auto peaks = detect_peaks(p, 0.0, 0.01);
  ASSERT_EQ(peaks.size(), 1u);
  EXPECT_EQ(peaks[0].bin, 1u);
}

TEST(PeakTest, ProminenceBoundedByRange) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int round = 0; round < 100; ++round) {
    Profile p;
    double lo = 1e300;
    for (int i = 0; i < 60; ++i) {
      const double v = u(rng);
      lo = std::min(lo, v);
      p.bins.push_back({(i + 0.5) * 0.01, v, 1, Phase::kExtend});
    }
    for (const Peak& pk : detect_peaks(p, 0.0, 0.01)) {
      EXPECT_LE(pk.prominence, pk.height - lo + 1e-12);
      EXPECT_GE(pk.prominence, 0.0);
    }
  }
}

TEST(PeakTest, Errors) {
  EXPECT_THROW(detect_peaks(Profile{}, 0.0, 0.05), Error);
  Profile p;
  p.bins.push_back({0.005, 1.0, 1, Phase::kExtend});
  EXPECT_THROW(detect_peaks(p, 0.0, 0.001), Error);
}

// ---- fit ----

TEST(FitTest, NoiselessSingleDipole) {
  const auto route = straight_route();
  const FieldModel model = dipole_model(route);
  const Profile p = synth(model, at({{1.2, 1e-6}}), 0, 239);
  const auto peaks = detect_peaks(p, 0.0, 0.05);
  const FitReport r = fit_sources(p, 1, model, peaks);
  ASSERT_EQ(r.estimates.size(), 1u);
  EXPECT_LE(std::abs(r.estimates[0].s - 1.2), 1e-3);
  EXPECT_LE(std::abs(r.estimates[0].strength / 1e-6 - 1.0), 1e-3);
  EXPECT_LE(r.rss, 1e-18);
  EXPECT_TRUE(r.converged);
}

TEST(FitTest, RealisableModelFitsToRounding) {
  // Off-grid source so the seed is not already exact.
  const auto route = reference_route();
  const FieldModel model = dipole_model(route);
  const Profile p = synth(model, at({{0.7137, 1e-3}, {1.2061, 2e-3}}), 0, 200);
  const FitReport r = fit_sources(p, 2, model, detect_peaks(p, 1.0, 0.05));
  EXPECT_LE(r.rss, 1e-18 * 1e6);  // readings are ~1e3 times the 1e-6 example
  EXPECT_NEAR(r.estimates[0].s, 0.7137, 1e-6);
  EXPECT_NEAR(r.estimates[1].s, 1.2061, 1e-6);
  EXPECT_NEAR(r.estimates[1].strength, 2e-3, 2e-9);
}

TEST(FitTest, TwoSourcesWithNoise) {
  const auto route = reference_route();
  const FieldModel model = dipole_model(route);
  const double amplitude = 1e-3 * model.unit_response(0.7, 0.7);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Profile p = synth(model, at({{0.7, 1e-3}, {1.2, 1e-3}}), 0, 200);
    add_noise(p, amplitude / 10.0, seed);  // 20 dB
    const FitReport r = fit_sources(p, 2, model, detect_peaks(p, 0.6 * amplitude, 0.05));
    ASSERT_EQ(r.estimates.size(), 2u);
    EXPECT_LE(std::abs(r.estimates[0].s - 0.7), 0.01) << seed;
    EXPECT_LE(std::abs(r.estimates[1].s - 1.2), 0.01) << seed;
  }
}

TEST(FitTest, RssHistoryNonIncreasing) {
  const auto route = reference_route();
  const FieldModel model = dipole_model(route);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Profile p = synth(model, at({{0.65, 1e-3}, {1.3, 5e-4}}), 0, 200);
    add_noise(p, 2.0, seed);
    for (int k = 1; k <= 3; ++k) {
      const FitReport r = fit_sources(p, k, model, {});
      ASSERT_GE(r.rss_history.size(), 1u);
      for (std::size_t i = 1; i < r.rss_history.size(); ++i) {
        EXPECT_LE(r.rss_history[i], r.rss_history[i - 1]);
      }
      EXPECT_EQ(r.rss, r.rss_history.back());
      EXPECT_GE(r.rss, 0.0);
      for (std::size_t i = 1; i < r.estimates.size(); ++i) {
        EXPECT_LE(r.estimates[i - 1].s, r.estimates[i].s);
      }
      for (const SourceEstimate& e : r.estimates) {
        EXPECT_GT(e.strength, 0.0);
        EXPECT_GE(e.s, p.span_begin() - p.bin_width);
        EXPECT_LE(e.s, p.span_end() + p.bin_width);
      }
    }
  }
}

TEST(FitTest, ScaleEquivariance) {
  const auto route = reference_route();
  FieldModel model = dipole_model(route);
  model.baseline = 3.0;
  Profile p = synth(model, at({{0.7, 1e-3}, {1.2, 1e-3}}), 0, 200);
  add_noise(p, 1.0, 4);
  const auto peaks = detect_peaks(p, 10.0, 0.05);
  const FitReport base = fit_sources(p, 2, model, peaks);
  for (double c : {0.001, 2.5, 1000.0}) {
    Profile q = p;
    for (ProfileBin& b : q.bins) b.mean_reading *= c;
    FieldModel scaled = model;
    scaled.baseline *= c;
    const FitReport r = fit_sources(q, 2, scaled, detect_peaks(q, 10.0 * c, 0.05));
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_NEAR(r.estimates[j].s, base.estimates[j].s, 1e-9) << c;
      EXPECT_NEAR(r.estimates[j].strength / (c * base.estimates[j].strength), 1.0, 1e-7) << c;
    }
  }
}

TEST(FitTest, TranslationEquivariance) {
  const auto route = straight_route(4.0);
  const FieldModel model = dipole_model(route);
  Profile p = synth(model, at({{0.9, 1e-3}, {1.4, 7e-4}}), 50, 200);
  add_noise(p, 1.0, 8);
  const FitReport base = fit_sources(p, 2, model, detect_peaks(p, 10.0, 0.05));
  for (int shift_bins : {-30, 17, 100}) {
    const double delta = shift_bins * 0.01;
    Profile q = p;
    for (ProfileBin& b : q.bins) b.s_center += delta;
    const FitReport r = fit_sources(q, 2, model, detect_peaks(q, 10.0, 0.05));
    for (std::size_t j = 0; j < 2; ++j) {
      EXPECT_NEAR(r.estimates[j].s, base.estimates[j].s + delta, 1e-7) << delta;
      EXPECT_NEAR(r.estimates[j].strength / base.estimates[j].strength, 1.0, 1e-6);
    }
  }
}

TEST(FitTest, IllPosedAndNumericErrors) {
  const auto route = straight_route();
  const FieldModel model = dipole_model(route);
  const Profile p = synth(model, at({{0.05, 1e-3}}), 0, 5);
  try {
    fit_sources(p, 4, model, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIllPosed);
  }
  Profile bad = p;
  bad.bins[2].mean_reading = std::nan("");
  try {
    fit_sources(bad, 1, model, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNumeric);
  }
  EXPECT_THROW(fit_sources(p, 0, model, {}), Error);
}

TEST(FieldModelTest, BinAverageMatchesDenseMean) {
  const auto route = straight_route();
  FieldModel model = dipole_model(route);
  EXPECT_EQ(model.bin_response(1.2, 1.205), model.unit_response(1.2, 1.205));
  model.bin_width = 0.01;
  for (double centre : {1.155, 1.195, 1.205, 1.245}) {
    const int n = 20000;  // midpoint rule
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
      mean += model.unit_response(1.2, centre - 0.005 + 0.01 * (i + 0.5) / n);
    }
    mean /= n;
    EXPECT_NEAR(model.bin_response(1.2, centre) / mean, 1.0, 1e-6) << centre;
  }
  // Averaging flattens the peak: the centre value overstates the bin.
  EXPECT_LT(model.bin_response(1.2, 1.2), model.unit_response(1.2, 1.2));
}

TEST(FitTest, BinAveragedModelIsRealisable) {
  const auto route = reference_route();
  FieldModel model = dipole_model(route);
  model.bin_width = 0.01;
  const Profile p = synth(model, at({{0.7137, 1e-3}, {1.2061, 2e-3}}), 0, 200);
  const FitReport r = fit_sources(p, 2, model, detect_peaks(p, 1.0, 0.05));
  EXPECT_NEAR(r.estimates[0].s, 0.7137, 1e-6);
  EXPECT_NEAR(r.estimates[1].strength, 2e-3, 2e-9);
  EXPECT_LE(r.rss, 1e-12);
}

TEST(FitTest, SourceBesideSharpBend) {
  // 0.4922 sits in the mitre fold of the 45 degree joint at 0.5, where the
  // seeded start alone can settle on the wrong side of the corner.
  const auto route = reference_route();
  const FieldModel model = dipole_model(route);
  for (double s0 : {0.4922, 0.5071}) {
    Profile p = synth(model, at({{s0, 1.5e-3}}), 0, 200);
    add_noise(p, 1.0, 27);
    const FitReport fit = fit_sources(p, 1, model, detect_peaks(p, 6.0, 0.05));
    const FitReport oracle = grid_oracle(p, 1, model, 0.01);
    EXPECT_LE(fit.rss, oracle.rss + 1e-9);
    EXPECT_NEAR(fit.estimates[0].s, s0, 2e-3);
  }
}

// ---- model selection ----

TEST(SelectModelTest, TwoSeparatedSources) {
  const auto route = reference_route();
  const FieldModel model = dipole_model(route);
  Profile p = synth(model, at({{0.7, 1e-3}, {1.2, 1e-3}}), 0, 200);
  add_noise(p, 2.0, 12);
  const FitReport r = select_model(p, 4, model, detect_peaks(p, 10.0, 0.05));
  EXPECT_EQ(r.selected_k, 2);
  EXPECT_EQ(r.criterion.size(), 4u);
}

TEST(SelectModelTest, SingleSourceKmaxOne) {
  const auto route = straight_route();
  const FieldModel model = dipole_model(route);
  const Profile p = synth(model, at({{1.2, 1e-6}}), 0, 239);
  EXPECT_EQ(select_model(p, 1, model, detect_peaks(p, 0.0, 0.05)).selected_k, 1);
}

TEST(SelectModelTest, NoiseOnlyPicksOneWeakSource) {
  const auto route = straight_route();
  const FieldModel model = dipole_model(route);
  Profile p = synth(model, {}, 0, 239);
  add_noise(p, 1.0, 3);
  const FitReport r = select_model(p, 3, model, detect_peaks(p, 6.0, 0.05));
  EXPECT_EQ(r.selected_k, 1);
  // A real source would need a 6-sigma peak; the fitted one is far below.
  EXPECT_LT(r.estimates[0].strength * model.unit_response(r.estimates[0].s, r.estimates[0].s),
            6.0);
}

// ---- grid oracle ----

TEST(GridOracleTest, SingleSourceOnGrid) {
  const auto route = straight_route();
  const FieldModel model = dipole_model(route);
  const Profile p = synth(model, at({{1.2, 1e-6}}), 0, 239);
  const FitReport r = grid_oracle(p, 1, model, 0.01);
  ASSERT_EQ(r.estimates.size(), 1u);
  EXPECT_LE(std::abs(r.estimates[0].s - 1.2), 0.01);
}

TEST(GridOracleTest, ZeroProfileGivesZeroStrength) {
  const auto route = straight_route();
  const FieldModel model = dipole_model(route);
  const Profile p = synth(model, {}, 0, 99);
  const FitReport r = grid_oracle(p, 1, model, 0.01);
  ASSERT_EQ(r.estimates.size(), 1u);
  EXPECT_EQ(r.estimates[0].strength, 0.0);
  EXPECT_EQ(r.rss, 0.0);
}

TEST(GridOracleTest, TwoSourcesMatchBruteForce) {
  // Independent check: direct 2x2 normal equations on every pair.
  const auto route = reference_route();
  const FieldModel model = dipole_model(route);
  Profile p = synth(model, at({{0.7, 1e-3}, {1.2, 1e-3}}), 0, 200);
  add_noise(p, 2.0, 5);
  const double step = 0.04;
  const FitReport r = grid_oracle(p, 2, model, step);

  double best = 1e300;
  const double first = p.bins.front().s_center;
  const int m = static_cast<int>(std::floor((p.bins.back().s_center - first) / step + 1e-9)) + 1;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double si = first + i * step, sj = first + j * step;
      double a = 0, b = 0, d = 0, u = 0, v = 0;
      for (const ProfileBin& bin : p.bins) {
        const double gi = model.unit_response(si, bin.s_center);
        const double gj = model.unit_response(sj, bin.s_center);
        a += gi * gi, b += gi * gj, d += gj * gj;
        u += gi * bin.mean_reading, v += gj * bin.mean_reading;
      }
      const double det = a * d - b * b;
      double ci = (d * u - b * v) / det, cj = (a * v - b * u) / det;
      if (ci < 0 || cj < 0) {
        const double c1 = std::max(u / a, 0.0), c2 = std::max(v / d, 0.0);
        const auto one = at({{si, c1}}), two = at({{sj, c2}});
        const double r1 = residual_sum_of_squares(p, model, one);
        const double r2 = residual_sum_of_squares(p, model, two);
        best = std::min(best, std::min(r1, r2));
        continue;
      }
      best = std::min(best, residual_sum_of_squares(p, model, at({{si, ci}, {sj, cj}})));
    }
  }
  EXPECT_NEAR(r.rss, best, 1e-9 * best);
  EXPECT_LE(std::abs(r.estimates[0].s - 0.7), step);
  EXPECT_LE(std::abs(r.estimates[1].s - 1.2), step);
}

TEST(GridOracleTest, Guards) {
  const auto route = straight_route(3000.0);
  const FieldModel model = dipole_model(route);
  Profile p;
  p.bin_width = 0.01;
  for (int i = 0; i < 200000; i += 1000) {
    p.bins.push_back({(i + 0.5) * 0.01, 0.0, 1, Phase::kExtend});
  }
  EXPECT_THROW(grid_oracle(p, 2, model, 0.01), Error);  // ~2e11 pairs
  EXPECT_THROW(grid_oracle(p, 3, model, 1.0), Error);
  EXPECT_THROW(grid_oracle(p, 1, model, 0.001), Error);
}

TEST(GridOracleTest, ContinuousFitNeverLoses) {
  const auto route = reference_route();
  const FieldModel model = dipole_model(route);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> pos(0.2, 1.8);
  std::uniform_real_distribution<double> str(3e-4, 2e-3);
  for (int scene = 0; scene < 10; ++scene) {
    for (int k = 1; k <= 2; ++k) {
      std::vector<SourceEstimate> src = at({{pos(rng), str(rng)}});
      if (k == 2) src.push_back({pos(rng), str(rng), SourceKind::kMagneticDipole});
      Profile p = synth(model, src, 0, 200);
      add_noise(p, 2.0, static_cast<std::uint64_t>(scene));
      const auto peaks = detect_peaks(p, 12.0, 0.05);
      const FitReport fit = fit_sources(p, k, model, peaks);
      const FitReport oracle = grid_oracle(p, k, model, 0.01);
      EXPECT_LE(fit.rss, oracle.rss + 1e-9) << scene << " k=" << k;
    }
  }
}

// ---- noise estimate ----

TEST(NoiseTest, RecoversGaussianSigma) {
  const auto route = straight_route();
  Profile p = synth(dipole_model(route), {}, 0, 2999, 0.001);
  add_noise(p, 0.5, 77);
  EXPECT_NEAR(estimate_noise(p), 0.5, 0.05);
}

// ---- end to end ----

RouteConfig reference_config() { return {"reference", reference_route()}; }

RobotConfig plastic_robot() {
  RobotConfig rc;
  rc.name = "plastic";
  rc.profile = RobotProfile{2.0, 0.050, Material::kPlastic};
  rc.rules = MaterialRules::Defaults(Material::kPlastic);
  return rc;
}

SceneConfig magnet_scene(std::vector<Source> sources) {
  SceneConfig sc;
  sc.name = "scene";
  sc.sources = std::move(sources);
  sc.sensor.gaussian_sigma = 2.0;
  return sc;
}

LocalizeOptions options_for(const SceneConfig& scene) {
  LocalizeOptions o;
  o.sensor = scene.sensor;
  return o;
}

TEST(LocalizeTest, TwoMagnetScenario) {
  const RouteConfig route = reference_config();
  const RobotConfig robot = plastic_robot();
  const SceneConfig scene = magnet_scene({{0.7, 1e-3, SourceKind::kMagneticDipole, {}},
                                          {1.2, 1e-3, SourceKind::kMagneticDipole, {}}});
  SimulationOptions sim;
  sim.seed = 42;
  const Trace trace = simulate(route, robot, scene, sim).trace;
  const LocalizeResult r =
      localize(trace, robot.drum, robot.profile, route.route, options_for(scene));
  ASSERT_EQ(r.report.selected_k, 2);
  EXPECT_NEAR(r.report.estimates[0].s, 0.7, 0.01);
  EXPECT_NEAR(r.report.estimates[1].s, 1.2, 0.01);
  EXPECT_EQ(r.peaks.size(), 2u);

  const LocalizeResult again =
      localize(trace, robot.drum, robot.profile, route.route, options_for(scene));
  EXPECT_EQ(again.report.rss, r.report.rss);
  EXPECT_EQ(again.report.estimates[0].s, r.report.estimates[0].s);
  EXPECT_EQ(again.report.estimates[1].strength, r.report.estimates[1].strength);
}

TEST(LocalizeTest, NoiseOnlyReportsNothing) {
  const RouteConfig route = reference_config();
  const RobotConfig robot = plastic_robot();
  const SceneConfig scene = magnet_scene({});
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SimulationOptions sim;
    sim.seed = seed;
    const Trace trace = simulate(route, robot, scene, sim).trace;
    const LocalizeResult r =
        localize(trace, robot.drum, robot.profile, route.route, options_for(scene));
    EXPECT_EQ(r.report.selected_k, 0) << seed;
    EXPECT_TRUE(r.report.estimates.empty());
  }
}

TEST(LocalizeTest, TraceBeforeEntryIsNoInPipe) {
  const RouteConfig route = reference_config();
  const RobotConfig robot = plastic_robot();
  const SceneConfig scene = magnet_scene({});
  SimulationOptions sim;
  sim.schedule = {{0.9, 0.05}};  // below S/2 = 1.0
  const Trace trace = simulate(route, robot, scene, sim).trace;
  try {
    localize(trace, robot.drum, robot.profile, route.route, options_for(scene));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNoInPipeSamples);
  }
}

}  // namespace
}  // namespace evermap

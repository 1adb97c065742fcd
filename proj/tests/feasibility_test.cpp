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


#include "evermap/feasibility.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include <gtest/gtest.h>

#include "evermap/error.hpp"

namespace evermap {
namespace {

RobotProfile fabric() { return RobotProfile{5.0, 0.060, Material::kFabric}; }
RobotProfile plastic() { return RobotProfile{2.0, 0.050, Material::kPlastic}; }

std::vector<Segment> reference_course() {
  return {
      Segment::Straight(0.5, 0.055),   Segment::Bend(0.0, 45.0, 0.055),
      Segment::Straight(0.4, 0.055),   Segment::Constriction(0.1, 0.040),
      Segment::Straight(0.4, 0.055),   Segment::Bend(0.15, 90.0, 0.055),
      Segment::Straight(0.5, 0.055),
  };
}

// Brute-force reference: every violating segment, earliest arc position.
std::optional<double> first_violation(const RobotProfile& robot, const MaterialRules& rules,
                                      const std::vector<Segment>& segs) {
  std::optional<double> best;
  double s = 0.0;
  for (const Segment& seg : segs) {
    const bool sharp = seg.kind == SegmentKind::kBend && seg.bend_radius == 0.0;
    const bool bad = (sharp && seg.bend_angle > rules.max_sharp_bend_deg) ||
                     seg.bore / robot.flat_diameter < rules.min_bore_ratio;
    if (bad && (!best || s < *best)) best = s;
    s += seg.arc_length();
  }
  return best;
}

std::vector<Segment> random_course(std::mt19937& rng) {
  std::uniform_real_distribution<double> len(0.01, 0.6);
  std::uniform_real_distribution<double> angle(0.0, 120.0);
  std::uniform_real_distribution<double> bore(0.025, 0.07);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> count(1, 8);
  std::vector<Segment> segs;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    switch (kind(rng)) {
      case 0: segs.push_back(Segment::Straight(len(rng), 0.055)); break;
      case 1: segs.push_back(Segment::Constriction(len(rng), bore(rng))); break;
      case 2: segs.push_back(Segment::Bend(0.0, angle(rng), 0.055)); break;
      default: segs.push_back(Segment::Bend(0.15, angle(rng), 0.055)); break;
    }
  }
  return segs;
}

TEST(FeasibilityTest, FabricStopsAtSharpBend) {
  const auto route = PipeRoute::Build(reference_course());
  const Verdict v = can_traverse(fabric(), MaterialRules::Defaults(Material::kFabric), route);
  EXPECT_FALSE(v.feasible);
  ASSERT_TRUE(v.blocker.has_value());
  EXPECT_NEAR(v.blocker->s, 0.5, 1e-12);
  EXPECT_EQ(v.blocker->reason, BlockReason::kSharpBend);
  EXPECT_EQ(v.blocker->segment_index, 1u);
  EXPECT_FALSE(v.blocker->description.empty());
}

TEST(FeasibilityTest, PlasticPassesConstrictionAndBends) {
  const auto route = PipeRoute::Build(reference_course());
  const Verdict v = can_traverse(plastic(), MaterialRules::Defaults(Material::kPlastic), route);
  EXPECT_TRUE(v.feasible);
  EXPECT_FALSE(v.blocker.has_value());
}

TEST(FeasibilityTest, StraightWideRouteAlwaysFeasible) {
  for (const RobotProfile& robot : {fabric(), plastic()}) {
    const auto route = PipeRoute::Build({Segment::Straight(3.0, robot.flat_diameter)});
    EXPECT_TRUE(can_traverse(robot, MaterialRules::Defaults(robot.material), route).feasible);
  }
}

TEST(FeasibilityTest, SweptBendsAlwaysPass) {
  const auto route = PipeRoute::Build({Segment::Straight(0.2, 0.06),
                                       Segment::Bend(0.1, 170.0, 0.06),
                                       Segment::Straight(0.2, 0.06)});
  EXPECT_TRUE(can_traverse(fabric(), MaterialRules::Defaults(Material::kFabric), route).feasible);
}

TEST(FeasibilityTest, NarrowBoreBlocks) {
  // 0.035 / 0.060 = 0.58 < 0.6
  const auto route = PipeRoute::Build({Segment::Straight(0.3, 0.055),
                                       Segment::Constriction(0.1, 0.035),
                                       Segment::Straight(0.3, 0.055)});
  const Verdict v = can_traverse(fabric(), MaterialRules::Defaults(Material::kFabric), route);
  ASSERT_FALSE(v.feasible);
  EXPECT_EQ(v.blocker->reason, BlockReason::kBore);
  EXPECT_NEAR(v.blocker->s, 0.3, 1e-12);
}

TEST(FeasibilityTest, BoundaryValuesPass) {
  MaterialRules rules = MaterialRules::Defaults(Material::kFabric);
  const auto at_limit = PipeRoute::Build({Segment::Straight(0.3, 0.036),
                                          Segment::Bend(0.0, 30.0, 0.036)});
  EXPECT_TRUE(can_traverse(fabric(), rules, at_limit).feasible);
}

TEST(FeasibilityTest, MaterialMismatchThrows) {
  const auto route = PipeRoute::Build(reference_course());
  EXPECT_THROW(can_traverse(fabric(), MaterialRules::Defaults(Material::kPlastic), route),
               Error);
}

TEST(FeasibilityTest, RuleValidation) {
  MaterialRules rules;
  rules.min_bore_ratio = 0.0;
  EXPECT_THROW(validate(rules), Error);
  rules = MaterialRules{};
  rules.max_sharp_bend_deg = 181.0;
  EXPECT_THROW(validate(rules), Error);
  rules.max_sharp_bend_deg = -1.0;
  EXPECT_THROW(validate(rules), Error);
}

TEST(FeasibilityProperty, BlockerIsEarliestViolation) {
  std::mt19937 rng(17);
  for (int i = 0; i < 500; ++i) {
    const auto segs = random_course(rng);
    for (const RobotProfile& robot : {fabric(), plastic()}) {
      const MaterialRules rules = MaterialRules::Defaults(robot.material);
      const Verdict v = can_traverse(robot, rules, PipeRoute::Build(segs));
      const auto want = first_violation(robot, rules, segs);
      ASSERT_EQ(v.feasible, !want.has_value());
      if (want) {
        EXPECT_NEAR(v.blocker->s, *want, 1e-12);
      }
    }
  }
}

TEST(FeasibilityProperty, RemovingASegmentNeverHurts) {
  std::mt19937 rng(23);
  for (int i = 0; i < 300; ++i) {
    const auto segs = random_course(rng);
    if (segs.size() < 2) continue;
    const RobotProfile robot = fabric();
    const MaterialRules rules = MaterialRules::Defaults(robot.material);
    if (!can_traverse(robot, rules, PipeRoute::Build(segs)).feasible) continue;
    for (std::size_t drop = 0; drop < segs.size(); ++drop) {
      auto fewer = segs;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(drop));
      EXPECT_TRUE(can_traverse(robot, rules, PipeRoute::Build(fewer)).feasible);
    }
  }
}

TEST(FeasibilityProperty, SegmentsPastBlockerDoNotMatter) {
  std::mt19937 rng(29);
  for (int i = 0; i < 300; ++i) {
    auto segs = random_course(rng);
    const RobotProfile robot = plastic();
    const MaterialRules rules = MaterialRules::Defaults(robot.material);
    const Verdict v = can_traverse(robot, rules, PipeRoute::Build(segs));
    if (v.feasible) continue;
    const std::size_t b = v.blocker->segment_index;
    std::shuffle(segs.begin() + static_cast<std::ptrdiff_t>(b) + 1, segs.end(), rng);
    const Verdict w = can_traverse(robot, rules, PipeRoute::Build(segs));
    ASSERT_FALSE(w.feasible);
    EXPECT_EQ(w.blocker->segment_index, b);
    EXPECT_EQ(w.blocker->s, v.blocker->s);
  }
}

}  // namespace
}  // namespace evermap

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

#include "evermap/kinematics.hpp"

#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "evermap/error.hpp"

namespace evermap {
namespace {

RobotProfile sleeve(double length) {
  RobotProfile p;
  p.sleeve_length = length;
  return p;
}

TEST(KinematicsTest, ExtensionFromTicks) {
  const DrumConfig drum;  // r = 0.02 m, 1024 ticks/rev, payout 2
  EXPECT_NEAR(extension_from_ticks(drum, 1024), 2.0 * std::numbers::pi * 0.02 / 2.0, 1e-15);
  EXPECT_NEAR(extension_from_ticks(drum, 1024), 0.062832, 1e-6);
  EXPECT_EQ(extension_from_ticks(drum, 0), 0.0);
  EXPECT_NEAR(extension_from_ticks(drum, 2048), 0.125664, 1e-6);
  EXPECT_LT(extension_from_ticks(drum, -10), 0.0);
}

TEST(KinematicsTest, TicksRoundTrip) {
  const DrumConfig drum;
  for (std::int64_t t : {0, 1, 17, 1024, 40000, -5}) {
    EXPECT_EQ(ticks_from_extension(drum, extension_from_ticks(drum, t)), t);
  }
}

TEST(KinematicsTest, SensorPosition) {
  const RobotProfile robot = sleeve(5.0);
  EXPECT_EQ(sensor_position(robot, 2.5), 0.0);
  EXPECT_EQ(sensor_position(robot, 0.0), -5.0);
  EXPECT_EQ(sensor_position(robot, 4.0), 3.0);
  EXPECT_EQ(sensor_position(robot, 5.0), 5.0);
  EXPECT_NEAR(discrete_material_oracle(robot, 4.0, 10000), 3.0, 5.0 / 10000);
  EXPECT_THROW(sensor_position(robot, -0.1), Error);
  EXPECT_THROW(sensor_position(robot, 5.1), Error);
}

TEST(KinematicsTest, MaterialBudget) {
  const RobotProfile robot = sleeve(5.0);
  auto check = [&](double x, double outer, double inner, double tail) {
    const MaterialBudget b = material_budget(robot, x);
    EXPECT_DOUBLE_EQ(b.outer, outer);
    EXPECT_DOUBLE_EQ(b.inner, inner);
    EXPECT_DOUBLE_EQ(b.tail, tail);
  };
  check(0.0, 0.0, 0.0, 5.0);
  check(2.5, 2.5, 2.5, 0.0);
  check(4.0, 4.0, 1.0, 0.0);
  EXPECT_THROW(material_budget(robot, 6.0), Error);
}

TEST(KinematicsTest, MaxExtension) {
  const PipeRoute route = PipeRoute::Build({Segment::Straight(2.14, 0.055)});
  EXPECT_DOUBLE_EQ(max_extension(sleeve(5.0), route), 2.14);
  EXPECT_DOUBLE_EQ(max_extension(sleeve(1.0), route), 1.0);
  const PipeRoute five = PipeRoute::Build({Segment::Straight(5.0, 0.055)});
  EXPECT_DOUBLE_EQ(max_extension(sleeve(5.0), five), 5.0);
}

TEST(KinematicsTest, DiscreteOracleExamples) {
  const RobotProfile robot = sleeve(5.0);
  EXPECT_NEAR(discrete_material_oracle(robot, 2.5, 10000), 0.0, 5e-4);
  EXPECT_NEAR(discrete_material_oracle(robot, 5.0, 10000), 5.0, 5e-4);
  EXPECT_NEAR(discrete_material_oracle(robot, 1.25, 10000), -2.5, 5e-4);
}

TEST(KinematicsTest, KinematicStateFromTicks) {
  const RobotProfile robot = sleeve(5.0);
  const DrumConfig drum;
  const std::int64_t ticks = ticks_from_extension(drum, 3.0);
  const KinematicState st = kinematic_state(robot, drum, ticks);
  EXPECT_EQ(st.encoder_ticks, ticks);
  EXPECT_NEAR(st.extension, 3.0, extension_per_tick(drum));
  EXPECT_DOUBLE_EQ(st.sensor_s, 2.0 * st.extension - 5.0);
}

TEST(KinematicsTest, InvalidConfigs) {
  RobotProfile robot;
  robot.sleeve_length = 0.0;
  EXPECT_THROW(validate(robot), Error);
  DrumConfig drum;
  drum.ticks_per_rev = 0;
  EXPECT_THROW(validate(drum), Error);
  drum = DrumConfig{};
  drum.payout_ratio = -1.0;
  EXPECT_THROW(validate(drum), Error);
}

TEST(KinematicsProperty, TailMovesAtTwiceTipSpeed) {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> len(1.0, 10.0);
  const double h = 1e-4;
  for (int i = 0; i < 1000; ++i) {
    const RobotProfile robot = sleeve(len(rng));
    std::uniform_real_distribution<double> ext(h, robot.sleeve_length - h);
    const double x = ext(rng);
    const double slope =
        (sensor_position(robot, x + h) - sensor_position(robot, x - h)) / (2.0 * h);
    EXPECT_NEAR(slope, 2.0, 1e-9);
  }
}

TEST(KinematicsProperty, MaterialIsConserved) {
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> len(1.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const RobotProfile robot = sleeve(len(rng));
    std::uniform_real_distribution<double> ext(0.0, robot.sleeve_length);
    const MaterialBudget b = material_budget(robot, ext(rng));
    EXPECT_DOUBLE_EQ(b.outer + b.inner + b.tail, robot.sleeve_length);
    EXPECT_GE(b.tail, 0.0);
    EXPECT_GE(b.inner, 0.0);
  }
}

TEST(KinematicsProperty, OracleAgreesWithClosedForm) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> len(1.0, 10.0);
  const int n = 10000;
  for (int i = 0; i < 1000; ++i) {
    const RobotProfile robot = sleeve(len(rng));
    std::uniform_real_distribution<double> ext(0.0, robot.sleeve_length);
    const double x = ext(rng);
    EXPECT_LE(std::abs(sensor_position(robot, x) - discrete_material_oracle(robot, x, n)),
              robot.sleeve_length / n);
  }
}

TEST(KinematicsProperty, SensorPositionStrictlyIncreasing) {
  const RobotProfile robot = sleeve(5.0);
  double prev = sensor_position(robot, 0.0);
  for (int i = 1; i <= 5000; ++i) {
    const double cur = sensor_position(robot, 5.0 * i / 5000.0);
    EXPECT_GT(cur, prev);
    prev = cur;
  }
}

TEST(KinematicsProperty, TickConversionIsLinear) {
  std::mt19937 rng(24);
  std::uniform_int_distribution<std::int64_t> ticks(-200000, 200000);
  const DrumConfig drum;
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t a = ticks(rng), b = ticks(rng);
    EXPECT_NEAR(extension_from_ticks(drum, a + b),
                extension_from_ticks(drum, a) + extension_from_ticks(drum, b), 1e-12);
  }
}

}  // namespace
}  // namespace evermap

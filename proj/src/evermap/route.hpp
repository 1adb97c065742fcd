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

#ifndef EVERMAP_ROUTE_HPP_
#define EVERMAP_ROUTE_HPP_

#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace evermap {

enum class SegmentKind { kStraight, kBend, kConstriction };

enum class BendStyle { kSharp, kSwept };

// One piece of the pipe course. Lengths in meters, angles in degrees.
struct Segment {
  SegmentKind kind = SegmentKind::kStraight;
  double length = 0.0;        // Straight, Constriction
  double bore = 0.0;          // inner diameter
  double bend_radius = 0.0;   // Bend; 0 is a mitred (sharp) joint
  double bend_angle = 0.0;    // Bend
  double roll = 0.0;          // Bend; rotates the turn plane about the tangent

  static Segment Straight(double length, double bore);
  static Segment Constriction(double length, double bore);
  static Segment Bend(double radius, double angle_deg, double bore,
                      double roll_deg = 0.0);

  BendStyle bend_style() const {
    return bend_radius == 0.0 ? BendStyle::kSharp : BendStyle::kSwept;
  }
  double arc_length() const;
};

struct Pose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d tangent = Eigen::Vector3d::UnitX();
};

// Pose plus the in-plane normal used for bend turns and wall offsets.
struct Frame {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d tangent = Eigen::Vector3d::UnitX();
  Eigen::Vector3d normal = Eigen::Vector3d::UnitY();
};

enum class FeatureKind { kSharpBend, kSweptBend, kConstriction };

struct Feature {
  double s = 0.0;
  FeatureKind kind = FeatureKind::kSharpBend;
  std::size_t segment_index = 0;
  double angle_deg = 0.0;  // bends
  double bore = 0.0;       // constrictions
};

std::string to_string(FeatureKind kind);

// Single-path pipe course parameterised by centreline arc length. Immutable
// once built; all queries are const and safe to share between threads.
class PipeRoute {
 public:
  // Throws Error(kInvalidArgument) on an empty list, non-positive bore or a
  // negative length/radius/angle.
  static PipeRoute Build(std::vector<Segment> segments,
                         const Pose& entry = Pose{});

  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<double>& cumulative_s() const { return starts_; }
  const Pose& entry_pose() const { return entry_; }
  double total_length() const { return total_length_; }

  // At a joint the downstream segment wins, so a sharp bend's tangent is
  // the post-turn direction. Throws Error(kOutOfRange) outside [0, L].
  Pose pose_at(double s) const;
  Frame frame_at(double s) const;
  double bore_at(double s) const;

  // Bends and constrictions at their start arc length, increasing s, input
  // order preserved for coincident features.
  std::vector<Feature> features() const;

 private:
  PipeRoute() = default;

  std::size_t segment_index_at(double s) const;
  void check_range(double s) const;

  std::vector<Segment> segments_;
  std::vector<double> starts_;
  std::vector<Frame> start_frames_;
  Pose entry_;
  double total_length_ = 0.0;
};

}  // namespace evermap

#endif  // EVERMAP_ROUTE_HPP_

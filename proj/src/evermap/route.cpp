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

#include "evermap/route.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "evermap/error.hpp"

namespace evermap {
namespace {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

Eigen::Vector3d initial_normal(const Eigen::Vector3d& tangent) {
  Eigen::Vector3d n = Eigen::Vector3d::UnitZ().cross(tangent);
  if (n.norm() < 1e-9) n = tangent.cross(Eigen::Vector3d::UnitX());
  return n.normalized();
}

// Frame reached after travelling `u` metres into `seg` starting from `start`.
Frame advance(const Segment& seg, const Frame& start, double u) {
  Frame out = start;
  if (seg.kind != SegmentKind::kBend) {
    out.position = start.position + u * start.tangent;
    return out;
  }
  const double roll = deg_to_rad(seg.roll);
  const Eigen::Vector3d binormal = start.tangent.cross(start.normal);
  const Eigen::Vector3d turn =
      std::cos(roll) * start.normal + std::sin(roll) * binormal;
  double phi;
  if (seg.bend_style() == BendStyle::kSharp) {
    phi = deg_to_rad(seg.bend_angle);
  } else {
    phi = u / seg.bend_radius;
    const double r = seg.bend_radius;
    out.position = start.position + r * std::sin(phi) * start.tangent +
                   r * (1.0 - std::cos(phi)) * turn;
  }
  out.tangent = (std::cos(phi) * start.tangent + std::sin(phi) * turn).normalized();
  // Carry the rolled normal through the turn so successive bends stay in
  // the plane they were declared in.
  const Eigen::Vector3d turned_normal =
      -std::sin(phi) * start.tangent + std::cos(phi) * turn;
  const Eigen::Vector3d turned_binormal = out.tangent.cross(turned_normal);
  out.normal = (std::cos(roll) * turned_normal - std::sin(roll) * turned_binormal)
                   .normalized();
  return out;
}

void validate(const Segment& seg, std::size_t index) {
  auto fail = [index](const std::string& msg) {
    throw Error(ErrorKind::kInvalidArgument,
                "segment " + std::to_string(index) + ": " + msg);
  };
  if (!(seg.bore > 0.0) || !std::isfinite(seg.bore)) fail("bore must be positive");
  if (!(seg.length >= 0.0) || !std::isfinite(seg.length)) fail("length must be non-negative");
  if (!(seg.bend_radius >= 0.0) || !std::isfinite(seg.bend_radius)) fail("bend radius must be non-negative");
  if (!(seg.bend_angle >= 0.0) || !std::isfinite(seg.bend_angle)) fail("bend angle must be non-negative");
  if (!std::isfinite(seg.roll)) fail("roll must be finite");
}

}  // namespace

Segment Segment::Straight(double length, double bore) {
  Segment s;
  s.kind = SegmentKind::kStraight;
  s.length = length;
  s.bore = bore;
  return s;
}

Segment Segment::Constriction(double length, double bore) {
  Segment s = Straight(length, bore);
  s.kind = SegmentKind::kConstriction;
  return s;
}

Segment Segment::Bend(double radius, double angle_deg, double bore,
                      double roll_deg) {
  Segment s;
  s.kind = SegmentKind::kBend;
  s.bend_radius = radius;
  s.bend_angle = angle_deg;
  s.bore = bore;
  s.roll = roll_deg;
  return s;
}

double Segment::arc_length() const {
  if (kind != SegmentKind::kBend) return length;
  return bend_radius * deg_to_rad(bend_angle);
}

std::string to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kSharpBend:
      return "sharp-bend";
    case FeatureKind::kSweptBend:
      return "swept-bend";
    case FeatureKind::kConstriction:
      return "constriction";
  }
  return "unknown";
}

PipeRoute PipeRoute::Build(std::vector<Segment> segments, const Pose& entry) {
  if (segments.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "route has no segments");
  }
  if (!(entry.tangent.norm() > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "entry tangent must be non-zero");
  }
  PipeRoute route;
  route.entry_.position = entry.position;
  route.entry_.tangent = entry.tangent.normalized();

  Frame frame;
  frame.position = route.entry_.position;
  frame.tangent = route.entry_.tangent;
  frame.normal = initial_normal(frame.tangent);

  double s = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    validate(segments[i], i);
    route.starts_.push_back(s);
    route.start_frames_.push_back(frame);
    const double arc = segments[i].arc_length();
    frame = advance(segments[i], frame, arc);
    s += arc;
  }
  route.total_length_ = s;
  route.segments_ = std::move(segments);
  return route;
}

void PipeRoute::check_range(double s) const {
  if (!(s >= 0.0 && s <= total_length_)) {
    std::ostringstream os;
    os << "arc position " << s << " outside route [0, " << total_length_ << "]";
    throw Error(ErrorKind::kOutOfRange, os.str());
  }
}

std::size_t PipeRoute::segment_index_at(double s) const {
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), s);
  return static_cast<std::size_t>(std::distance(starts_.begin(), it)) - 1;
}

Frame PipeRoute::frame_at(double s) const {
  check_range(s);
  const std::size_t i = segment_index_at(s);
  const Segment& seg = segments_[i];
  const double u = std::clamp(s - starts_[i], 0.0, seg.arc_length());
  return advance(seg, start_frames_[i], u);
}

Pose PipeRoute::pose_at(double s) const {
  const Frame f = frame_at(s);
  return Pose{f.position, f.tangent};
}

double PipeRoute::bore_at(double s) const {
  check_range(s);
  return segments_[segment_index_at(s)].bore;
}

std::vector<Feature> PipeRoute::features() const {
  std::vector<Feature> out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& seg = segments_[i];
    Feature f;
    f.s = starts_[i];
    f.segment_index = i;
    f.bore = seg.bore;
    if (seg.kind == SegmentKind::kBend) {
      f.kind = seg.bend_style() == BendStyle::kSharp ? FeatureKind::kSharpBend
                                                     : FeatureKind::kSweptBend;
      f.angle_deg = seg.bend_angle;
    } else if (seg.kind == SegmentKind::kConstriction) {
      f.kind = FeatureKind::kConstriction;
    } else {
      continue;
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace evermap

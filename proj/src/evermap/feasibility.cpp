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

#include <cstdio>

#include "evermap/error.hpp"

namespace evermap {

MaterialRules MaterialRules::Defaults(Material material) {
  MaterialRules rules;
  rules.material = material;
  if (material == Material::kFabric) {
    rules.max_sharp_bend_deg = 30.0;
    rules.min_bore_ratio = 0.6;
    rules.notes = "seam stiffness and leaks folded into the bend limit";
  } else {
    rules.max_sharp_bend_deg = 90.0;
    rules.min_bore_ratio = 0.7;
  }
  return rules;
}

void validate(const MaterialRules& rules) {
  if (!(rules.min_bore_ratio > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "min_bore_ratio must be positive");
  }
  if (!(rules.max_sharp_bend_deg >= 0.0 && rules.max_sharp_bend_deg <= 180.0)) {
    throw Error(ErrorKind::kInvalidArgument, "max_sharp_bend_deg must be in [0, 180]");
  }
}

std::string to_string(BlockReason reason) {
  return reason == BlockReason::kSharpBend ? "sharp-bend" : "bore";
}

Verdict can_traverse(const RobotProfile& robot, const MaterialRules& rules,
                     const PipeRoute& route) {
  validate(robot);
  validate(rules);
  if (rules.material != robot.material) {
    throw Error(ErrorKind::kInvalidArgument,
                "rules for " + to_string(rules.material) + " applied to a " +
                    to_string(robot.material) + " robot");
  }
  const auto& segments = route.segments();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Segment& seg = segments[i];
    const double s = route.cumulative_s()[i];
    char buf[160];
    if (seg.kind == SegmentKind::kBend && seg.bend_style() == BendStyle::kSharp &&
        seg.bend_angle > rules.max_sharp_bend_deg) {
      std::snprintf(buf, sizeof buf, "sharp %.9g deg bend exceeds %.9g deg limit",
                    seg.bend_angle, rules.max_sharp_bend_deg);
      return Verdict{false, Blocker{s, i, BlockReason::kSharpBend, buf}};
    }
    const double ratio = seg.bore / robot.flat_diameter;
    if (ratio < rules.min_bore_ratio) {
      std::snprintf(buf, sizeof buf,
                    "bore %.9g m is %.9g of robot diameter, below %.9g", seg.bore,
                    ratio, rules.min_bore_ratio);
      return Verdict{false, Blocker{s, i, BlockReason::kBore, buf}};
    }
  }
  return Verdict{true, std::nullopt};
}

}  // namespace evermap

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

#ifndef EVERMAP_FEASIBILITY_HPP_
#define EVERMAP_FEASIBILITY_HPP_

#include <optional>
#include <string>

#include "evermap/kinematics.hpp"
#include "evermap/route.hpp"

namespace evermap {

// Traversal limits for one sleeve material.
struct MaterialRules {
  Material material = Material::kFabric;
  double max_sharp_bend_deg = 30.0;
  double min_bore_ratio = 0.6;  // bore / robot diameter
  std::string notes;

  static MaterialRules Defaults(Material material);
};

void validate(const MaterialRules& rules);

enum class BlockReason { kSharpBend, kBore };

std::string to_string(BlockReason reason);

struct Blocker {
  double s = 0.0;
  std::size_t segment_index = 0;
  BlockReason reason = BlockReason::kSharpBend;
  std::string description;
};

struct Verdict {
  bool feasible = true;
  std::optional<Blocker> blocker;
};

// Walks the route from the entrance and stops at the first sharp bend that
// is too tight or the first bore that is too narrow. Swept bends always
// pass. Throws Error(kInvalidArgument) if the rules are for another material.
Verdict can_traverse(const RobotProfile& robot, const MaterialRules& rules,
                     const PipeRoute& route);

}  // namespace evermap

#endif  // EVERMAP_FEASIBILITY_HPP_

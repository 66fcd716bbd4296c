/*
 * Copyright 2026 The apart authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef APART_ENGINE_HPP_
#define APART_ENGINE_HPP_

#include <vector>

#include "coalgebra.hpp"

namespace apart {

// Coarsest partition where same-block states have equal one-step behaviour
// up to the partition itself (computed by refinement from a single block).
// Requires a complete system.
Partition behavioural_equivalence(const Coalgebra& c);

// Complement of behavioural equivalence.  Cross-checked internally against
// the final tower level.
Relation behavioural_apartness(const Coalgebra& c);

// levels[0] is empty; levels[n+1] holds the pairs whose behaviours differ
// after n rounds of refinement.  The tower grows monotonically and freezes
// at the apartness relation.
struct Tower {
  std::vector<Relation> levels;
  bool stabilized = false;
};

// max_levels < 0 means run to stabilization (always reached within the
// number of states); otherwise stop after that many refinement steps.
Tower apartness_tower(const Coalgebra& c, int max_levels = -1);

enum class CoveringMode {
  Minimal,  // exactly the states reachable in one step from `of`
  Full,     // every state
};

struct Covering {
  std::vector<int> of;  // sorted
  std::vector<int> z;   // sorted
};

// One-step covering of a set of states: a Z that contains every state
// mentioned by their behaviours.  In minimal mode with no successors at all,
// Z falls back to `of` itself so the covering is never empty.
Covering one_step_covering(const Coalgebra& c, const std::vector<int>& of,
                           CoveringMode mode = CoveringMode::Minimal);

}  // namespace apart

#endif  // APART_ENGINE_HPP_

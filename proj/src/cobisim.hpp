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

#ifndef APART_COBISIM_HPP_
#define APART_COBISIM_HPP_

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "coalgebra.hpp"
#include "rational.hpp"

namespace apart {

// ---------------------------------------------------------------------------
// Distinguishing derivations for labelled transition systems, functor
// (P Id)^A: one side makes a move the other side cannot answer, and every
// attempted answer is refuted by a subderivation.

struct LtsDerivation;
using LtsPtr = std::shared_ptr<const LtsDerivation>;

struct LtsDerivation {
  int x = 0, y = 0;
  bool left_moves = true;  // whether x (left) or y (right) makes the move
  std::string label;
  int moved_to = 0;
  // One entry per `label`-successor of the non-moving side, in state order.
  std::vector<LtsPtr> subgoals;
};

// Null when x and y are bisimilar.  Deterministic: sides, labels, and
// successors are tried in declaration order.
LtsPtr lts_synthesize(const Coalgebra& c, int x, int y);

struct LtsCheckResult {
  bool valid = true;
  std::string node_path;
  std::string reason;
};

LtsCheckResult lts_check(const Coalgebra& c, const LtsDerivation& root);

// ---------------------------------------------------------------------------
// Weight couplings.  A coupling of two weight functions is a joint weight
// function with them as marginals, supported on allowed pairs only.

struct CouplingResult {
  bool exists = false;
  // When a coupling exists: (left state, right state, mass), positive masses
  // only.
  std::vector<std::tuple<int, int, Rational>> coupling;
  // Otherwise a certificate: a set A on one side whose mass exceeds the mass
  // of everything it is allowed to pair with on the other side.
  bool violator_on_left = true;
  std::vector<int> violator;
  std::vector<int> neighbors;
  Rational violator_mass, neighbor_mass;
};

// left/right are (state, positive mass) lists over the same universe as
// `forbidden`; pairs in `forbidden` may carry no mass.
CouplingResult coupling_exists(const std::vector<std::pair<int, Rational>>& left,
                               const std::vector<std::pair<int, Rational>>& right,
                               const Relation& forbidden);

// Least relation R such that two states are in R exactly when their weight
// functions admit no coupling avoiding R.  Functor must be exactly Ds Id.
// Agrees with behavioural apartness.
Relation cobisim_apart(const Coalgebra& c);

}  // namespace apart

#endif  // APART_COBISIM_HPP_

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

#ifndef APART_RECA_HPP_
#define APART_RECA_HPP_

#include <optional>
#include <string>
#include <vector>

#include "functor.hpp"
#include "relation.hpp"

namespace apart {

// The one-step "relation-carries-apartness" test: given a relation r of
// already-apart pairs, do two behaviours t1, t2 become distinguishable once
// states are identified up to the equivalence closure of the complement of
// r's symmetric closure?
//
// Two independent implementations are kept on purpose.  reca_direct
// normalizes both values under the induced partition and compares normal
// forms; reca_inductive decides the same predicate by structural recursion
// on the functor, one clause per constructor.  Tests pit them against each
// other; neither may call the other.
bool reca_direct(const FunctorExpr& f, const Relation& r, const BValue& v1, const BValue& v2);
bool reca_inductive(const FunctorExpr& f, const Relation& r, const BValue& v1, const BValue& v2);

// Where two distinct normal forms first disagree, plus the payload a proof
// reader needs to re-check the disagreement by hand.
struct Witness {
  struct Step {
    enum class Kind { Fst, Snd, Inl, Inr, At };
    Kind kind;
    std::string label;  // At only
  };

  enum class Kind {
    Atoms,         // two distinct constants
    StateClasses,  // two distinct block representatives
    Side,          // inl on one side, inr on the other
    DistClass,     // a class whose two masses differ
    SetMember,     // an element of one set apart from everything in the other
  };

  Kind kind = Kind::Atoms;
  std::vector<Step> path;

  std::string left, right;      // Atoms / StateClasses: names; Side: "inl"/"inr"
  std::string class_repr;       // DistClass: rendered class key; SetMember: rendered element
  Rational left_mass, right_mass;  // DistClass
  bool element_on_left = true;  // SetMember
};

// Locate a difference between two normal forms produced by the same
// partition p.  Returns nullopt when they are equal.
//
// Selection is deterministic: the first differing component in canonical
// order, except inside distributions, where among the differing classes the
// smallest block wins (ties broken canonically).  Smaller classes pin the
// disagreement on fewer states, which is also the choice made in worked
// examples of probabilistic systems.
std::optional<Witness> diff_normal_forms(const FunctorExpr& f, const Partition& p,
                                         const NormalForm& a, const NormalForm& b);

// Re-evaluate a recorded witness against two normal forms.  True iff the
// path is walkable and the payload reproduces a genuine difference with the
// recorded values.  On failure, *why names the first discrepancy.  The
// functor is walked alongside the path to resolve label names.
bool witness_holds(const FunctorExpr& f, const NormalForm& a, const NormalForm& b,
                   const Witness& w, std::string* why);

}  // namespace apart

#endif  // APART_RECA_HPP_

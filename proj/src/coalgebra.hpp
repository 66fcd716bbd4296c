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

#ifndef APART_COALGEBRA_HPP_
#define APART_COALGEBRA_HPP_

#include <optional>
#include <vector>

#include "error.hpp"
#include "functor.hpp"
#include "relation.hpp"

namespace apart {

// A finitely presented system: a functor, a state space, and for each state
// either its one-step behaviour or a marker that the behaviour is deliberately
// left open ("boundary" states of a fragment).
struct Coalgebra {
  FunctorPtr functor;
  UniversePtr states;
  std::vector<NamedSetPtr> sets;            // in declaration order
  std::vector<std::optional<BValue>> gamma;  // indexed like states
  std::vector<int> boundary;                 // indices with no gamma, sorted

  bool complete() const { return boundary.empty(); }

  const BValue& gamma_of(int s) const {
    const auto& g = gamma.at(static_cast<size_t>(s));
    if (!g) {
      throw Error(ErrorKind::Fragment,
                  "state '" + states->name(s) + "' has no declared behaviour");
    }
    return *g;
  }

  NamedSetPtr find_set(const std::string& name) const {
    for (const auto& s : sets) {
      if (s->name == name) return s;
    }
    return nullptr;
  }
};

}  // namespace apart

#endif  // APART_COALGEBRA_HPP_

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

#include "engine.hpp"

#include <algorithm>
#include <map>

namespace apart {

namespace {

void require_complete(const Coalgebra& c) {
  if (!c.complete()) {
    throw Error(ErrorKind::Fragment,
                "state '" + c.states->name(c.boundary.front()) +
                    "' has no declared behaviour; whole-relation operations need a complete system");
  }
}

std::vector<NormalForm> normal_forms_under(const Coalgebra& c, const Partition& p) {
  std::vector<NormalForm> nfs;
  nfs.reserve(static_cast<size_t>(c.states->size()));
  for (int s = 0; s < c.states->size(); ++s) {
    nfs.push_back(normalize(p, c.gamma_of(s)));
  }
  return nfs;
}

struct nf_less {
  bool operator()(const NormalForm& a, const NormalForm& b) const {
    return BValue::compare(a.value, b.value) < 0;
  }
};

Partition split_by_normal_form(const Coalgebra& c, const std::vector<NormalForm>& nfs) {
  std::map<NormalForm, int, nf_less> block_ids;
  std::vector<int> assignment(static_cast<size_t>(c.states->size()));
  for (int s = 0; s < c.states->size(); ++s) {
    auto it = block_ids.emplace(nfs[static_cast<size_t>(s)], static_cast<int>(block_ids.size()))
                  .first;
    assignment[static_cast<size_t>(s)] = it->second;
  }
  return Partition::from_block_assignment(c.states, assignment);
}

Relation cross_pairs(const Coalgebra& c, const std::vector<NormalForm>& nfs) {
  Relation r(c.states);
  for (int a = 0; a < c.states->size(); ++a) {
    for (int b = a + 1; b < c.states->size(); ++b) {
      if (nfs[static_cast<size_t>(a)] != nfs[static_cast<size_t>(b)]) {
        r.add_symmetric(a, b);
      }
    }
  }
  return r;
}

}  // namespace

Tower apartness_tower(const Coalgebra& c, int max_levels) {
  require_complete(c);
  Tower t;
  t.levels.push_back(Relation(c.states));  // level 0: nothing is apart yet
  Partition p = Partition::single_block(c.states);
  int n = c.states->size();
  // The partition can properly refine at most n - 1 times, so stabilization
  // must show up within n rounds; anything more is a refinement bug.
  int guard = n + 1;
  while (max_levels < 0 || static_cast<int>(t.levels.size()) <= max_levels) {
    std::vector<NormalForm> nfs = normal_forms_under(c, p);
    Relation next = cross_pairs(c, nfs);
    if (next == t.levels.back()) {
      t.stabilized = true;
      break;
    }
    t.levels.push_back(next);
    p = split_by_normal_form(c, nfs);
    if (--guard < 0) {
      throw Error(ErrorKind::Internal, "apartness tower failed to stabilize within " +
                                           std::to_string(n + 1) + " levels");
    }
  }
  return t;
}

Partition behavioural_equivalence(const Coalgebra& c) {
  require_complete(c);
  Partition p = Partition::single_block(c.states);
  int guard = c.states->size() + 1;
  for (;;) {
    Partition next = split_by_normal_form(c, normal_forms_under(c, p));
    if (next == p) return p;
    p = std::move(next);
    if (--guard < 0) {
      throw Error(ErrorKind::Internal, "partition refinement failed to stabilize");
    }
  }
}

Relation behavioural_apartness(const Coalgebra& c) {
  Partition p = behavioural_equivalence(c);
  Relation apart = p.complement_relation();
  Tower t = apartness_tower(c);
  if (!(t.levels.back() == apart)) {
    throw Error(ErrorKind::Internal,
                "tower limit disagrees with the complement of behavioural equivalence");
  }
  return apart;
}

Covering one_step_covering(const Coalgebra& c, const std::vector<int>& of, CoveringMode mode) {
  if (of.empty()) {
    throw Error(ErrorKind::Usage, "covering of an empty state set");
  }
  Covering cov;
  cov.of = of;
  std::sort(cov.of.begin(), cov.of.end());
  cov.of.erase(std::unique(cov.of.begin(), cov.of.end()), cov.of.end());
  if (cov.of.front() < 0 || cov.of.back() >= c.states->size()) {
    throw Error(ErrorKind::Usage, "covering of a state outside the system");
  }
  if (mode == CoveringMode::Full) {
    for (int s = 0; s < c.states->size(); ++s) cov.z.push_back(s);
    return cov;
  }
  for (int s : cov.of) {
    std::vector<int> sup = support_of(c.gamma_of(s));
    cov.z.insert(cov.z.end(), sup.begin(), sup.end());
  }
  std::sort(cov.z.begin(), cov.z.end());
  cov.z.erase(std::unique(cov.z.begin(), cov.z.end()), cov.z.end());
  if (cov.z.empty()) {
    // No successors anywhere (e.g. terminated states): any non-empty Z will
    // do, and the states themselves are the least surprising choice.
    cov.z = cov.of;
  }
  return cov;
}

}  // namespace apart

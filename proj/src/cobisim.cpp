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

#include "cobisim.hpp"

#include <algorithm>
#include <deque>
#include <optional>

#include "engine.hpp"

namespace apart {

namespace {

const NamedSet& require_lts(const Coalgebra& c) {
  const FunctorExpr& f = *c.functor;
  if (f.kind() == FunctorExpr::Kind::Exponent &&
      f.left()->kind() == FunctorExpr::Kind::Powerset &&
      f.left()->left()->kind() == FunctorExpr::Kind::Id) {
    return *f.set();
  }
  throw Error(ErrorKind::Shape, "transition-system derivations need functor (P Id)^A");
}

std::vector<int> successors(const Coalgebra& c, int s, size_t label_index) {
  std::vector<int> out;
  for (const BValue& v : c.gamma_of(s).entries()[label_index].entries()) {
    out.push_back(v.index());
  }
  return out;
}

}  // namespace

LtsPtr lts_synthesize(const Coalgebra& c, int x, int y) {
  const NamedSet& labels = require_lts(c);
  Tower tower = apartness_tower(c);
  if (x == y || !tower.levels.back().contains(x, y)) return nullptr;

  auto level_of = [&](int a, int b) {
    for (size_t m = 0; m < tower.levels.size(); ++m) {
      if (tower.levels[m].contains(a, b)) return m;
    }
    throw Error(ErrorKind::Internal, "apart pair missing from the tower");
  };

  // A pair enters level m because some successor class on one side has no
  // counterpart on the other at level m-1, so a suitable move always exists.
  auto build = [&](auto&& self, int a, int b) -> LtsPtr {
    const Relation& base = tower.levels[level_of(a, b) - 1];
    for (bool left_moves : {true, false}) {
      int mover = left_moves ? a : b;
      int other = left_moves ? b : a;
      for (size_t li = 0; li < labels.elems.size(); ++li) {
        std::vector<int> answers = successors(c, other, li);
        for (int s : successors(c, mover, li)) {
          bool unmatched = true;
          for (int t : answers) {
            if (!base.contains(s, t)) {
              unmatched = false;
              break;
            }
          }
          if (!unmatched) continue;
          auto node = std::make_shared<LtsDerivation>();
          node->x = a;
          node->y = b;
          node->left_moves = left_moves;
          node->label = labels.elems[li];
          node->moved_to = s;
          for (int t : answers) {
            node->subgoals.push_back(left_moves ? self(self, s, t) : self(self, t, s));
          }
          return node;
        }
      }
    }
    throw Error(ErrorKind::Internal, "no distinguishing move for an apart pair");
  };
  return build(build, x, y);
}

namespace {

std::optional<std::pair<std::vector<std::string>, std::string>> lts_check_rec(
    const Coalgebra& c, const NamedSet& labels, const LtsDerivation& n,
    std::vector<std::string>& path) {
  path.push_back(c.states->name(n.x) + " # " + c.states->name(n.y));
  auto fail = [&](const std::string& reason) { return std::make_pair(path, reason); };

  for (int s : {n.x, n.y, n.moved_to}) {
    if (s < 0 || s >= c.states->size()) return fail("state out of range");
  }
  for (int s : {n.x, n.y}) {
    if (!c.gamma[static_cast<size_t>(s)]) {
      return fail("state '" + c.states->name(s) + "' has no declared behaviour");
    }
  }
  auto li = labels.find(n.label);
  if (!li) return fail("unknown label '" + n.label + "'");
  int mover = n.left_moves ? n.x : n.y;
  int other = n.left_moves ? n.y : n.x;
  std::vector<int> moves = successors(c, mover, static_cast<size_t>(*li));
  if (std::find(moves.begin(), moves.end(), n.moved_to) == moves.end()) {
    return fail("'" + c.states->name(mover) + "' has no " + n.label + "-move to '" +
                c.states->name(n.moved_to) + "'");
  }
  std::vector<int> answers = successors(c, other, static_cast<size_t>(*li));
  if (n.subgoals.size() != answers.size()) {
    return fail("expected " + std::to_string(answers.size()) + " subgoals, found " +
                std::to_string(n.subgoals.size()));
  }
  for (size_t i = 0; i < answers.size(); ++i) {
    int el = n.left_moves ? n.moved_to : answers[i];
    int er = n.left_moves ? answers[i] : n.moved_to;
    const LtsPtr& sub = n.subgoals[i];
    if (!sub) return fail("missing subgoal");
    if (sub->x != el || sub->y != er) {
      return fail("subgoal mismatch: expected (" + c.states->name(el) + ", " +
                  c.states->name(er) + ")");
    }
    auto f = lts_check_rec(c, labels, *sub, path);
    if (f) return f;
  }
  path.pop_back();
  return std::nullopt;
}

}  // namespace

LtsCheckResult lts_check(const Coalgebra& c, const LtsDerivation& root) {
  const NamedSet& labels = require_lts(c);
  std::vector<std::string> path;
  auto f = lts_check_rec(c, labels, root, path);
  LtsCheckResult out;
  if (f) {
    out.valid = false;
    for (size_t i = 0; i < f->first.size(); ++i) {
      if (i) out.node_path += " > ";
      out.node_path += f->first[i];
    }
    out.reason = f->second;
  }
  return out;
}

CouplingResult coupling_exists(const std::vector<std::pair<int, Rational>>& left,
                               const std::vector<std::pair<int, Rational>>& right,
                               const Relation& forbidden) {
  CouplingResult res;
  Rational tl = 0, tr = 0;
  for (const auto& [s, m] : left) tl += m;
  for (const auto& [s, m] : right) tr += m;

  auto allowed = [&](int a, int b) { return !forbidden.contains(a, b); };

  if (tl != tr) {
    // No joint weight function can have marginals of different total mass;
    // the whole heavier side is already a violator.
    res.exists = false;
    res.violator_on_left = tl > tr;
    const auto& big = res.violator_on_left ? left : right;
    const auto& small = res.violator_on_left ? right : left;
    for (const auto& [s, m] : big) res.violator.push_back(s);
    for (const auto& [t, m] : small) {
      for (const auto& [s, m2] : big) {
        bool ok = res.violator_on_left ? allowed(s, t) : allowed(t, s);
        if (ok) {
          res.neighbors.push_back(t);
          break;
        }
      }
    }
    res.violator_mass = res.violator_on_left ? tl : tr;
    for (const auto& [t, m] : small) {
      if (std::find(res.neighbors.begin(), res.neighbors.end(), t) != res.neighbors.end()) {
        res.neighbor_mass += m;
      }
    }
    return res;
  }

  size_t nl = left.size(), nr = right.size();
  size_t src = 0, sink = nl + nr + 1, nodes = nl + nr + 2;
  std::vector<std::vector<Rational>> cap(nodes, std::vector<Rational>(nodes, Rational(0)));
  Rational inf = tl + 1;
  for (size_t i = 0; i < nl; ++i) cap[src][1 + i] = left[i].second;
  for (size_t j = 0; j < nr; ++j) cap[1 + nl + j][sink] = right[j].second;
  for (size_t i = 0; i < nl; ++i) {
    for (size_t j = 0; j < nr; ++j) {
      if (allowed(left[i].first, right[j].first)) cap[1 + i][1 + nl + j] = inf;
    }
  }

  std::vector<std::vector<Rational>> flow(nodes, std::vector<Rational>(nodes, Rational(0)));
  auto residual = [&](size_t u, size_t v) -> Rational { return cap[u][v] - flow[u][v]; };
  Rational value = 0;
  for (;;) {
    std::vector<int> parent(nodes, -1);
    parent[src] = static_cast<int>(src);
    std::deque<size_t> q{src};
    while (!q.empty() && parent[sink] < 0) {
      size_t u = q.front();
      q.pop_front();
      for (size_t v = 0; v < nodes; ++v) {
        if (parent[v] < 0 && residual(u, v) > 0) {
          parent[v] = static_cast<int>(u);
          q.push_back(v);
        }
      }
    }
    if (parent[sink] < 0) break;
    Rational bottleneck = inf;
    for (size_t v = sink; v != src; v = static_cast<size_t>(parent[v])) {
      bottleneck = std::min(bottleneck, residual(static_cast<size_t>(parent[v]), v));
    }
    for (size_t v = sink; v != src; v = static_cast<size_t>(parent[v])) {
      size_t u = static_cast<size_t>(parent[v]);
      flow[u][v] += bottleneck;
      flow[v][u] -= bottleneck;
    }
    value += bottleneck;
  }

  if (value == tl) {
    res.exists = true;
    for (size_t i = 0; i < nl; ++i) {
      for (size_t j = 0; j < nr; ++j) {
        if (flow[1 + i][1 + nl + j] > 0) {
          res.coupling.emplace_back(left[i].first, right[j].first, flow[1 + i][1 + nl + j]);
        }
      }
    }
    return res;
  }

  // The residual cut from the source is a certificate: the reachable left
  // states can only pair with the reachable right states, and those carry
  // strictly less mass.
  res.exists = false;
  res.violator_on_left = true;
  std::vector<bool> seen(nodes, false);
  seen[src] = true;
  std::deque<size_t> q{src};
  while (!q.empty()) {
    size_t u = q.front();
    q.pop_front();
    for (size_t v = 0; v < nodes; ++v) {
      if (!seen[v] && residual(u, v) > 0) {
        seen[v] = true;
        q.push_back(v);
      }
    }
  }
  for (size_t i = 0; i < nl; ++i) {
    if (seen[1 + i]) {
      res.violator.push_back(left[i].first);
      res.violator_mass += left[i].second;
    }
  }
  for (size_t j = 0; j < nr; ++j) {
    if (seen[1 + nl + j]) {
      res.neighbors.push_back(right[j].first);
      res.neighbor_mass += right[j].second;
    }
  }
  if (!(res.violator_mass > res.neighbor_mass)) {
    throw Error(ErrorKind::Internal, "flow certificate does not violate the pairing condition");
  }
  return res;
}

namespace {

std::vector<std::pair<int, Rational>> weight_list(const BValue& dist) {
  std::vector<std::pair<int, Rational>> out;
  for (size_t i = 0; i < dist.arity(); ++i) {
    out.emplace_back(dist.entries()[i].index(), dist.weight(i));
  }
  return out;
}

}  // namespace

Relation cobisim_apart(const Coalgebra& c) {
  if (!(c.functor->kind() == FunctorExpr::Kind::SubDist &&
        c.functor->left()->kind() == FunctorExpr::Kind::Id)) {
    throw Error(ErrorKind::Shape, "weight-coupling comparison needs functor Ds Id");
  }
  if (!c.complete()) {
    throw Error(ErrorKind::Fragment,
                "state '" + c.states->name(c.boundary.front()) +
                    "' has no declared behaviour; whole-relation operations need a complete system");
  }
  int n = c.states->size();
  std::vector<std::vector<std::pair<int, Rational>>> dists;
  dists.reserve(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) dists.push_back(weight_list(c.gamma_of(s)));

  Relation r(c.states);
  int guard = n * n + 1;
  for (;;) {
    Relation next(c.states);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (!coupling_exists(dists[static_cast<size_t>(a)], dists[static_cast<size_t>(b)], r)
                 .exists) {
          next.add_symmetric(a, b);
        }
      }
    }
    if (next == r) return r;
    r = next;
    if (--guard < 0) {
      throw Error(ErrorKind::Internal, "coupling fixpoint failed to stabilize");
    }
  }
}

}  // namespace apart

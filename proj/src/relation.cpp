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

#include "relation.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "error.hpp"

namespace apart {

namespace {

void require_same_universe(const Relation& a, const Relation& b) {
  if (!a.universe()->same_names(*b.universe()))
    throw Error(ErrorKind::Usage, "relations live on different universes");
}

// Indices in z must exist in u and be strictly increasing; we sort and
// dedupe on behalf of the caller so covering sets can be handed over as-is.
std::vector<int> checked_subset(const UniversePtr& u, std::vector<int> z) {
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());
  for (int i : z) {
    if (i < 0 || i >= u->size())
      throw Error(ErrorKind::Usage, "restriction set is not a subset of the universe");
  }
  return z;
}

}  // namespace

Universe::Universe(std::vector<std::string> names) : names_(std::move(names)) {}

std::optional<int> Universe::find(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

int Universe::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorKind::Usage, "unknown state '" + name + "'");
  return *i;
}

UniversePtr make_universe(std::vector<std::string> names) {
  return std::make_shared<const Universe>(std::move(names));
}

UniversePtr sub_universe(const UniversePtr& u, const std::vector<int>& indices) {
  std::vector<int> z = checked_subset(u, indices);
  std::vector<std::string> names;
  names.reserve(z.size());
  for (int i : z) names.push_back(u->name(i));
  return make_universe(std::move(names));
}

Relation::Relation(UniversePtr u) : u_(std::move(u)) {
  bits_.resize(static_cast<size_t>(u_->size()) * static_cast<size_t>(u_->size()));
}

Relation Relation::total(UniversePtr u) {
  Relation r(std::move(u));
  r.bits_.set();
  return r;
}

Relation Relation::identity(UniversePtr u) {
  Relation r(std::move(u));
  for (int i = 0; i < r.universe_size(); ++i) r.add(i, i);
  return r;
}

bool Relation::is_symmetric() const {
  int n = universe_size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (contains(a, b) != contains(b, a)) return false;
  return true;
}

std::vector<std::pair<int, int>> Relation::pairs() const {
  std::vector<std::pair<int, int>> out;
  int n = universe_size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (contains(a, b)) out.emplace_back(a, b);
  return out;
}

std::vector<std::pair<int, int>> Relation::unordered_pairs() const {
  std::vector<std::pair<int, int>> out;
  int n = universe_size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (contains(a, b) || contains(b, a)) out.emplace_back(a, b);
  return out;
}

Relation Relation::symmetric_closure() const {
  Relation r = *this;
  int n = universe_size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (contains(a, b)) r.add(b, a);
  return r;
}

Relation Relation::complement() const {
  Relation r = *this;
  r.bits_.flip();
  return r;
}

Relation Relation::union_with(const Relation& other) const {
  require_same_universe(*this, other);
  Relation r = *this;
  r.bits_ |= other.bits_;
  return r;
}

Relation Relation::intersect(const Relation& other) const {
  require_same_universe(*this, other);
  Relation r = *this;
  r.bits_ &= other.bits_;
  return r;
}

bool Relation::subset_of(const Relation& other) const {
  require_same_universe(*this, other);
  return bits_.is_subset_of(other.bits_);
}

bool Relation::operator==(const Relation& other) const {
  return u_->same_names(*other.u_) && bits_ == other.bits_;
}

Relation Relation::restrict(const std::vector<int>& z) const {
  std::vector<int> sel = checked_subset(u_, z);
  Relation r(sub_universe(u_, sel));
  for (size_t a = 0; a < sel.size(); ++a)
    for (size_t b = 0; b < sel.size(); ++b)
      if (contains(sel[a], sel[b])) r.add(static_cast<int>(a), static_cast<int>(b));
  return r;
}

Partition Partition::discrete(UniversePtr u) {
  std::vector<int> block_of(static_cast<size_t>(u->size()));
  std::iota(block_of.begin(), block_of.end(), 0);
  return from_block_assignment(std::move(u), block_of);
}

Partition Partition::single_block(UniversePtr u) {
  std::vector<int> block_of(static_cast<size_t>(u->size()), 0);
  return from_block_assignment(std::move(u), block_of);
}

Partition Partition::from_block_assignment(UniversePtr u, const std::vector<int>& raw) {
  if (static_cast<int>(raw.size()) != u->size())
    throw Error(ErrorKind::Internal, "block assignment size mismatch");
  // Canonicalize: renumber blocks by first occurrence, which equals ordering
  // by least member since states are scanned in declaration order.
  std::unordered_map<int, int> renumber;
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(raw.size());
  for (size_t s = 0; s < raw.size(); ++s) {
    auto it = renumber.find(raw[s]);
    int b;
    if (it == renumber.end()) {
      b = static_cast<int>(blocks.size());
      renumber.emplace(raw[s], b);
      blocks.emplace_back();
    } else {
      b = it->second;
    }
    block_of[s] = b;
    blocks[static_cast<size_t>(b)].push_back(static_cast<int>(s));
  }
  return Partition(std::move(u), std::move(block_of), std::move(blocks));
}

Relation Partition::induced_relation() const {
  Relation r(u_);
  for (const auto& block : blocks_)
    for (int a : block)
      for (int b : block) r.add(a, b);
  return r;
}

Relation Partition::complement_relation() const {
  return induced_relation().complement();
}

Partition Partition::restrict(const std::vector<int>& z) const {
  std::vector<int> sel = z;
  std::sort(sel.begin(), sel.end());
  sel.erase(std::unique(sel.begin(), sel.end()), sel.end());
  UniversePtr sub = sub_universe(u_, sel);
  std::vector<int> block_of(sel.size());
  for (size_t i = 0; i < sel.size(); ++i) block_of[i] = this->block_of(sel[i]);
  return from_block_assignment(std::move(sub), block_of);
}

bool Partition::refines(const Partition& other) const {
  if (!u_->same_names(*other.u_)) return false;
  for (const auto& block : blocks_) {
    int target = other.block_of(block.front());
    for (int s : block)
      if (other.block_of(s) != target) return false;
  }
  return true;
}

Partition Partition::merged(int a, int b) const {
  std::vector<int> block_of = block_of_;
  int from = block_of[static_cast<size_t>(b)];
  int to = block_of[static_cast<size_t>(a)];
  for (auto& x : block_of)
    if (x == from) x = to;
  return from_block_assignment(u_, block_of);
}

bool Partition::operator==(const Partition& other) const {
  return u_->same_names(*other.u_) && blocks_ == other.blocks_;
}

std::string Partition::to_string() const {
  std::string out;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += " ";
    out += "{";
    for (size_t j = 0; j < blocks_[i].size(); ++j) {
      if (j) out += ", ";
      out += u_->name(blocks_[i][j]);
    }
    out += "}";
  }
  return out;
}

namespace {

// Plain union-find; path halving is plenty at the sizes we deal with.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

Partition equivalence_closure(const Relation& r) {
  int n = r.universe_size();
  UnionFind uf(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (r.contains(a, b)) uf.unite(a, b);
  std::vector<int> block_of(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) block_of[static_cast<size_t>(s)] = uf.find(s);
  return Partition::from_block_assignment(r.universe(), block_of);
}

Relation apartness_interior(const Relation& r) {
  if (!r.is_symmetric())
    throw Error(ErrorKind::Usage, "apartness interior requires a symmetric relation");
  return equivalence_closure(r.complement()).complement_relation();
}

ApartnessViolation is_apartness(const Relation& r) {
  ApartnessViolation v;
  int n = r.universe_size();
  for (int a = 0; a < n; ++a) {
    if (r.contains(a, a)) {
      v.kind = ApartnessViolation::Kind::Reflexive;
      v.a = a;
      return v;
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (r.contains(a, b) && !r.contains(b, a)) {
        v.kind = ApartnessViolation::Kind::NotSymmetric;
        v.a = a;
        v.b = b;
        return v;
      }
  // Cotransitivity: a # b implies a # c or c # b for every c.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (r.contains(a, b))
        for (int c = 0; c < n; ++c)
          if (!r.contains(a, c) && !r.contains(c, b)) {
            v.kind = ApartnessViolation::Kind::NotCotransitive;
            v.a = a;
            v.b = b;
            v.c = c;
            return v;
          }
  return v;
}

}  // namespace apart

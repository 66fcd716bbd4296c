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

#ifndef APART_RELATION_HPP_
#define APART_RELATION_HPP_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace apart {

// An immutable ordered set of state names.  Declaration order in the source
// file is the canonical order used for block representatives, pair sorting
// and printed output, so everything downstream shares one Universe object.
class Universe {
 public:
  explicit Universe(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<int> find(const std::string& name) const;
  // Like find(), but throws Error(Usage) naming the missing state.
  int index_of(const std::string& name) const;

  bool same_names(const Universe& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

using UniversePtr = std::shared_ptr<const Universe>;

UniversePtr make_universe(std::vector<std::string> names);
// Sub-universe keeping the relative order of the selected indices.
UniversePtr sub_universe(const UniversePtr& u, const std::vector<int>& indices);

class Partition;

// A binary relation on a universe, stored as a bitset over universe².
class Relation {
 public:
  explicit Relation(UniversePtr u);

  static Relation total(UniversePtr u);
  static Relation identity(UniversePtr u);

  const UniversePtr& universe() const { return u_; }
  int universe_size() const { return u_->size(); }

  bool contains(int a, int b) const { return bits_[idx(a, b)]; }
  void add(int a, int b) { bits_.set(idx(a, b)); }
  void add_symmetric(int a, int b) { add(a, b); add(b, a); }
  void remove(int a, int b) { bits_.reset(idx(a, b)); }
  void remove_symmetric(int a, int b) { remove(a, b); remove(b, a); }

  size_t pair_count() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool is_symmetric() const;

  // All ordered pairs, sorted by (first, second).
  std::vector<std::pair<int, int>> pairs() const;
  // Pairs (a,b) with a < b present in either orientation.  Only meaningful
  // for relations used symmetrically (proof relations, tower levels).
  std::vector<std::pair<int, int>> unordered_pairs() const;

  Relation symmetric_closure() const;
  Relation complement() const;
  Relation union_with(const Relation& other) const;
  Relation intersect(const Relation& other) const;
  bool subset_of(const Relation& other) const;
  bool operator==(const Relation& other) const;
  bool operator!=(const Relation& other) const { return !(*this == other); }

  // Restriction to a subset of the universe; the universe of the result is
  // exactly z (order inherited).  Throws Error(Usage) if z is not a subset.
  Relation restrict(const std::vector<int>& z) const;

 private:
  size_t idx(int a, int b) const {
    return static_cast<size_t>(a) * static_cast<size_t>(u_->size()) +
           static_cast<size_t>(b);
  }

  UniversePtr u_;
  boost::dynamic_bitset<> bits_;
};

// A partition of a universe in canonical form: every block is sorted, blocks
// are ordered by least member, and the least member is the representative.
class Partition {
 public:
  static Partition discrete(UniversePtr u);
  static Partition single_block(UniversePtr u);
  static Partition from_block_assignment(UniversePtr u, const std::vector<int>& block_of);

  const UniversePtr& universe() const { return u_; }
  int block_of(int state) const { return block_of_[static_cast<size_t>(state)]; }
  int representative(int state) const { return blocks_[static_cast<size_t>(block_of(state))].front(); }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int block_size_of(int state) const { return static_cast<int>(blocks_[static_cast<size_t>(block_of(state))].size()); }

  bool same_block(int a, int b) const { return block_of(a) == block_of(b); }

  // The equivalence relation {(a,b) | same block}, diagonal included.
  Relation induced_relation() const;
  // Its complement: the apartness of cross-block pairs.
  Relation complement_relation() const;

  // Restriction to a subset of the universe (blocks intersected with z,
  // empty intersections dropped).  The result lives on sub-universe z.
  Partition restrict(const std::vector<int>& z) const;

  // True when every block of this partition is contained in one of other's.
  bool refines(const Partition& other) const;

  // Coarsening helper used by tests: merge the blocks containing a and b.
  Partition merged(int a, int b) const;

  bool operator==(const Partition& other) const;
  bool operator!=(const Partition& other) const { return !(*this == other); }

  std::string to_string() const;  // "{x} {x1, y1} ..."

 private:
  Partition(UniversePtr u, std::vector<int> block_of, std::vector<std::vector<int>> blocks)
      : u_(std::move(u)), block_of_(std::move(block_of)), blocks_(std::move(blocks)) {}

  UniversePtr u_;
  std::vector<int> block_of_;
  std::vector<std::vector<int>> blocks_;
};

// Smallest equivalence containing r, as a partition (union-find underneath).
Partition equivalence_closure(const Relation& r);

// Largest apartness contained in a symmetric relation r:
//   interior(r) = complement(equivalence_closure(complement(r))).
// Throws Error(Usage) when r is not symmetric.
Relation apartness_interior(const Relation& r);

// Apartness axiom check with a counterexample.
struct ApartnessViolation {
  enum class Kind { None, Reflexive, NotSymmetric, NotCotransitive };
  Kind kind = Kind::None;
  int a = -1, b = -1, c = -1;  // Reflexive uses a; NotSymmetric a,b; NotCotransitive a,b,c
};
ApartnessViolation is_apartness(const Relation& r);

}  // namespace apart

#endif  // APART_RELATION_HPP_

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

#ifndef APART_FUNCTOR_HPP_
#define APART_FUNCTOR_HPP_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"
#include "relation.hpp"

namespace apart {

// A declared finite set of atoms (also used as exponent label sets).
// Element order is declaration order and is canonical.
struct NamedSet {
  std::string name;
  std::vector<std::string> elems;

  std::optional<int> find(const std::string& e) const {
    for (size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == e) return static_cast<int>(i);
    return std::nullopt;
  }
};

using NamedSetPtr = std::shared_ptr<const NamedSet>;

// Behaviour functor expression:
//   B ::= Id | A | B x B | B + B | B^A | P B | Ds B
// with A ranging over declared named sets.
class FunctorExpr;
using FunctorPtr = std::shared_ptr<const FunctorExpr>;

class FunctorExpr {
 public:
  enum class Kind { Id, Constant, Product, Coproduct, Exponent, Powerset, SubDist };

  static FunctorPtr id();
  static FunctorPtr constant(NamedSetPtr set);
  static FunctorPtr product(FunctorPtr l, FunctorPtr r);
  static FunctorPtr coproduct(FunctorPtr l, FunctorPtr r);
  static FunctorPtr exponent(FunctorPtr body, NamedSetPtr labels);
  static FunctorPtr powerset(FunctorPtr body);
  static FunctorPtr subdist(FunctorPtr body);

  Kind kind() const { return kind_; }
  const NamedSetPtr& set() const { return set_; }       // Constant atoms / Exponent labels
  const FunctorPtr& left() const { return left_; }      // Product/Coproduct left, unary body
  const FunctorPtr& right() const { return right_; }    // Product/Coproduct right

  int depth() const;
  bool mentions_id() const;
  bool structurally_equal(const FunctorExpr& other) const;

  // Render with minimal parentheses ('*' binds tighter than '+', postfix '^'
  // tighter than prefix P/Ds).
  std::string to_string() const;

 private:
  FunctorExpr(Kind k, NamedSetPtr set, FunctorPtr l, FunctorPtr r)
      : kind_(k), set_(std::move(set)), left_(std::move(l)), right_(std::move(r)) {}

  Kind kind_;
  NamedSetPtr set_;
  FunctorPtr left_, right_;
};

// An element of B(X): the one-step behaviour of a state.  Values are stored
// canonically (set elements and distribution keys sorted, no duplicates) so
// structural equality is string-free and cheap.
class BValue {
 public:
  enum class Kind { State, Atom, Pair, Inl, Inr, Table, Set, Dist };

  static BValue state(int index, std::string name);
  static BValue atom(int index, std::string name);
  static BValue pair(BValue first, BValue second);
  static BValue inl(BValue v);
  static BValue inr(BValue v);
  // One entry per label, in declared label order.
  static BValue table(std::vector<BValue> entries);
  // Sorts and deduplicates.
  static BValue set(std::vector<BValue> elems);
  // Sorts keys and merges duplicates by adding weights.
  static BValue dist(std::vector<std::pair<BValue, Rational>> entries);

  Kind kind() const { return kind_; }

  // State / Atom accessors.
  int index() const { return index_; }
  const std::string& name() const { return name_; }

  const BValue& first() const { return children_[0]; }    // Pair
  const BValue& second() const { return children_[1]; }   // Pair
  const BValue& body() const { return children_[0]; }     // Inl / Inr
  const std::vector<BValue>& entries() const { return children_; }  // Table/Set/Dist keys
  const Rational& weight(size_t i) const { return weights_[i]; }    // Dist
  size_t arity() const { return children_.size(); }

  Rational dist_total() const;

  bool operator==(const BValue& other) const { return compare(*this, other) == 0; }
  bool operator!=(const BValue& other) const { return compare(*this, other) != 0; }

  // Total canonical order: kind rank first, then indices / children
  // lexicographically; Dist entries compare as (key, weight) lists.
  static int compare(const BValue& a, const BValue& b);

  // Canonical text, same syntax the system-file parser accepts.
  std::string to_string() const;

 private:
  BValue() = default;

  Kind kind_ = Kind::State;
  int index_ = -1;
  std::string name_;
  std::vector<BValue> children_;
  std::vector<Rational> weights_;
};

// Shape check of v against functor f over the given state universe; throws
// Error(Shape) with a path-addressed message ("at .fst(a)[2]: ...").
void validate_value(const FunctorExpr& f, const Universe& states, const BValue& v);

// State indices mentioned anywhere in v (sorted, deduplicated).
std::vector<int> support_of(const BValue& v);

// A BValue in which every state reference has been replaced by the canonical
// representative of its block, with sets deduplicated and distribution
// weights merged accordingly.  Wrapping it keeps "already normalized" visible
// in signatures.
struct NormalForm {
  BValue value;

  bool operator==(const NormalForm& other) const { return value == other.value; }
  bool operator!=(const NormalForm& other) const { return value != other.value; }
};

// Quotient v by partition p.  State references are looked up by name in p's
// universe (which may be a sub-universe: covering restrictions), and the
// resulting references carry the representative's index in that universe.
// Throws Error(Shape) when v mentions a state outside p's universe.
NormalForm normalize(const Partition& p, const BValue& v);

}  // namespace apart

#endif  // APART_FUNCTOR_HPP_

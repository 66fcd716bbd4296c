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

#include "reca.hpp"

#include <algorithm>
#include <map>

#include "error.hpp"

namespace apart {

namespace {

int state_index_in(const Universe& u, const BValue& v) {
  auto i = u.find(v.name());
  if (!i) {
    throw Error(ErrorKind::Shape, "state '" + v.name() + "' is not in the relation's universe");
  }
  return *i;
}

}  // namespace

bool reca_direct(const FunctorExpr& f, const Relation& r, const BValue& v1, const BValue& v2) {
  (void)f;  // normal forms compare structurally; the functor already shaped the values
  Partition p = equivalence_closure(r.symmetric_closure().complement());
  return normalize(p, v1) != normalize(p, v2);
}

namespace {

class inductive_test {
 public:
  explicit inductive_test(const Relation& r)
      : universe_(r.universe()),
        interior_(apartness_interior(r.symmetric_closure())) {}

  bool apart(const FunctorExpr& f, const BValue& a, const BValue& b) {
    switch (f.kind()) {
      case FunctorExpr::Kind::Id: {
        int i = state_index_in(*universe_, a);
        int j = state_index_in(*universe_, b);
        return interior_.contains(i, j);
      }
      case FunctorExpr::Kind::Constant:
        return a.name() != b.name();
      case FunctorExpr::Kind::Product:
        return apart(*f.left(), a.first(), b.first()) ||
               apart(*f.right(), a.second(), b.second());
      case FunctorExpr::Kind::Coproduct: {
        bool a_left = a.kind() == BValue::Kind::Inl;
        bool b_left = b.kind() == BValue::Kind::Inl;
        if (a_left != b_left) {
          // One behaviour took the left summand, the other the right: no
          // identification of states can ever reconcile them.
          return true;
        }
        const FunctorExpr& g = a_left ? *f.left() : *f.right();
        return apart(g, a.body(), b.body());
      }
      case FunctorExpr::Kind::Exponent: {
        for (size_t i = 0; i < a.arity(); ++i) {
          if (apart(*f.left(), a.entries()[i], b.entries()[i])) return true;
        }
        return false;
      }
      case FunctorExpr::Kind::Powerset:
        return half_apart(*f.left(), a, b) || half_apart(*f.left(), b, a);
      case FunctorExpr::Kind::SubDist:
        return dist_apart(*f.left(), a, b);
    }
    throw Error(ErrorKind::Internal, "unhandled functor kind");
  }

 private:
  // Some element of s has no counterpart in t.
  bool half_apart(const FunctorExpr& g, const BValue& s, const BValue& t) {
    for (const BValue& u : s.entries()) {
      bool matched = false;
      for (const BValue& v : t.entries()) {
        if (!apart(g, u, v)) {
          matched = true;
          break;
        }
      }
      if (!matched) return true;
    }
    return false;
  }

  bool dist_apart(const FunctorExpr& g, const BValue& a, const BValue& b) {
    // Pool the keys of both distributions, glue together the ones that the
    // child test cannot tell apart, and compare class masses.
    std::vector<const BValue*> keys;
    for (const BValue& k : a.entries()) keys.push_back(&k);
    for (const BValue& k : b.entries()) {
      bool seen = false;
      for (const BValue* k2 : keys) {
        if (*k2 == k) {
          seen = true;
          break;
        }
      }
      if (!seen) keys.push_back(&k);
    }
    size_t n = keys.size();
    std::vector<size_t> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](size_t i) {
      while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
      }
      return i;
    };
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (!apart(g, *keys[i], *keys[j])) {
          size_t ri = find(i), rj = find(j);
          if (ri != rj) parent[ri] = rj;
        }
      }
    }
    auto mass_of = [&](const BValue& d, size_t cls) {
      Rational total = 0;
      for (size_t e = 0; e < d.arity(); ++e) {
        for (size_t i = 0; i < n; ++i) {
          if (find(i) == cls && *keys[i] == d.entries()[e]) {
            total += d.weight(e);
            break;
          }
        }
      }
      return total;
    };
    for (size_t i = 0; i < n; ++i) {
      if (find(i) != i) continue;
      if (mass_of(a, i) != mass_of(b, i)) return true;
    }
    return false;
  }

  UniversePtr universe_;
  Relation interior_;
};

}  // namespace

bool reca_inductive(const FunctorExpr& f, const Relation& r, const BValue& v1, const BValue& v2) {
  inductive_test t(r);
  return t.apart(f, v1, v2);
}

namespace {

// Block size used to pick the most pointed distribution witness: state
// classes count their block, anything composite counts as a singleton.
int class_weight(const Partition& p, const BValue& key) {
  if (key.kind() == BValue::Kind::State) return p.block_size_of(key.index());
  return 1;
}

std::optional<Witness> diff_rec(const FunctorExpr& f, const Partition& p, const BValue& a,
                                const BValue& b, std::vector<Witness::Step>& path) {
  if (a == b) return std::nullopt;
  switch (f.kind()) {
    case FunctorExpr::Kind::Id: {
      Witness w;
      w.kind = Witness::Kind::StateClasses;
      w.path = path;
      w.left = a.name();
      w.right = b.name();
      return w;
    }
    case FunctorExpr::Kind::Constant: {
      Witness w;
      w.kind = Witness::Kind::Atoms;
      w.path = path;
      w.left = a.name();
      w.right = b.name();
      return w;
    }
    case FunctorExpr::Kind::Product: {
      if (a.first() != b.first()) {
        path.push_back({Witness::Step::Kind::Fst, ""});
        auto w = diff_rec(*f.left(), p, a.first(), b.first(), path);
        path.pop_back();
        return w;
      }
      path.push_back({Witness::Step::Kind::Snd, ""});
      auto w = diff_rec(*f.right(), p, a.second(), b.second(), path);
      path.pop_back();
      return w;
    }
    case FunctorExpr::Kind::Coproduct: {
      bool a_left = a.kind() == BValue::Kind::Inl;
      bool b_left = b.kind() == BValue::Kind::Inl;
      if (a_left != b_left) {
        Witness w;
        w.kind = Witness::Kind::Side;
        w.path = path;
        w.left = a_left ? "inl" : "inr";
        w.right = b_left ? "inl" : "inr";
        return w;
      }
      path.push_back({a_left ? Witness::Step::Kind::Inl : Witness::Step::Kind::Inr, ""});
      auto w = diff_rec(a_left ? *f.left() : *f.right(), p, a.body(), b.body(), path);
      path.pop_back();
      return w;
    }
    case FunctorExpr::Kind::Exponent: {
      for (size_t i = 0; i < a.arity(); ++i) {
        if (a.entries()[i] != b.entries()[i]) {
          path.push_back({Witness::Step::Kind::At, f.set()->elems[i]});
          auto w = diff_rec(*f.left(), p, a.entries()[i], b.entries()[i], path);
          path.pop_back();
          return w;
        }
      }
      return std::nullopt;  // unreachable: a != b
    }
    case FunctorExpr::Kind::Powerset: {
      // First element (in canonical order) present on exactly one side.
      size_t i = 0, j = 0;
      const auto& xs = a.entries();
      const auto& ys = b.entries();
      while (i < xs.size() || j < ys.size()) {
        int c;
        if (i == xs.size()) {
          c = 1;
        } else if (j == ys.size()) {
          c = -1;
        } else {
          c = BValue::compare(xs[i], ys[j]);
        }
        if (c < 0) {
          Witness w;
          w.kind = Witness::Kind::SetMember;
          w.path = path;
          w.class_repr = xs[i].to_string();
          w.element_on_left = true;
          return w;
        }
        if (c > 0) {
          Witness w;
          w.kind = Witness::Kind::SetMember;
          w.path = path;
          w.class_repr = ys[j].to_string();
          w.element_on_left = false;
          return w;
        }
        ++i;
        ++j;
      }
      return std::nullopt;  // unreachable: a != b
    }
    case FunctorExpr::Kind::SubDist: {
      // Merge the key lists; among keys whose masses differ, pick the one
      // with the fewest states behind it (then least in canonical order).
      const BValue* best = nullptr;
      Rational best_left, best_right;
      int best_weight = 0;
      auto consider = [&](const BValue& key, const Rational& lm, const Rational& rm) {
        if (lm == rm) return;
        int weight = class_weight(p, key);
        if (best == nullptr || weight < best_weight ||
            (weight == best_weight && BValue::compare(key, *best) < 0)) {
          best = &key;
          best_left = lm;
          best_right = rm;
          best_weight = weight;
        }
      };
      size_t i = 0, j = 0;
      const auto& xs = a.entries();
      const auto& ys = b.entries();
      while (i < xs.size() || j < ys.size()) {
        int c;
        if (i == xs.size()) {
          c = 1;
        } else if (j == ys.size()) {
          c = -1;
        } else {
          c = BValue::compare(xs[i], ys[j]);
        }
        if (c < 0) {
          consider(xs[i], a.weight(i), Rational(0));
          ++i;
        } else if (c > 0) {
          consider(ys[j], Rational(0), b.weight(j));
          ++j;
        } else {
          consider(xs[i], a.weight(i), b.weight(j));
          ++i;
          ++j;
        }
      }
      if (best == nullptr) return std::nullopt;  // unreachable: a != b
      Witness w;
      w.kind = Witness::Kind::DistClass;
      w.path = path;
      w.class_repr = best->to_string();
      w.left_mass = best_left;
      w.right_mass = best_right;
      return w;
    }
  }
  throw Error(ErrorKind::Internal, "unhandled functor kind");
}

}  // namespace

std::optional<Witness> diff_normal_forms(const FunctorExpr& f, const Partition& p,
                                         const NormalForm& a, const NormalForm& b) {
  std::vector<Witness::Step> path;
  return diff_rec(f, p, a.value, b.value, path);
}

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

bool witness_holds(const FunctorExpr& f, const NormalForm& a, const NormalForm& b,
                   const Witness& w, std::string* why) {
  const BValue* va = &a.value;
  const BValue* vb = &b.value;
  const FunctorExpr* g = &f;
  for (const Witness::Step& s : w.path) {
    switch (s.kind) {
      case Witness::Step::Kind::Fst:
        if (g->kind() != FunctorExpr::Kind::Product) return fail(why, "path takes .1 outside a product");
        va = &va->first();
        vb = &vb->first();
        g = g->left().get();
        break;
      case Witness::Step::Kind::Snd:
        if (g->kind() != FunctorExpr::Kind::Product) return fail(why, "path takes .2 outside a product");
        va = &va->second();
        vb = &vb->second();
        g = g->right().get();
        break;
      case Witness::Step::Kind::Inl:
        if (g->kind() != FunctorExpr::Kind::Coproduct) return fail(why, "path takes :inl outside a sum");
        if (va->kind() != BValue::Kind::Inl || vb->kind() != BValue::Kind::Inl) {
          return fail(why, "path expects inl on both sides");
        }
        va = &va->body();
        vb = &vb->body();
        g = g->left().get();
        break;
      case Witness::Step::Kind::Inr:
        if (g->kind() != FunctorExpr::Kind::Coproduct) return fail(why, "path takes :inr outside a sum");
        if (va->kind() != BValue::Kind::Inr || vb->kind() != BValue::Kind::Inr) {
          return fail(why, "path expects inr on both sides");
        }
        va = &va->body();
        vb = &vb->body();
        g = g->right().get();
        break;
      case Witness::Step::Kind::At: {
        if (g->kind() != FunctorExpr::Kind::Exponent) {
          return fail(why, "path applies a label outside a table");
        }
        auto idx = g->set()->find(s.label);
        if (!idx) return fail(why, "unknown label '" + s.label + "' in path");
        va = &va->entries()[*idx];
        vb = &vb->entries()[*idx];
        g = g->left().get();
        break;
      }
    }
  }

  switch (w.kind) {
    case Witness::Kind::Atoms: {
      if (g->kind() != FunctorExpr::Kind::Constant) return fail(why, "witness names atoms outside a constant");
      if (va->name() != w.left || vb->name() != w.right) {
        return fail(why, "recorded atoms " + w.left + " / " + w.right + " do not match " +
                             va->name() + " / " + vb->name());
      }
      if (w.left == w.right) return fail(why, "recorded atoms are equal");
      return true;
    }
    case Witness::Kind::StateClasses: {
      if (g->kind() != FunctorExpr::Kind::Id) return fail(why, "witness names state classes outside Id");
      if (va->name() != w.left || vb->name() != w.right) {
        return fail(why, "recorded classes [" + w.left + "] / [" + w.right + "] do not match [" +
                             va->name() + "] / [" + vb->name() + "]");
      }
      if (w.left == w.right) return fail(why, "recorded classes are equal");
      return true;
    }
    case Witness::Kind::Side: {
      if (g->kind() != FunctorExpr::Kind::Coproduct) return fail(why, "side witness outside a sum");
      auto side_of = [](const BValue& v) {
        return v.kind() == BValue::Kind::Inl ? std::string("inl") : std::string("inr");
      };
      if (side_of(*va) != w.left || side_of(*vb) != w.right) {
        return fail(why, "recorded sides do not match the behaviours");
      }
      if (w.left == w.right) return fail(why, "recorded sides are equal");
      return true;
    }
    case Witness::Kind::DistClass: {
      if (g->kind() != FunctorExpr::Kind::SubDist) return fail(why, "mass witness outside a distribution");
      auto mass_by_repr = [](const BValue& d, const std::string& repr) {
        for (size_t i = 0; i < d.arity(); ++i) {
          if (d.entries()[i].to_string() == repr) return d.weight(i);
        }
        return Rational(0);
      };
      Rational lm = mass_by_repr(*va, w.class_repr);
      Rational rm = mass_by_repr(*vb, w.class_repr);
      if (lm != w.left_mass || rm != w.right_mass) {
        return fail(why, "class [" + w.class_repr + "] has masses " + rational_to_string(lm) +
                             " / " + rational_to_string(rm) + ", the witness records " +
                             rational_to_string(w.left_mass) + " / " +
                             rational_to_string(w.right_mass));
      }
      if (lm == rm) return fail(why, "recorded masses are equal");
      return true;
    }
    case Witness::Kind::SetMember: {
      if (g->kind() != FunctorExpr::Kind::Powerset) return fail(why, "member witness outside a set");
      auto has = [&](const BValue& s) {
        for (const BValue& e : s.entries()) {
          if (e.to_string() == w.class_repr) return true;
        }
        return false;
      };
      const BValue& holder = w.element_on_left ? *va : *vb;
      const BValue& other = w.element_on_left ? *vb : *va;
      if (!has(holder)) {
        return fail(why, "element [" + w.class_repr + "] is missing from the recorded side");
      }
      if (has(other)) {
        return fail(why, "element [" + w.class_repr + "] appears on both sides");
      }
      return true;
    }
  }
  return fail(why, "unknown witness kind");
}

}  // namespace apart

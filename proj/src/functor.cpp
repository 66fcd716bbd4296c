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

#include "functor.hpp"

#include <algorithm>
#include <set>

#include "error.hpp"

namespace apart {

FunctorPtr FunctorExpr::id() {
  return FunctorPtr(new FunctorExpr(Kind::Id, nullptr, nullptr, nullptr));
}
FunctorPtr FunctorExpr::constant(NamedSetPtr set) {
  return FunctorPtr(new FunctorExpr(Kind::Constant, std::move(set), nullptr, nullptr));
}
FunctorPtr FunctorExpr::product(FunctorPtr l, FunctorPtr r) {
  return FunctorPtr(new FunctorExpr(Kind::Product, nullptr, std::move(l), std::move(r)));
}
FunctorPtr FunctorExpr::coproduct(FunctorPtr l, FunctorPtr r) {
  return FunctorPtr(new FunctorExpr(Kind::Coproduct, nullptr, std::move(l), std::move(r)));
}
FunctorPtr FunctorExpr::exponent(FunctorPtr body, NamedSetPtr labels) {
  return FunctorPtr(new FunctorExpr(Kind::Exponent, std::move(labels), std::move(body), nullptr));
}
FunctorPtr FunctorExpr::powerset(FunctorPtr body) {
  return FunctorPtr(new FunctorExpr(Kind::Powerset, nullptr, std::move(body), nullptr));
}
FunctorPtr FunctorExpr::subdist(FunctorPtr body) {
  return FunctorPtr(new FunctorExpr(Kind::SubDist, nullptr, std::move(body), nullptr));
}

int FunctorExpr::depth() const {
  switch (kind_) {
    case Kind::Id:
    case Kind::Constant:
      return 0;
    case Kind::Product:
    case Kind::Coproduct:
      return 1 + std::max(left_->depth(), right_->depth());
    case Kind::Exponent:
    case Kind::Powerset:
    case Kind::SubDist:
      return 1 + left_->depth();
  }
  return 0;
}

bool FunctorExpr::mentions_id() const {
  switch (kind_) {
    case Kind::Id:
      return true;
    case Kind::Constant:
      return false;
    case Kind::Product:
    case Kind::Coproduct:
      return left_->mentions_id() || right_->mentions_id();
    case Kind::Exponent:
    case Kind::Powerset:
    case Kind::SubDist:
      return left_->mentions_id();
  }
  return false;
}

bool FunctorExpr::structurally_equal(const FunctorExpr& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::Id:
      return true;
    case Kind::Constant:
      return set_->name == other.set_->name && set_->elems == other.set_->elems;
    case Kind::Product:
    case Kind::Coproduct:
      return left_->structurally_equal(*other.left_) && right_->structurally_equal(*other.right_);
    case Kind::Exponent:
      return set_->name == other.set_->name && set_->elems == other.set_->elems &&
             left_->structurally_equal(*other.left_);
    case Kind::Powerset:
    case Kind::SubDist:
      return left_->structurally_equal(*other.left_);
  }
  return false;
}

namespace {

// Precedence levels for printing: '+' (0) < '*' (1) < prefix P/Ds (2) <
// postfix '^' (3) < atoms (4).
int precedence(FunctorExpr::Kind k) {
  switch (k) {
    case FunctorExpr::Kind::Coproduct: return 0;
    case FunctorExpr::Kind::Product: return 1;
    case FunctorExpr::Kind::Powerset:
    case FunctorExpr::Kind::SubDist: return 2;
    case FunctorExpr::Kind::Exponent: return 3;
    default: return 4;
  }
}

void print_functor(const FunctorExpr& f, int parent_prec, std::string& out) {
  int prec = precedence(f.kind());
  bool parens = prec < parent_prec;
  if (parens) out += "(";
  switch (f.kind()) {
    case FunctorExpr::Kind::Id:
      out += "Id";
      break;
    case FunctorExpr::Kind::Constant:
      out += f.set()->name;
      break;
    case FunctorExpr::Kind::Product:
      print_functor(*f.left(), 1, out);
      out += " * ";
      print_functor(*f.right(), 2, out);
      break;
    case FunctorExpr::Kind::Coproduct:
      print_functor(*f.left(), 0, out);
      out += " + ";
      print_functor(*f.right(), 1, out);
      break;
    case FunctorExpr::Kind::Exponent:
      print_functor(*f.left(), 4, out);
      out += "^" + f.set()->name;
      break;
    case FunctorExpr::Kind::Powerset:
      out += "P ";
      print_functor(*f.left(), 2, out);
      break;
    case FunctorExpr::Kind::SubDist:
      out += "Ds ";
      print_functor(*f.left(), 2, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string FunctorExpr::to_string() const {
  std::string out;
  print_functor(*this, 0, out);
  return out;
}

BValue BValue::state(int index, std::string name) {
  BValue v;
  v.kind_ = Kind::State;
  v.index_ = index;
  v.name_ = std::move(name);
  return v;
}

BValue BValue::atom(int index, std::string name) {
  BValue v;
  v.kind_ = Kind::Atom;
  v.index_ = index;
  v.name_ = std::move(name);
  return v;
}

BValue BValue::pair(BValue first, BValue second) {
  BValue v;
  v.kind_ = Kind::Pair;
  v.children_.push_back(std::move(first));
  v.children_.push_back(std::move(second));
  return v;
}

BValue BValue::inl(BValue b) {
  BValue v;
  v.kind_ = Kind::Inl;
  v.children_.push_back(std::move(b));
  return v;
}

BValue BValue::inr(BValue b) {
  BValue v;
  v.kind_ = Kind::Inr;
  v.children_.push_back(std::move(b));
  return v;
}

BValue BValue::table(std::vector<BValue> entries) {
  BValue v;
  v.kind_ = Kind::Table;
  v.children_ = std::move(entries);
  return v;
}

BValue BValue::set(std::vector<BValue> elems) {
  std::sort(elems.begin(), elems.end(),
            [](const BValue& a, const BValue& b) { return compare(a, b) < 0; });
  elems.erase(std::unique(elems.begin(), elems.end(),
                          [](const BValue& a, const BValue& b) { return compare(a, b) == 0; }),
              elems.end());
  BValue v;
  v.kind_ = Kind::Set;
  v.children_ = std::move(elems);
  return v;
}

BValue BValue::dist(std::vector<std::pair<BValue, Rational>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  BValue v;
  v.kind_ = Kind::Dist;
  for (auto& [key, w] : entries) {
    if (!v.children_.empty() && compare(v.children_.back(), key) == 0) {
      v.weights_.back() += w;  // keys that collapsed together pool their mass
    } else {
      v.children_.push_back(std::move(key));
      v.weights_.push_back(std::move(w));
    }
  }
  return v;
}

Rational BValue::dist_total() const {
  Rational total = 0;
  for (const auto& w : weights_) total += w;
  return total;
}

int BValue::compare(const BValue& a, const BValue& b) {
  if (a.kind_ != b.kind_)
    return static_cast<int>(a.kind_) < static_cast<int>(b.kind_) ? -1 : 1;
  switch (a.kind_) {
    case Kind::State:
    case Kind::Atom:
      if (a.index_ != b.index_) return a.index_ < b.index_ ? -1 : 1;
      // Same index in different universes can only meet in heterogeneous
      // containers, which validation rules out; name is a tiebreak for safety.
      return a.name_.compare(b.name_);
    case Kind::Pair:
    case Kind::Inl:
    case Kind::Inr:
    case Kind::Table:
    case Kind::Set: {
      size_t n = std::min(a.children_.size(), b.children_.size());
      for (size_t i = 0; i < n; ++i) {
        int c = compare(a.children_[i], b.children_[i]);
        if (c != 0) return c;
      }
      if (a.children_.size() != b.children_.size())
        return a.children_.size() < b.children_.size() ? -1 : 1;
      return 0;
    }
    case Kind::Dist: {
      size_t n = std::min(a.children_.size(), b.children_.size());
      for (size_t i = 0; i < n; ++i) {
        int c = compare(a.children_[i], b.children_[i]);
        if (c != 0) return c;
        if (a.weights_[i] != b.weights_[i]) return a.weights_[i] < b.weights_[i] ? -1 : 1;
      }
      if (a.children_.size() != b.children_.size())
        return a.children_.size() < b.children_.size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

std::string BValue::to_string() const {
  switch (kind_) {
    case Kind::State:
    case Kind::Atom:
      return name_;
    case Kind::Pair:
      return "(" + children_[0].to_string() + ", " + children_[1].to_string() + ")";
    case Kind::Inl:
      return "inl " + children_[0].to_string();
    case Kind::Inr:
      return "inr " + children_[0].to_string();
    case Kind::Table:
      // Label names are not stored in the value; the printer that knows the
      // functor (parser.cpp) renders tables with labels.  This fallback is
      // only used for debug output of bare tables.
      {
        std::string out = "{ ";
        for (size_t i = 0; i < children_.size(); ++i) {
          if (i) out += ", ";
          out += children_[i].to_string();
        }
        return out + " }";
      }
    case Kind::Set: {
      std::string out = "set {";
      for (size_t i = 0; i < children_.size(); ++i)
        out += (i ? ", " : " ") + children_[i].to_string();
      return out + (children_.empty() ? "}" : " }");
    }
    case Kind::Dist: {
      std::string out = "dist {";
      for (size_t i = 0; i < children_.size(); ++i) {
        out += (i ? ", " : " ") + children_[i].to_string() + ": " +
               rational_to_string(weights_[i]);
      }
      return out + (children_.empty() ? "}" : " }");
    }
  }
  return "";
}

namespace {

const char* kind_name(BValue::Kind k) {
  switch (k) {
    case BValue::Kind::State: return "state reference";
    case BValue::Kind::Atom: return "atom";
    case BValue::Kind::Pair: return "pair";
    case BValue::Kind::Inl: return "inl";
    case BValue::Kind::Inr: return "inr";
    case BValue::Kind::Table: return "label table";
    case BValue::Kind::Set: return "set";
    case BValue::Kind::Dist: return "dist";
  }
  return "?";
}

[[noreturn]] void shape_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Shape,
              "shape error at " + (path.empty() ? std::string("value") : path) + ": " + what);
}

void validate_rec(const FunctorExpr& f, const Universe& states, const BValue& v,
                  const std::string& path) {
  switch (f.kind()) {
    case FunctorExpr::Kind::Id:
      if (v.kind() != BValue::Kind::State)
        shape_error(path, std::string("expected a state reference, got ") + kind_name(v.kind()));
      if (v.index() < 0 || v.index() >= states.size() || states.name(v.index()) != v.name())
        shape_error(path, "state reference '" + v.name() + "' does not match the universe");
      return;
    case FunctorExpr::Kind::Constant: {
      if (v.kind() != BValue::Kind::Atom)
        shape_error(path, std::string("expected an atom of ") + f.set()->name + ", got " +
                              kind_name(v.kind()));
      auto i = f.set()->find(v.name());
      if (!i || *i != v.index())
        shape_error(path, "atom '" + v.name() + "' is not in set " + f.set()->name);
      return;
    }
    case FunctorExpr::Kind::Product:
      if (v.kind() != BValue::Kind::Pair)
        shape_error(path, std::string("expected a pair, got ") + kind_name(v.kind()));
      validate_rec(*f.left(), states, v.first(), path + ".1");
      validate_rec(*f.right(), states, v.second(), path + ".2");
      return;
    case FunctorExpr::Kind::Coproduct:
      if (v.kind() == BValue::Kind::Inl)
        validate_rec(*f.left(), states, v.body(), path + ":inl");
      else if (v.kind() == BValue::Kind::Inr)
        validate_rec(*f.right(), states, v.body(), path + ":inr");
      else
        shape_error(path, std::string("expected inl or inr, got ") + kind_name(v.kind()));
      return;
    case FunctorExpr::Kind::Exponent: {
      if (v.kind() != BValue::Kind::Table)
        shape_error(path, std::string("expected a label table, got ") + kind_name(v.kind()));
      if (v.arity() != f.set()->elems.size())
        shape_error(path, "table must have exactly one entry per label of " + f.set()->name);
      for (size_t i = 0; i < v.arity(); ++i)
        validate_rec(*f.left(), states, v.entries()[i], path + "(" + f.set()->elems[i] + ")");
      return;
    }
    case FunctorExpr::Kind::Powerset: {
      if (v.kind() != BValue::Kind::Set)
        shape_error(path, std::string("expected a set, got ") + kind_name(v.kind()));
      for (size_t i = 0; i < v.arity(); ++i) {
        validate_rec(*f.left(), states, v.entries()[i], path + "[" + std::to_string(i) + "]");
        if (i > 0 && BValue::compare(v.entries()[i - 1], v.entries()[i]) >= 0)
          shape_error(path, "set elements out of canonical order");
      }
      return;
    }
    case FunctorExpr::Kind::SubDist: {
      if (v.kind() != BValue::Kind::Dist)
        shape_error(path, std::string("expected a dist, got ") + kind_name(v.kind()));
      Rational total = 0;
      for (size_t i = 0; i < v.arity(); ++i) {
        validate_rec(*f.left(), states, v.entries()[i], path + "[" + std::to_string(i) + "]");
        if (i > 0 && BValue::compare(v.entries()[i - 1], v.entries()[i]) >= 0)
          shape_error(path, "dist keys out of canonical order");
        if (v.weight(i) <= 0)
          shape_error(path + "[" + std::to_string(i) + "]", "weights must lie in (0, 1]");
        total += v.weight(i);
      }
      if (total > 1)
        shape_error(path, "total mass " + rational_to_string(total) + " exceeds 1");
      return;
    }
  }
}

void support_rec(const BValue& v, std::vector<int>& out) {
  switch (v.kind()) {
    case BValue::Kind::State:
      out.push_back(v.index());
      return;
    case BValue::Kind::Atom:
      return;
    default:
      for (const auto& c : v.entries()) support_rec(c, out);
      return;
  }
}

BValue normalize_rec(const Partition& p, const BValue& v) {
  switch (v.kind()) {
    case BValue::Kind::State: {
      auto i = p.universe()->find(v.name());
      if (!i)
        throw Error(ErrorKind::Shape,
                    "state '" + v.name() + "' lies outside the partitioned universe");
      int rep = p.representative(*i);
      return BValue::state(rep, p.universe()->name(rep));
    }
    case BValue::Kind::Atom:
      return v;
    case BValue::Kind::Pair:
      return BValue::pair(normalize_rec(p, v.first()), normalize_rec(p, v.second()));
    case BValue::Kind::Inl:
      return BValue::inl(normalize_rec(p, v.body()));
    case BValue::Kind::Inr:
      return BValue::inr(normalize_rec(p, v.body()));
    case BValue::Kind::Table: {
      std::vector<BValue> entries;
      entries.reserve(v.arity());
      for (const auto& c : v.entries()) entries.push_back(normalize_rec(p, c));
      return BValue::table(std::move(entries));
    }
    case BValue::Kind::Set: {
      std::vector<BValue> elems;
      elems.reserve(v.arity());
      for (const auto& c : v.entries()) elems.push_back(normalize_rec(p, c));
      return BValue::set(std::move(elems));  // re-sorts and deduplicates
    }
    case BValue::Kind::Dist: {
      std::vector<std::pair<BValue, Rational>> entries;
      entries.reserve(v.arity());
      for (size_t i = 0; i < v.arity(); ++i)
        entries.emplace_back(normalize_rec(p, v.entries()[i]), v.weight(i));
      return BValue::dist(std::move(entries));  // re-sorts and merges weights
    }
  }
  return v;
}

}  // namespace

void validate_value(const FunctorExpr& f, const Universe& states, const BValue& v) {
  validate_rec(f, states, v, "");
}

std::vector<int> support_of(const BValue& v) {
  std::vector<int> out;
  support_rec(v, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NormalForm normalize(const Partition& p, const BValue& v) {
  return NormalForm{normalize_rec(p, v)};
}

}  // namespace apart

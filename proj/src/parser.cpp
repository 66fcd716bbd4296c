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

#include "parser.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace apart {

namespace {

struct Token {
  enum class Kind {
    Ident,
    Number,   // digits only
    Decimal,  // digits '.' digits
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Equals,
    Star,
    Plus,
    Caret,
    Slash,
    Arrow,
    End,
  };
  Kind kind;
  std::string text;
  int line = 0;
  int col = 0;
};

[[noreturn]] void err_at(const Token& t, const std::string& msg) {
  throw Error(ErrorKind::Parse, "parse error at " + std::to_string(t.line) + ":" +
                                    std::to_string(t.col) + ": " + msg);
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto bump = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      t.kind = Token::Kind::Ident;
      t.text = text.substr(i, j - i);
      bump(j - i);
      out.push_back(t);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      bool decimal = false;
      if (j + 1 < text.size() && text[j] == '.' &&
          std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        decimal = true;
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      t.kind = decimal ? Token::Kind::Decimal : Token::Kind::Number;
      t.text = text.substr(i, j - i);
      bump(j - i);
      out.push_back(t);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      t.kind = Token::Kind::Arrow;
      t.text = "->";
      bump(2);
      out.push_back(t);
      continue;
    }
    switch (c) {
      case '(': t.kind = Token::Kind::LParen; break;
      case ')': t.kind = Token::Kind::RParen; break;
      case '{': t.kind = Token::Kind::LBrace; break;
      case '}': t.kind = Token::Kind::RBrace; break;
      case ',': t.kind = Token::Kind::Comma; break;
      case ':': t.kind = Token::Kind::Colon; break;
      case '=': t.kind = Token::Kind::Equals; break;
      case '*': t.kind = Token::Kind::Star; break;
      case '+': t.kind = Token::Kind::Plus; break;
      case '^': t.kind = Token::Kind::Caret; break;
      case '/': t.kind = Token::Kind::Slash; break;
      default:
        err_at(t, std::string("unexpected character '") + c + "'");
    }
    t.text = std::string(1, c);
    bump(1);
    out.push_back(t);
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

bool is_reserved(const std::string& s) {
  static const std::set<std::string> kw = {"functor", "set",  "state", "boundary", "inl",
                                           "inr",     "dist", "Id",    "P",        "Ds"};
  return kw.count(s) > 0;
}

class system_parser {
 public:
  explicit system_parser(const std::string& text) : toks_(lex(text)) {}

  Coalgebra run() {
    expect_keyword("functor");
    // Set declarations follow the functor line but the functor expression may
    // mention them, so hold its tokens and parse them after the sets.
    size_t fstart = pos_;
    skip_decl_body();
    size_t fend = pos_;

    while (at_keyword("set")) parse_set_decl();

    std::vector<std::pair<std::string, std::pair<size_t, size_t>>> state_ranges;
    std::set<std::string> seen;
    while (at_keyword("state")) {
      next();
      Token name = expect(Token::Kind::Ident, "state name");
      if (is_reserved(name.text)) err_at(name, "'" + name.text + "' is a reserved word");
      if (!seen.insert(name.text).second) err_at(name, "state '" + name.text + "' declared twice");
      expect(Token::Kind::Equals, "'='");
      size_t vstart = pos_;
      skip_decl_body();
      state_ranges.emplace_back(name.text, std::make_pair(vstart, pos_));
    }
    if (state_ranges.empty()) err_at(peek(), "expected at least one state declaration");

    std::vector<std::string> boundary_names;
    if (at_keyword("boundary")) {
      next();
      while (peek().kind == Token::Kind::Ident || peek().kind == Token::Kind::Number) {
        Token name = next();
        if (is_reserved(name.text)) err_at(name, "'" + name.text + "' is a reserved word");
        if (!seen.insert(name.text).second) {
          err_at(name, "state '" + name.text + "' declared twice");
        }
        boundary_names.push_back(name.text);
      }
      if (boundary_names.empty()) err_at(peek(), "expected state names after 'boundary'");
    }
    if (peek().kind != Token::Kind::End) err_at(peek(), "unexpected trailing input");

    Coalgebra c;
    pos_ = fstart;
    c.functor = parse_functor_expr();
    if (pos_ != fend) err_at(peek(), "unexpected token after functor expression");

    std::vector<std::string> names;
    for (const auto& [n, r] : state_ranges) names.push_back(n);
    for (const auto& n : boundary_names) names.push_back(n);
    c.states = make_universe(std::move(names));
    c.sets = sets_;
    c.gamma.resize(static_cast<size_t>(c.states->size()));

    for (size_t s = 0; s < state_ranges.size(); ++s) {
      pos_ = state_ranges[s].second.first;
      BValue v = parse_value(*c.functor, *c.states);
      if (pos_ != state_ranges[s].second.second) {
        err_at(peek(), "unexpected token after behaviour of state '" + state_ranges[s].first + "'");
      }
      try {
        validate_value(*c.functor, *c.states, v);
      } catch (const Error& e) {
        throw Error(e.kind(), "state '" + state_ranges[s].first + "': " + e.what());
      }
      c.gamma[s] = std::move(v);
    }
    for (size_t b = 0; b < boundary_names.size(); ++b) {
      c.boundary.push_back(static_cast<int>(state_ranges.size() + b));
    }
    return c;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  bool at_keyword(const std::string& kw) const {
    return peek().kind == Token::Kind::Ident && peek().text == kw;
  }
  void expect_keyword(const std::string& kw) {
    if (!at_keyword(kw)) err_at(peek(), "expected '" + kw + "'");
    next();
  }
  Token expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k) err_at(peek(), "expected " + what);
    return next();
  }

  // Advance past one declaration body: everything up to the next top-level
  // keyword at bracket depth zero.  'set' doubles as the powerset value
  // introducer, so it only counts as a declaration when a name and '='
  // follow (a set value is always 'set {').
  void skip_decl_body() {
    size_t start = pos_;
    int depth = 0;
    while (peek().kind != Token::Kind::End) {
      bool set_decl = at_keyword("set") && pos_ + 2 < toks_.size() &&
                      toks_[pos_ + 1].kind == Token::Kind::Ident &&
                      toks_[pos_ + 2].kind == Token::Kind::Equals;
      if (depth == 0 && (set_decl || at_keyword("state") || at_keyword("boundary"))) {
        break;
      }
      Token::Kind k = peek().kind;
      if (k == Token::Kind::LParen || k == Token::Kind::LBrace) ++depth;
      if (k == Token::Kind::RParen || k == Token::Kind::RBrace) --depth;
      next();
    }
    if (pos_ == start) err_at(peek(), "expected a declaration body");
  }

  void parse_set_decl() {
    next();  // 'set'
    Token name = expect(Token::Kind::Ident, "set name");
    if (is_reserved(name.text)) err_at(name, "'" + name.text + "' is a reserved word");
    if (set_map_.count(name.text)) err_at(name, "set '" + name.text + "' declared twice");
    expect(Token::Kind::Equals, "'='");
    expect(Token::Kind::LBrace, "'{'");
    auto s = std::make_shared<NamedSet>();
    s->name = name.text;
    std::set<std::string> elems;
    while (peek().kind != Token::Kind::RBrace) {
      Token e = peek();
      if (e.kind != Token::Kind::Ident && e.kind != Token::Kind::Number) {
        err_at(e, "expected a set element");
      }
      next();
      if (e.kind == Token::Kind::Ident && is_reserved(e.text)) {
        err_at(e, "'" + e.text + "' is a reserved word");
      }
      if (!elems.insert(e.text).second) {
        err_at(e, "duplicate element '" + e.text + "' in set '" + s->name + "'");
      }
      s->elems.push_back(e.text);
      if (peek().kind == Token::Kind::Comma) next();
    }
    next();  // '}'
    if (s->elems.empty()) err_at(name, "set '" + s->name + "' must be non-empty");
    sets_.push_back(s);
    set_map_[s->name] = s;
  }

  NamedSetPtr lookup_set(const Token& t) {
    auto it = set_map_.find(t.text);
    if (it == set_map_.end()) err_at(t, "unknown set '" + t.text + "'");
    return it->second;
  }

  // expr := term ('+' term)*
  FunctorPtr parse_functor_expr() {
    FunctorPtr f = parse_functor_term();
    while (peek().kind == Token::Kind::Plus) {
      next();
      f = FunctorExpr::coproduct(f, parse_functor_term());
    }
    return f;
  }
  // term := factor ('*' factor)*
  FunctorPtr parse_functor_term() {
    FunctorPtr f = parse_functor_factor();
    while (peek().kind == Token::Kind::Star) {
      next();
      f = FunctorExpr::product(f, parse_functor_factor());
    }
    return f;
  }
  // factor := 'P' factor | 'Ds' factor | postfix
  FunctorPtr parse_functor_factor() {
    if (at_keyword("P")) {
      next();
      return FunctorExpr::powerset(parse_functor_factor());
    }
    if (at_keyword("Ds")) {
      next();
      return FunctorExpr::subdist(parse_functor_factor());
    }
    return parse_functor_postfix();
  }
  // postfix := primary ('^' setname)*
  FunctorPtr parse_functor_postfix() {
    FunctorPtr f = parse_functor_primary();
    while (peek().kind == Token::Kind::Caret) {
      next();
      Token name = expect(Token::Kind::Ident, "a set name after '^'");
      f = FunctorExpr::exponent(f, lookup_set(name));
    }
    return f;
  }
  FunctorPtr parse_functor_primary() {
    if (at_keyword("Id")) {
      next();
      return FunctorExpr::id();
    }
    if (peek().kind == Token::Kind::LParen) {
      next();
      FunctorPtr f = parse_functor_expr();
      expect(Token::Kind::RParen, "')'");
      return f;
    }
    if (peek().kind == Token::Kind::Ident) {
      Token name = next();
      return FunctorExpr::constant(lookup_set(name));
    }
    err_at(peek(), "expected a functor expression");
  }

  Rational parse_weight() {
    Token t = peek();
    if (t.kind == Token::Kind::Decimal) {
      next();
      auto r = parse_rational_string(t.text);
      if (!r) err_at(t, "malformed number");
      return *r;
    }
    if (t.kind != Token::Kind::Number) err_at(t, "expected a weight");
    next();
    Rational num(BigInt(t.text));
    if (peek().kind == Token::Kind::Slash) {
      next();
      Token d = expect(Token::Kind::Number, "a denominator");
      BigInt den(d.text);
      if (den == 0) err_at(d, "zero denominator");
      return num / Rational(den);
    }
    return num;
  }

  BValue parse_value(const FunctorExpr& f, const Universe& u) {
    switch (f.kind()) {
      case FunctorExpr::Kind::Id: {
        Token t = expect(Token::Kind::Ident, "a state name");
        auto i = u.find(t.text);
        if (!i) err_at(t, "unknown state '" + t.text + "'");
        return BValue::state(*i, t.text);
      }
      case FunctorExpr::Kind::Constant: {
        Token t = peek();
        if (t.kind != Token::Kind::Ident && t.kind != Token::Kind::Number) {
          err_at(t, "expected an element of set " + f.set()->name);
        }
        next();
        auto i = f.set()->find(t.text);
        if (!i) err_at(t, "'" + t.text + "' is not an element of set " + f.set()->name);
        return BValue::atom(*i, t.text);
      }
      case FunctorExpr::Kind::Product: {
        expect(Token::Kind::LParen, "'('");
        BValue a = parse_value(*f.left(), u);
        expect(Token::Kind::Comma, "','");
        BValue b = parse_value(*f.right(), u);
        expect(Token::Kind::RParen, "')'");
        return BValue::pair(std::move(a), std::move(b));
      }
      case FunctorExpr::Kind::Coproduct: {
        if (at_keyword("inl")) {
          next();
          return BValue::inl(parse_value(*f.left(), u));
        }
        if (at_keyword("inr")) {
          next();
          return BValue::inr(parse_value(*f.right(), u));
        }
        err_at(peek(), "expected 'inl' or 'inr'");
      }
      case FunctorExpr::Kind::Exponent: {
        Token open = expect(Token::Kind::LBrace, "'{'");
        const NamedSet& labels = *f.set();
        std::vector<std::optional<BValue>> slots(labels.elems.size());
        while (peek().kind != Token::Kind::RBrace) {
          Token lab = peek();
          if (lab.kind != Token::Kind::Ident && lab.kind != Token::Kind::Number) {
            err_at(lab, "expected a label from set " + labels.name);
          }
          next();
          auto li = labels.find(lab.text);
          if (!li) err_at(lab, "'" + lab.text + "' is not a label in set " + labels.name);
          if (slots[static_cast<size_t>(*li)]) {
            err_at(lab, "label '" + lab.text + "' given twice");
          }
          expect(Token::Kind::Arrow, "'->'");
          slots[static_cast<size_t>(*li)] = parse_value(*f.left(), u);
          if (peek().kind == Token::Kind::Comma) next();
        }
        next();  // '}'
        std::vector<BValue> entries;
        for (size_t i = 0; i < slots.size(); ++i) {
          if (!slots[i]) {
            err_at(open, "missing entry for label '" + labels.elems[i] + "'");
          }
          entries.push_back(std::move(*slots[i]));
        }
        return BValue::table(std::move(entries));
      }
      case FunctorExpr::Kind::Powerset: {
        expect_keyword("set");
        expect(Token::Kind::LBrace, "'{'");
        std::vector<BValue> elems;
        while (peek().kind != Token::Kind::RBrace) {
          Token at = peek();
          BValue e = parse_value(*f.left(), u);
          for (const BValue& prev : elems) {
            if (prev == e) err_at(at, "duplicate element in set literal");
          }
          elems.push_back(std::move(e));
          if (peek().kind == Token::Kind::Comma) next();
        }
        next();  // '}'
        return BValue::set(std::move(elems));
      }
      case FunctorExpr::Kind::SubDist: {
        expect_keyword("dist");
        expect(Token::Kind::LBrace, "'{'");
        std::vector<std::pair<BValue, Rational>> entries;
        while (peek().kind != Token::Kind::RBrace) {
          Token at = peek();
          BValue k = parse_value(*f.left(), u);
          for (const auto& [prev, w] : entries) {
            if (prev == k) err_at(at, "duplicate key in distribution literal");
          }
          expect(Token::Kind::Colon, "':'");
          Rational w = parse_weight();
          entries.emplace_back(std::move(k), std::move(w));
          if (peek().kind == Token::Kind::Comma) next();
        }
        next();  // '}'
        return BValue::dist(std::move(entries));
      }
    }
    err_at(peek(), "unhandled functor kind");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::vector<NamedSetPtr> sets_;
  std::map<std::string, NamedSetPtr> set_map_;
};

}  // namespace

Coalgebra parse_system(const std::string& text) {
  system_parser p(text);
  return p.run();
}

std::string print_value(const FunctorExpr& f, const BValue& v) {
  switch (f.kind()) {
    case FunctorExpr::Kind::Id:
    case FunctorExpr::Kind::Constant:
      return v.name();
    case FunctorExpr::Kind::Product:
      return "(" + print_value(*f.left(), v.first()) + ", " + print_value(*f.right(), v.second()) +
             ")";
    case FunctorExpr::Kind::Coproduct:
      if (v.kind() == BValue::Kind::Inl) return "inl " + print_value(*f.left(), v.body());
      return "inr " + print_value(*f.right(), v.body());
    case FunctorExpr::Kind::Exponent: {
      std::string out = "{ ";
      for (size_t i = 0; i < v.arity(); ++i) {
        if (i) out += ", ";
        out += f.set()->elems[i] + " -> " + print_value(*f.left(), v.entries()[i]);
      }
      out += " }";
      return out;
    }
    case FunctorExpr::Kind::Powerset: {
      if (v.arity() == 0) return "set {}";
      std::string out = "set { ";
      for (size_t i = 0; i < v.arity(); ++i) {
        if (i) out += ", ";
        out += print_value(*f.left(), v.entries()[i]);
      }
      out += " }";
      return out;
    }
    case FunctorExpr::Kind::SubDist: {
      if (v.arity() == 0) return "dist {}";
      std::string out = "dist { ";
      for (size_t i = 0; i < v.arity(); ++i) {
        if (i) out += ", ";
        out += print_value(*f.left(), v.entries()[i]) + ": " + rational_to_string(v.weight(i));
      }
      out += " }";
      return out;
    }
  }
  throw Error(ErrorKind::Internal, "unhandled functor kind");
}

std::string print_system(const Coalgebra& c) {
  std::ostringstream out;
  out << "functor " << c.functor->to_string() << "\n";
  for (const auto& s : c.sets) {
    out << "set " << s->name << " = { ";
    for (size_t i = 0; i < s->elems.size(); ++i) {
      if (i) out << ", ";
      out << s->elems[i];
    }
    out << " }\n";
  }
  for (int i = 0; i < c.states->size(); ++i) {
    if (!c.gamma[static_cast<size_t>(i)]) continue;
    out << "state " << c.states->name(i) << " = "
        << print_value(*c.functor, *c.gamma[static_cast<size_t>(i)]) << "\n";
  }
  if (!c.boundary.empty()) {
    out << "boundary";
    for (int b : c.boundary) out << " " << c.states->name(b);
    out << "\n";
  }
  return out.str();
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string system_hash(const Coalgebra& c) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(print_system(c)));
  return std::string(buf);
}

std::optional<Rational> parse_rational_string(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto digits = [](const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
  };
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!digits(num) || !digits(den)) return std::nullopt;
    BigInt d(den);
    if (d == 0) return std::nullopt;
    return Rational(BigInt(num)) / Rational(d);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
    if (!digits(whole) || !digits(frac)) return std::nullopt;
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    return Rational(BigInt(whole) * scale + BigInt(frac)) / Rational(scale);
  }
  if (!digits(text)) return std::nullopt;
  return Rational(BigInt(text));
}

}  // namespace apart

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>
#include <string>

#include "error.hpp"
#include "parser.hpp"

using namespace apart;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect_parse_error(const std::string& text, const std::string& fragment) {
  try {
    parse_system(text);
    FAIL_CHECK("expected a parse error mentioning '", fragment, "'");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos,
                  "got: ", e.what());
  }
}

}  // namespace

TEST_CASE("shipped system files are print fixpoints") {
  // parse ∘ print must be the identity on canonical files, byte for byte
  for (const char* name : {"submc.apt", "lts.apt", "lmp.apt", "fib.apt"}) {
    std::string path = std::string(APART_SYSTEMS_DIR) + "/" + name;
    std::string text = slurp(path);
    Coalgebra c = parse_system(text);
    CHECK_MESSAGE(print_system(c) == text, "not canonical: ", name);
    // and printing is a fixpoint of parse∘print in general
    Coalgebra c2 = parse_system(print_system(c));
    CHECK(print_system(c2) == print_system(c));
    CHECK(system_hash(c2) == system_hash(c));
  }
}

TEST_CASE("non-canonical input normalizes to the same hash") {
  // same system as systems/submc.apt but with odd spacing, decimals, and
  // unsorted dist keys
  std::string messy =
      "functor   Ds Id\n"
      "state x  = dist { x2: 0.5, x1: 1/2 }\n"
      "state x1 = dist {}\n"
      "state x2 = dist { x2: 1 }\n"
      "state y  = dist { y2: 0.6, y1: 0.4 }\n"
      "state y1 = dist {}\n"
      "state y2 = dist { y2: 1/1 }\n";
  Coalgebra c = parse_system(messy);
  std::string canon = slurp(std::string(APART_SYSTEMS_DIR) + "/submc.apt");
  CHECK(print_system(c) == canon);
  CHECK(print_value(*c.functor, c.gamma_of(0)) == "dist { x1: 1/2, x2: 1/2 }");
}

TEST_CASE("decimals parse exactly") {
  CHECK(parse_rational_string("0.5") == Rational(1) / 2);
  CHECK(parse_rational_string("0.4") == Rational(2) / 5);
  CHECK(parse_rational_string("0.125") == Rational(1) / 8);
  CHECK(parse_rational_string("1.0") == Rational(1));
  CHECK(parse_rational_string("2/5") == Rational(2) / 5);
  CHECK(parse_rational_string("3") == Rational(3));
  CHECK(!parse_rational_string("1/0"));
  CHECK(!parse_rational_string(""));
  CHECK(!parse_rational_string("x"));
  CHECK(!parse_rational_string("1/2/3"));
}

TEST_CASE("functor expression grammar") {
  // each line pairs a functor with a value of that shape for the one state
  auto functor_of = [](const std::string& fexpr, const std::string& value) {
    std::string text = "functor " + fexpr + "\nset A = { p, q }\nset L = { a, b }\nstate x = " +
                       value + "\n";
    return parse_system(text).functor->to_string();
  };
  CHECK(functor_of("A + A * A", "inl p") == "A + A * A");
  CHECK(functor_of("(A + A) * A", "(inl p, q)") == "(A + A) * A");
  CHECK(functor_of("P A^L", "set {}") == "P A^L");
  CHECK(functor_of("(P A)^L", "{ a -> set {}, b -> set { p } }") == "(P A)^L");
  CHECK(functor_of("Ds P A", "dist { set { q }: 1/2 }") == "Ds P A");
  // postfix chains re-print with explicit grouping
  CHECK(functor_of("A^L^L", "{ a -> { a -> p, b -> p }, b -> { a -> q, b -> q } }") == "(A^L)^L");
  CHECK(functor_of("Id * Id * Id", "((x, x), x)") == "Id * Id * Id");
}

TEST_CASE("boundary states and fragments") {
  std::string text =
      "functor Id * Id\n"
      "state a = (b, b)\n"
      "state b = (a, a)\n"
      "boundary c\n";
  Coalgebra c = parse_system(text);
  CHECK(c.states->size() == 3);
  CHECK(!c.complete());
  CHECK(c.boundary == std::vector<int>{2});
  CHECK_NOTHROW(c.gamma_of(0));
  CHECK_THROWS_AS(c.gamma_of(2), Error);
  try {
    c.gamma_of(2);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Fragment);
    CHECK(std::string(e.what()).find("'c'") != std::string::npos);
  }
}

TEST_CASE("parse errors carry positions") {
  expect_parse_error("state x = y\n", "expected 'functor'");
  expect_parse_error("functor Id\n", "expected at least one state declaration");
  expect_parse_error("functor Id\nstate x = x\nstate x = x\n", "state 'x' declared twice");
  expect_parse_error("functor Id\nstate inl = inl\n", "'inl' is a reserved word");
  expect_parse_error("functor Qd\nstate x = x\n", "unknown set 'Qd'");
  expect_parse_error("functor Id\nstate x = q\n", "unknown state 'q'");
  expect_parse_error("functor Id\nstate x = x ;\n", "unexpected character ';'");
  // line 2, column of the semicolon itself
  expect_parse_error("functor Id\nstate x = x ;\n", "at 2:13");
  expect_parse_error("functor Ds Id\nstate x = dist { x: 1/0 }\n", "zero denominator");
  expect_parse_error("functor Ds Id\nstate x = dist { x: 1/2, x: 1/3 }\n",
                     "duplicate key in distribution literal");
  expect_parse_error("functor P Id\nstate x = set { x, x }\n", "duplicate element in set literal");
  expect_parse_error("set A = { }\nfunctor A\nstate x = p\n", "expected 'functor'");
  expect_parse_error("functor A\nset A = { p, p }\nstate x = p\n", "duplicate element 'p'");
  expect_parse_error("functor A\nset A = { p }\nset A = { q }\nstate x = p\n",
                     "set 'A' declared twice");
  expect_parse_error("functor Id^L\nset L = { a, b }\nstate x = { a -> x }\n",
                     "missing entry for label 'b'");
  expect_parse_error("functor Id^L\nset L = { a }\nstate x = { a -> x, a -> x }\n",
                     "label 'a' given twice");
  expect_parse_error("functor Id^L\nset L = { a }\nstate x = { b -> x }\n",
                     "'b' is not a label in set L");
  expect_parse_error("functor Id\nstate x = x\nboundary\n", "expected state names after 'boundary'");
  expect_parse_error("functor Id\nstate x = x\nboundary x\n", "state 'x' declared twice");
  // junk after a state body is blamed on that state; junk after the boundary
  // list has nothing to attach to
  expect_parse_error("functor Id\nstate x = x\ngarbage\n",
                     "unexpected token after behaviour of state 'x'");
  expect_parse_error("functor Id\nstate x = x\nboundary y\n= z\n", "unexpected trailing input");
}

TEST_CASE("shape errors in declarations name the state") {
  try {
    parse_system("functor Ds Id\nstate x = dist { x: 2/3, y: 2/3 }\nstate y = dist {}\n");
    FAIL_CHECK("expected a shape error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Shape);
    std::string msg = e.what();
    CHECK(msg.find("state 'x'") != std::string::npos);
    CHECK(msg.find("exceeds 1") != std::string::npos);
  }
}

TEST_CASE("powerset literal keyword does not end a state body") {
  // 'set' introduces both set declarations and powerset literals; a literal
  // right after '=' must stay inside the state body
  std::string text =
      "functor P Id\n"
      "state x = set { y }\n"
      "state y = set {}\n";
  Coalgebra c = parse_system(text);
  CHECK(c.states->size() == 2);
  CHECK(print_value(*c.functor, c.gamma_of(0)) == "set { y }");
}

TEST_CASE("declared order is canonical order") {
  std::string text =
      "functor P Id\n"
      "state z2 = set { z1 }\n"
      "state z1 = set { z2 }\n";
  Coalgebra c = parse_system(text);
  CHECK(c.states->name(0) == "z2");
  // printing preserves declaration order, not alphabetical order
  CHECK(print_system(c).find("state z2") < print_system(c).find("state z1"));
}

TEST_CASE("system hash is stable and format-checked") {
  std::string text = "functor Id\nstate x = x\n";
  Coalgebra c = parse_system(text);
  std::string h = system_hash(c);
  CHECK(h.size() == 16);
  for (char ch : h) CHECK(((ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'f')));
  CHECK(system_hash(c) == h);
  // a different system hashes differently
  Coalgebra c2 = parse_system("functor Id\nstate x = x\nstate y = x\n");
  CHECK(system_hash(c2) != h);
  // fnv1a of the canonical text is what the hash exposes
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(print_system(c))));
  CHECK(h == buf);
}

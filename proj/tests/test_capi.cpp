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

// Exercises the shared library through its C surface only: no internal
// headers, just apart/apart.h, the way an embedding application sees it.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cctype>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "apart/apart.h"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string system_file(const char* name) {
  return slurp(std::string(APART_SYSTEMS_DIR) + "/" + name);
}

std::string golden_file(const char* name) {
  return slurp(std::string(APART_GOLDEN_DIR) + "/" + name);
}

struct sys_deleter {
  void operator()(apart_system* s) const { apart_system_free(s); }
};
using sys_ptr = std::unique_ptr<apart_system, sys_deleter>;

sys_ptr parse_ok(const std::string& text) {
  apart_system* raw = nullptr;
  REQUIRE_MESSAGE(apart_system_parse(text.c_str(), &raw) == APART_OK, apart_last_error());
  REQUIRE(raw != nullptr);
  return sys_ptr(raw);
}

// Takes ownership of the C string so every call site frees exactly once.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  apart_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("parse, print and hash round-trip") {
  std::string src = system_file("submc.apt");
  sys_ptr sys = parse_ok(src);

  char* printed = nullptr;
  REQUIRE(apart_system_print(sys.get(), &printed) == APART_OK);
  CHECK(take(printed) == src);  // shipped files are canonical already

  char* hash = nullptr;
  REQUIRE(apart_system_hash(sys.get(), &hash) == APART_OK);
  std::string h = take(hash);
  CHECK(h.size() == 16);
  for (char ch : h) CHECK(std::isxdigit(static_cast<unsigned char>(ch)));
}

TEST_CASE("null arguments are usage errors") {
  apart_system* raw = nullptr;
  CHECK(apart_system_parse(nullptr, &raw) == APART_ERR_USAGE);
  CHECK(std::string(apart_last_error()).find("missing argument: text") != std::string::npos);
  CHECK(apart_system_parse("functor Ds Id\nstate x = dist {}\n", nullptr) == APART_ERR_USAGE);
  CHECK(std::string(apart_last_error()).find("missing argument: out") != std::string::npos);

  sys_ptr sys = parse_ok(system_file("submc.apt"));
  CHECK(apart_system_print(sys.get(), nullptr) == APART_ERR_USAGE);
  char* text = nullptr;
  CHECK(apart_system_print(nullptr, &text) == APART_ERR_USAGE);
  CHECK(text == nullptr);
  char* out = nullptr;
  CHECK(apart_check_pair(sys.get(), nullptr, "y", &out) == APART_ERR_USAGE);
  CHECK(out == nullptr);  // failing calls leave the out pointer alone
}

TEST_CASE("unparsable input reports position and kind") {
  apart_system* raw = reinterpret_cast<apart_system*>(0x1);
  apart_system* got = raw;
  CHECK(apart_system_parse("functor Qs Id\nstate x = dist {}\n", &got) == APART_ERR_INPUT);
  CHECK(got == raw);  // untouched on failure
  std::string err = apart_last_error();
  CHECK(err.find("1:9") != std::string::npos);

  // shape problems land in the same bucket
  CHECK(apart_system_parse("functor Ds Id\nstate x = dist { x: 3/2 }\n", &got) ==
        APART_ERR_INPUT);
  CHECK(std::string(apart_last_error()).find("state 'x'") != std::string::npos);
}

TEST_CASE("fragment flag") {
  sys_ptr whole = parse_ok(system_file("submc.apt"));
  sys_ptr fragment = parse_ok(system_file("fib.apt"));
  CHECK(apart_system_is_fragment(whole.get()) == 0);
  CHECK(apart_system_is_fragment(fragment.get()) == 1);
  CHECK(apart_system_is_fragment(nullptr) == 0);
}

TEST_CASE("relation text lists classes and apart pairs") {
  sys_ptr sys = parse_ok(system_file("submc.apt"));
  char* out = nullptr;
  REQUIRE(apart_relation_text(sys.get(), &out) == APART_OK);
  std::string text = take(out);
  CHECK(text.find("classes:\n") != std::string::npos);
  CHECK(text.find("{x1, y1}") != std::string::npos);
  CHECK(text.find("apart pairs (13):") != std::string::npos);
  CHECK(text.find("(x, y)") != std::string::npos);
  CHECK(text.find("(x1, y1)") == std::string::npos);  // equivalent, not listed
}

TEST_CASE("pair checks") {
  sys_ptr sys = parse_ok(system_file("submc.apt"));
  char* out = nullptr;
  CHECK(apart_check_pair(sys.get(), "x", "y", &out) == APART_OK);
  CHECK(take(out) == "apart");

  out = nullptr;
  CHECK(apart_check_pair(sys.get(), "x1", "y1", &out) == APART_NOT_APART);
  CHECK(take(out) == "equivalent (class: {x1, y1})");

  out = nullptr;
  CHECK(apart_check_pair(sys.get(), "x", "x", &out) == APART_NOT_APART);
  CHECK(take(out) == "equivalent (class: {x})");

  out = nullptr;
  CHECK(apart_check_pair(sys.get(), "x", "zz", &out) == APART_ERR_USAGE);
  CHECK(out == nullptr);
  CHECK(std::string(apart_last_error()).find("zz") != std::string::npos);
}

TEST_CASE("proving matches the rendered goldens") {
  sys_ptr sys = parse_ok(system_file("submc.apt"));
  char* out = nullptr;
  REQUIRE(apart_prove(sys.get(), "x", "y", APART_STYLE_COVERING, APART_FORMAT_TEXT, &out) ==
          APART_OK);
  CHECK(take(out) == golden_file("submc_xy_covering.txt"));

  out = nullptr;
  REQUIRE(apart_prove(sys.get(), "x", "y", APART_STYLE_BASIC, APART_FORMAT_TEXT, &out) ==
          APART_OK);
  CHECK(take(out) == golden_file("submc_xy_basic.txt"));

  out = nullptr;
  CHECK(apart_prove(sys.get(), "x1", "y1", APART_STYLE_COVERING, APART_FORMAT_TEXT, &out) ==
        APART_NOT_APART);
  CHECK(take(out) == "equivalent (class: {x1, y1})");
}

TEST_CASE("prove then verify round-trip") {
  sys_ptr sys = parse_ok(system_file("submc.apt"));
  char* proof = nullptr;
  REQUIRE(apart_prove(sys.get(), "x", "y", APART_STYLE_COVERING, APART_FORMAT_JSON, &proof) ==
          APART_OK);
  std::string json = take(proof);
  CHECK(json == golden_file("submc_xy_covering.json"));

  char* verdict = nullptr;
  REQUIRE_MESSAGE(apart_verify(sys.get(), json.c_str(), &verdict) == APART_OK,
                  apart_last_error());
  CHECK(take(verdict) == "valid");
}

TEST_CASE("verification failures") {
  sys_ptr sys = parse_ok(system_file("submc.apt"));

  // a proof recorded against some other system: checks, but the hash differs
  std::string json = golden_file("submc_xy_covering.json");
  size_t at = json.find("\"system_hash\": \"");
  REQUIRE(at != std::string::npos);
  json.replace(at + 16, 16, "0000000000000000");
  char* out = nullptr;
  CHECK(apart_verify(sys.get(), json.c_str(), &out) == APART_INVALID_PROOF);
  std::string why = take(out);
  CHECK(why.find("system hash mismatch") != std::string::npos);
  CHECK(why.find("recorded 0000000000000000") != std::string::npos);

  // a proof over entirely different states cannot even be read back
  out = nullptr;
  CHECK(apart_verify(sys.get(), golden_file("fib_x0_x1.json").c_str(), &out) ==
        APART_INVALID_PROOF);
  CHECK(out == nullptr);
  CHECK(std::string(apart_last_error()).find("x0") != std::string::npos);

  // malformed JSON
  out = nullptr;
  CHECK(apart_verify(sys.get(), "{", &out) == APART_INVALID_PROOF);
  CHECK(out == nullptr);
  CHECK(!std::string(apart_last_error()).empty());
}

TEST_CASE("fragments: proving refuses, verifying a hand-built proof works") {
  sys_ptr fib = parse_ok(system_file("fib.apt"));
  char* out = nullptr;
  CHECK(apart_prove(fib.get(), "x0", "x1", APART_STYLE_COVERING, APART_FORMAT_TEXT, &out) ==
        APART_ERR_INPUT);
  CHECK(out == nullptr);
  CHECK(std::string(apart_last_error()).find("x5") != std::string::npos);

  char* verdict = nullptr;
  REQUIRE_MESSAGE(
      apart_verify(fib.get(), golden_file("fib_x0_x1.json").c_str(), &verdict) == APART_OK,
      apart_last_error());
  CHECK(take(verdict) == "valid");
}

TEST_CASE("tower text") {
  sys_ptr sys = parse_ok(system_file("submc.apt"));
  char* out = nullptr;
  REQUIRE(apart_tower_text(sys.get(), -1, &out) == APART_OK);
  std::string text = take(out);
  CHECK(text.find("level 1:") != std::string::npos);
  // (x, y) first separates in round two
  size_t l2 = text.find("level 2:");
  REQUIRE(l2 != std::string::npos);
  size_t l2_end = text.find('\n', l2);
  CHECK(text.substr(l2, l2_end - l2).find("(x, y)") != std::string::npos);
  CHECK(text.substr(0, l2).find("(x, y)") == std::string::npos);
  CHECK(text.find("stable after 2 levels") != std::string::npos);

  out = nullptr;
  REQUIRE(apart_tower_text(sys.get(), 1, &out) == APART_OK);
  CHECK(take(out).find("cut off after 1 levels") != std::string::npos);
}

TEST_CASE("coupling comparison text") {
  sys_ptr sys = parse_ok(system_file("submc.apt"));
  char* out = nullptr;
  REQUIRE(apart_cobisim_text(sys.get(), &out) == APART_OK);
  CHECK(take(out) == "agree");

  sys_ptr lts = parse_ok(system_file("lts.apt"));
  out = nullptr;
  CHECK(apart_cobisim_text(lts.get(), &out) == APART_ERR_INPUT);
  CHECK(out == nullptr);
  CHECK(std::string(apart_last_error()) == "weight-coupling comparison needs functor Ds Id");
}

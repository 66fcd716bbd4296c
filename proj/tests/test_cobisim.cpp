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
#include <map>
#include <sstream>

#include "cobisim.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "parser.hpp"

using namespace apart;

namespace {

Coalgebra load(const char* name) {
  std::ifstream in(std::string(APART_SYSTEMS_DIR) + "/" + name, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "cannot open ", name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str());
}

std::vector<std::pair<int, Rational>> weights(const Coalgebra& c, const char* s) {
  const BValue& d = c.gamma_of(c.states->index_of(s));
  std::vector<std::pair<int, Rational>> out;
  for (size_t i = 0; i < d.arity(); ++i) out.emplace_back(d.entries()[i].index(), d.weight(i));
  return out;
}

}  // namespace

TEST_CASE("distinguishing derivation for the worked transition system") {
  Coalgebra c = load("lts.apt");
  auto idx = [&](const char* n) { return c.states->index_of(n); };
  LtsPtr root = lts_synthesize(c, idx("x"), idx("y"));
  REQUIRE(root);

  // x plays its b-move to x2; y's only answer y2 is refuted by y2's a-move
  CHECK(root->x == idx("x"));
  CHECK(root->y == idx("y"));
  CHECK(root->left_moves);
  CHECK(root->label == "b");
  CHECK(root->moved_to == idx("x2"));
  REQUIRE(root->subgoals.size() == 1);
  const LtsDerivation& sub = *root->subgoals[0];
  CHECK(sub.x == idx("x2"));
  CHECK(sub.y == idx("y2"));
  CHECK(!sub.left_moves);
  CHECK(sub.label == "a");
  CHECK(sub.moved_to == idx("y2"));
  CHECK(sub.subgoals.empty());  // x2 has no a-answers at all

  CHECK(lts_check(c, *root).valid);
}

TEST_CASE("derivations exist exactly for apart pairs") {
  Coalgebra c = load("lts.apt");
  Relation ap = behavioural_apartness(c);
  for (int a = 0; a < c.states->size(); ++a) {
    for (int b = 0; b < c.states->size(); ++b) {
      LtsPtr d = lts_synthesize(c, a, b);
      if (ap.contains(a, b)) {
        REQUIRE_MESSAGE(d, "no derivation for an apart pair (", c.states->name(a), ", ",
                        c.states->name(b), ")");
        LtsCheckResult cr = lts_check(c, *d);
        CHECK_MESSAGE(cr.valid, cr.node_path, ": ", cr.reason);
      } else {
        CHECK(!d);
      }
    }
  }
}

TEST_CASE("derivation checking rejects mutations") {
  Coalgebra c = load("lts.apt");
  auto idx = [&](const char* n) { return c.states->index_of(n); };
  LtsPtr good = lts_synthesize(c, idx("x"), idx("y"));
  REQUIRE(good);

  auto wrong_label = std::make_shared<LtsDerivation>(*good);
  wrong_label->label = "zap";
  auto r1 = lts_check(c, *wrong_label);
  CHECK(!r1.valid);
  CHECK(r1.reason == "unknown label 'zap'");

  auto wrong_move = std::make_shared<LtsDerivation>(*good);
  wrong_move->moved_to = idx("y1");
  auto r2 = lts_check(c, *wrong_move);
  CHECK(!r2.valid);
  CHECK(r2.reason == "'x' has no b-move to 'y1'");
  CHECK(r2.node_path == "x # y");

  auto missing_answer = std::make_shared<LtsDerivation>(*good);
  missing_answer->subgoals.clear();
  auto r3 = lts_check(c, *missing_answer);
  CHECK(!r3.valid);
  CHECK(r3.reason == "expected 1 subgoals, found 0");

  auto flipped = std::make_shared<LtsDerivation>(*good->subgoals[0]);
  std::swap(flipped->x, flipped->y);
  auto parent = std::make_shared<LtsDerivation>(*good);
  parent->subgoals[0] = flipped;
  auto r4 = lts_check(c, *parent);
  CHECK(!r4.valid);
  CHECK(r4.reason == "subgoal mismatch: expected (x2, y2)");

  // a failure deep in a subgoal carries the path to it
  auto broken_leaf = std::make_shared<LtsDerivation>(*good->subgoals[0]);
  broken_leaf->label = "b";  // y2 has no b-moves
  auto parent2 = std::make_shared<LtsDerivation>(*good);
  parent2->subgoals[0] = broken_leaf;
  auto r5 = lts_check(c, *parent2);
  CHECK(!r5.valid);
  CHECK(r5.node_path == "x # y > x2 # y2");
  CHECK(r5.reason == "'y2' has no b-move to 'y2'");
}

TEST_CASE("derivations need the transition system functor") {
  Coalgebra c = load("submc.apt");
  try {
    lts_synthesize(c, 0, 1);
    FAIL_CHECK("expected a shape error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Shape);
    CHECK(std::string(e.what()) == "transition-system derivations need functor (P Id)^A");
  }
}

TEST_CASE("coupling for equivalent distributions reproduces both marginals") {
  Coalgebra c = load("submc.apt");
  Relation forbidden = behavioural_apartness(c);
  CouplingResult res = coupling_exists(weights(c, "x2"), weights(c, "y2"), forbidden);
  REQUIRE(res.exists);
  REQUIRE(res.coupling.size() == 1);
  auto [a, b, m] = res.coupling[0];
  CHECK(c.states->name(a) == "x2");
  CHECK(c.states->name(b) == "y2");
  CHECK(m == Rational(1));

  // empty against empty couples trivially
  CouplingResult empty = coupling_exists({}, {}, forbidden);
  CHECK(empty.exists);
  CHECK(empty.coupling.empty());
}

TEST_CASE("coupling failure produces a mass certificate") {
  Coalgebra c = load("submc.apt");
  auto idx = [&](const char* n) { return c.states->index_of(n); };
  Relation forbidden = behavioural_apartness(c);
  // x moves half/half to x1, x2; y moves 2/5, 3/5 to y1, y2.  Only x1-y1 and
  // x2-y2 are allowed pairings, and x1 carries more than y1 offers.
  CouplingResult res = coupling_exists(weights(c, "x"), weights(c, "y"), forbidden);
  REQUIRE(!res.exists);
  CHECK(res.violator_on_left);
  CHECK(res.violator == std::vector<int>{idx("x1")});
  CHECK(res.neighbors == std::vector<int>{idx("y1")});
  CHECK(res.violator_mass == Rational(1) / 2);
  CHECK(res.neighbor_mass == Rational(2) / 5);
  CHECK(res.violator_mass > res.neighbor_mass);
}

TEST_CASE("unequal totals are an immediate certificate") {
  Coalgebra c = load("submc.apt");
  auto idx = [&](const char* n) { return c.states->index_of(n); };
  Relation forbidden = behavioural_apartness(c);
  CouplingResult res = coupling_exists({{idx("x1"), Rational(1) / 2}},
                                       {{idx("y1"), Rational(2) / 5}}, forbidden);
  REQUIRE(!res.exists);
  CHECK(res.violator_on_left);
  CHECK(res.violator == std::vector<int>{idx("x1")});
  CHECK(res.violator_mass == Rational(1) / 2);
  CHECK(res.neighbors == std::vector<int>{idx("y1")});
  CHECK(res.neighbor_mass == Rational(2) / 5);

  // heavier right side flips the certificate
  CouplingResult res2 = coupling_exists({{idx("x1"), Rational(1) / 4}},
                                        {{idx("y1"), Rational(1) / 2}}, forbidden);
  REQUIRE(!res2.exists);
  CHECK(!res2.violator_on_left);
  CHECK(res2.violator == std::vector<int>{idx("y1")});
}

TEST_CASE("couplings split mass when a state pairs with several partners") {
  auto u = make_universe({"a", "b", "c", "d"});
  Relation forbidden(u);
  forbidden.add_symmetric(1, 3);  // b may not pair with d
  // b's half goes to c whole; a has to split its half across c and d
  CouplingResult res = coupling_exists({{0, Rational(1) / 2}, {1, Rational(1) / 2}},
                                       {{2, Rational(3) / 4}, {3, Rational(1) / 4}}, forbidden);
  REQUIRE(res.exists);
  // marginals reconstruct exactly
  std::map<int, Rational> lm, rm;
  for (auto [a, b, m] : res.coupling) {
    CHECK(m > 0);
    CHECK(!forbidden.contains(a, b));
    lm[a] += m;
    rm[b] += m;
  }
  CHECK(lm[0] == Rational(1) / 2);
  CHECK(lm[1] == Rational(1) / 2);
  CHECK(rm[2] == Rational(3) / 4);
  CHECK(rm[3] == Rational(1) / 4);
  // closing d to a as well strands d's quarter: nothing may land there
  Relation harder = forbidden;
  harder.add_symmetric(0, 3);
  CouplingResult res2 = coupling_exists({{0, Rational(1) / 2}, {1, Rational(1) / 2}},
                                        {{2, Rational(3) / 4}, {3, Rational(1) / 4}}, harder);
  REQUIRE(!res2.exists);
  CHECK(res2.violator_mass > res2.neighbor_mass);
}

TEST_CASE("coupling fixpoint agrees with behavioural apartness") {
  Coalgebra c = load("submc.apt");
  Relation via_couplings = cobisim_apart(c);
  Relation via_refinement = behavioural_apartness(c);
  CHECK(via_couplings == via_refinement);
}

TEST_CASE("coupling fixpoint agrees on random weighted systems") {
  auto a = testgen::atoms_set();
  auto l = testgen::labels_set();
  auto ds = FunctorExpr::subdist(FunctorExpr::id());
  testgen::rng g(60400);
  for (int i = 0; i < 40; ++i) {
    Coalgebra c = g.system(ds, 2 + g.pick(5), a, l);
    CHECK(cobisim_apart(c) == behavioural_apartness(c));
  }
}

TEST_CASE("coupling comparison needs the weight functor") {
  Coalgebra c = load("lts.apt");
  try {
    cobisim_apart(c);
    FAIL_CHECK("expected a shape error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Shape);
    CHECK(std::string(e.what()) == "weight-coupling comparison needs functor Ds Id");
  }
  // Ds Ds Id is not Ds Id
  Coalgebra nested = parse_system("functor Ds Ds Id\nstate x = dist {}\n");
  CHECK_THROWS_AS(cobisim_apart(nested), Error);
}

TEST_CASE("coupling comparison refuses fragments") {
  Coalgebra c = parse_system("functor Ds Id\nstate x = dist { y: 1/2 }\nboundary y\n");
  try {
    cobisim_apart(c);
    FAIL_CHECK("expected a fragment error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Fragment);
    CHECK(std::string(e.what()).find("'y'") != std::string::npos);
  }
}

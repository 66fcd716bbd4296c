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

#include "proof.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "engine.hpp"
#include "parser.hpp"

namespace apart {

namespace {

using ordered_json = nlohmann::ordered_json;

std::pair<int, int> canonical(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

struct Premise {
  Partition classes;
  NormalForm left, right;
  bool holds = false;
};

// Normalize both goal behaviours under the classes that R induces.  For the
// covering rule the identification is computed over Z together with the
// states R mentions, then cut down to Z; states further out never enter the
// picture, which is what lets a small Z keep outside chains from collapsing
// the covering classes.
Premise eval_premise(const Coalgebra& c, bool covering, const std::vector<int>& z,
                     const std::vector<std::pair<int, int>>& pairs, int x, int y) {
  auto finish = [&](const Partition& p) {
    Premise out{p, normalize(p, c.gamma_of(x)), normalize(p, c.gamma_of(y)), false};
    out.holds = out.left != out.right;
    return out;
  };
  if (!covering) {
    Relation r(c.states);
    for (auto [a, b] : pairs) r.add_symmetric(a, b);
    return finish(equivalence_closure(r.complement()));
  }
  std::vector<int> uni = z;
  for (auto [a, b] : pairs) {
    uni.push_back(a);
    uni.push_back(b);
  }
  std::sort(uni.begin(), uni.end());
  uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
  UniversePtr sub = sub_universe(c.states, uni);
  auto pos = [&](int full) {
    return static_cast<int>(std::lower_bound(uni.begin(), uni.end(), full) - uni.begin());
  };
  Relation r(sub);
  for (auto [a, b] : pairs) r.add_symmetric(pos(a), pos(b));
  Partition e = equivalence_closure(r.complement());
  std::vector<int> zpos;
  zpos.reserve(z.size());
  for (int s : z) zpos.push_back(pos(s));
  return finish(e.restrict(zpos));
}

}  // namespace

SynthesisResult synthesize(const Coalgebra& c, int x, int y, ProofStyle style) {
  Tower tower = apartness_tower(c);
  const Relation& apart = tower.levels.back();

  SynthesisResult result;
  if (x == y || !apart.contains(x, y)) {
    Partition eq = equivalence_closure(apart.complement());
    result.not_apart_class = eq.blocks()[static_cast<size_t>(eq.block_of(x))];
    return result;
  }

  bool covering = style == ProofStyle::Covering;
  auto level_of = [&](int a, int b) {
    for (size_t m = 0; m < tower.levels.size(); ++m) {
      if (tower.levels[m].contains(a, b)) return static_cast<int>(m);
    }
    throw Error(ErrorKind::Internal, "pair not in any tower level during synthesis");
  };

  std::map<std::pair<int, int>, ProofPtr> done;
  auto build = [&](auto&& self, int a, int b) -> ProofPtr {
    auto key = canonical(a, b);
    if (auto it = done.find(key); it != done.end()) return it->second;

    const Relation& base = tower.levels[static_cast<size_t>(level_of(a, b) - 1)];
    auto node = std::make_shared<ProofNode>();
    node->x = a;
    node->y = b;
    node->covering_rule = covering;
    if (covering) {
      Covering cov = one_step_covering(c, {a, b});
      node->z = cov.z;
      for (size_t i = 0; i < cov.z.size(); ++i) {
        for (size_t j = i + 1; j < cov.z.size(); ++j) {
          if (base.contains(cov.z[i], cov.z[j])) {
            node->r_pairs.emplace_back(cov.z[i], cov.z[j]);
          }
        }
      }
    } else {
      node->r_pairs = base.unordered_pairs();
    }

    if (!eval_premise(c, covering, node->z, node->r_pairs, a, b).holds) {
      throw Error(ErrorKind::Internal,
                  "synthesis premise failed for (" + c.states->name(a) + ", " +
                      c.states->name(b) + ") despite tower membership");
    }
    // Drop assumptions one by one, keeping each only if the premise needs it.
    for (size_t i = 0; i < node->r_pairs.size();) {
      auto candidate = node->r_pairs;
      candidate.erase(candidate.begin() + static_cast<long>(i));
      if (eval_premise(c, covering, node->z, candidate, a, b).holds) {
        node->r_pairs = std::move(candidate);
      } else {
        ++i;
      }
    }

    Premise fin = eval_premise(c, covering, node->z, node->r_pairs, a, b);
    auto w = diff_normal_forms(*c.functor, fin.classes, fin.left, fin.right);
    if (!w) throw Error(ErrorKind::Internal, "premise holds but no witness found");
    node->witness = std::move(*w);

    for (auto [p, q] : node->r_pairs) {
      node->children.push_back(self(self, p, q));
    }
    done[key] = node;
    return node;
  };

  result.root = build(build, x, y);
  return result;
}

namespace {

struct Failure {
  std::vector<std::string> path;
  std::string reason;
};

std::string goal_label(const Coalgebra& c, const ProofNode& n) {
  return c.states->name(n.x) + " # " + c.states->name(n.y);
}

std::optional<Failure> check_rec(const Coalgebra& c, const ProofNode& n,
                                 std::vector<std::string>& path) {
  path.push_back(goal_label(c, n));
  auto fail = [&](const std::string& reason) { return Failure{path, reason}; };

  for (int s : {n.x, n.y}) {
    if (s < 0 || s >= c.states->size()) return fail("goal state out of range");
    if (!c.gamma[static_cast<size_t>(s)]) {
      return fail("state '" + c.states->name(s) + "' has no declared behaviour");
    }
  }

  // Children first, so a defect deep in the derivation is reported there and
  // not as a spurious mismatch at its ancestors.
  for (const ProofPtr& ch : n.children) {
    if (!ch) return fail("missing child node");
    auto f = check_rec(c, *ch, path);
    if (f) return f;
  }

  // Every assumption in R must be discharged by exactly one child with that
  // goal, and children must not smuggle in extra goals.
  std::multiset<std::pair<int, int>> want(n.r_pairs.begin(), n.r_pairs.end());
  for (const ProofPtr& ch : n.children) {
    auto g = canonical(ch->x, ch->y);
    auto it = want.find(g);
    if (it == want.end()) {
      return fail("child proves (" + c.states->name(g.first) + ", " + c.states->name(g.second) +
                  ") which is not in R");
    }
    want.erase(it);
  }
  if (!want.empty()) {
    auto g = *want.begin();
    return fail("undischarged pair (" + c.states->name(g.first) + ", " +
                c.states->name(g.second) + ")");
  }

  for (auto [a, b] : n.r_pairs) {
    if (a < 0 || b >= c.states->size()) return fail("pair in R out of range");
    if (a == b) return fail("reflexive pair in R");
  }

  if (n.covering_rule) {
    if (n.z.empty()) return fail("covering set Z is empty");
    for (int s : n.z) {
      if (s < 0 || s >= c.states->size()) return fail("covering state out of range");
    }
    for (int goal_state : {n.x, n.y}) {
      for (int s : support_of(c.gamma_of(goal_state))) {
        if (!std::binary_search(n.z.begin(), n.z.end(), s)) {
          return fail("covering omits successor state '" + c.states->name(s) + "'");
        }
      }
    }
    for (auto [a, b] : n.r_pairs) {
      if (!std::binary_search(n.z.begin(), n.z.end(), a) ||
          !std::binary_search(n.z.begin(), n.z.end(), b)) {
        return fail("pair in R lies outside the covering set Z");
      }
    }
  }

  Premise pr = eval_premise(c, n.covering_rule, n.z, n.r_pairs, n.x, n.y);
  if (!pr.holds) {
    return fail("premise fails: the behaviours coincide under the classes induced by R");
  }
  std::string why;
  if (!witness_holds(*c.functor, pr.left, pr.right, n.witness, &why)) {
    return fail("witness mismatch: " + why);
  }

  path.pop_back();
  return std::nullopt;
}

}  // namespace

CheckResult check_proof(const Coalgebra& c, const ProofNode& root) {
  std::vector<std::string> path;
  auto f = check_rec(c, root, path);
  CheckResult out;
  if (f) {
    out.valid = false;
    std::string joined;
    for (size_t i = 0; i < f->path.size(); ++i) {
      if (i) joined += " > ";
      joined += f->path[i];
    }
    out.node_path = joined;
    out.reason = f->reason;
  }
  return out;
}

namespace {

std::string path_text(const std::vector<Witness::Step>& path) {
  std::string out;
  for (const auto& s : path) {
    switch (s.kind) {
      case Witness::Step::Kind::Fst: out += ".1"; break;
      case Witness::Step::Kind::Snd: out += ".2"; break;
      case Witness::Step::Kind::Inl: out += ":inl"; break;
      case Witness::Step::Kind::Inr: out += ":inr"; break;
      case Witness::Step::Kind::At: out += "(" + s.label + ")"; break;
    }
  }
  return out;
}

std::string witness_text(const Coalgebra& c, const ProofNode& n) {
  const Witness& w = n.witness;
  std::string g = n.covering_rule ? "g" : "gamma";
  std::string lhs = g + "(" + c.states->name(n.x) + ")" + path_text(w.path);
  std::string rhs = g + "(" + c.states->name(n.y) + ")" + path_text(w.path);
  switch (w.kind) {
    case Witness::Kind::Atoms:
      return lhs + " = " + w.left + " != " + w.right + " = " + rhs;
    case Witness::Kind::StateClasses:
      return lhs + " = [" + w.left + "] != [" + w.right + "] = " + rhs;
    case Witness::Kind::Side:
      return lhs + " is " + w.left + " but " + rhs + " is " + w.right;
    case Witness::Kind::DistClass:
      return lhs + "[" + w.class_repr + "] = " + rational_to_string(w.left_mass) + " != " +
             rational_to_string(w.right_mass) + " = " + rhs + "[" + w.class_repr + "]";
    case Witness::Kind::SetMember: {
      const std::string& holder = w.element_on_left ? lhs : rhs;
      const std::string& other = w.element_on_left ? rhs : lhs;
      return holder + " has [" + w.class_repr + "] apart from all of " + other;
    }
  }
  return "";
}

void render_node(std::ostringstream& out, const Coalgebra& c, const ProofNode& n, int depth,
                 std::set<std::pair<int, int>>& emitted) {
  std::string pad(static_cast<size_t>(depth) * 2, ' ');
  auto key = canonical(n.x, n.y);
  if (emitted.count(key)) {
    out << pad << goal_label(c, n) << "  (proved above)\n";
    return;
  }
  emitted.insert(key);
  out << pad << goal_label(c, n) << "  [";
  if (n.covering_rule) {
    out << "covering, Z = {";
    for (size_t i = 0; i < n.z.size(); ++i) {
      if (i) out << ", ";
      out << c.states->name(n.z[i]);
    }
    out << "}";
  } else {
    out << "basic";
  }
  out << "]\n";
  if (!n.r_pairs.empty()) {
    out << pad << "  R: {";
    for (size_t i = 0; i < n.r_pairs.size(); ++i) {
      if (i) out << ", ";
      out << "(" << c.states->name(n.r_pairs[i].first) << ", "
          << c.states->name(n.r_pairs[i].second) << ")";
    }
    out << "}\n";
  }
  out << pad << "  by: " << witness_text(c, n) << "\n";
  for (const ProofPtr& ch : n.children) {
    render_node(out, c, *ch, depth + 1, emitted);
  }
}

ordered_json witness_json(const Witness& w) {
  ordered_json j;
  switch (w.kind) {
    case Witness::Kind::Atoms: j["kind"] = "atoms"; break;
    case Witness::Kind::StateClasses: j["kind"] = "state_classes"; break;
    case Witness::Kind::Side: j["kind"] = "side"; break;
    case Witness::Kind::DistClass: j["kind"] = "dist_class"; break;
    case Witness::Kind::SetMember: j["kind"] = "set_member"; break;
  }
  ordered_json steps = ordered_json::array();
  for (const auto& s : w.path) {
    switch (s.kind) {
      case Witness::Step::Kind::Fst: steps.push_back("fst"); break;
      case Witness::Step::Kind::Snd: steps.push_back("snd"); break;
      case Witness::Step::Kind::Inl: steps.push_back("inl"); break;
      case Witness::Step::Kind::Inr: steps.push_back("inr"); break;
      case Witness::Step::Kind::At: steps.push_back(ordered_json{{"at", s.label}}); break;
    }
  }
  j["path"] = steps;
  switch (w.kind) {
    case Witness::Kind::Atoms:
    case Witness::Kind::StateClasses:
    case Witness::Kind::Side:
      j["left"] = w.left;
      j["right"] = w.right;
      break;
    case Witness::Kind::DistClass:
      j["class"] = w.class_repr;
      j["left"] = rational_to_string(w.left_mass);
      j["right"] = rational_to_string(w.right_mass);
      break;
    case Witness::Kind::SetMember:
      j["element"] = w.class_repr;
      j["side"] = w.element_on_left ? "left" : "right";
      break;
  }
  return j;
}

ordered_json node_json(const Coalgebra& c, const ProofNode& n,
                       std::set<std::pair<int, int>>& emitted) {
  auto key = canonical(n.x, n.y);
  if (emitted.count(key)) {
    ordered_json ref;
    ref["ref"] = ordered_json::array({c.states->name(n.x), c.states->name(n.y)});
    return ref;
  }
  emitted.insert(key);
  ordered_json j;
  j["goal"] = ordered_json::array({c.states->name(n.x), c.states->name(n.y)});
  j["rule"] = n.covering_rule ? "covering" : "basic";
  if (n.covering_rule) {
    ordered_json z = ordered_json::array();
    for (int s : n.z) z.push_back(c.states->name(s));
    j["Z"] = z;
  }
  ordered_json r = ordered_json::array();
  for (auto [a, b] : n.r_pairs) {
    r.push_back(ordered_json::array({c.states->name(a), c.states->name(b)}));
  }
  j["R"] = r;
  j["witness"] = witness_json(n.witness);
  ordered_json kids = ordered_json::array();
  for (const ProofPtr& ch : n.children) kids.push_back(node_json(c, *ch, emitted));
  j["children"] = kids;
  return j;
}

}  // namespace

std::string render_text(const Coalgebra& c, const ProofNode& root) {
  std::ostringstream out;
  std::set<std::pair<int, int>> emitted;
  render_node(out, c, root, 0, emitted);
  return out.str();
}

std::string render_json(const Coalgebra& c, const ProofNode& root) {
  ordered_json j;
  j["system_hash"] = system_hash(c);
  std::set<std::pair<int, int>> emitted;
  j["root"] = node_json(c, root, emitted);
  return j.dump(2) + "\n";
}

namespace {

[[noreturn]] void proof_error(const std::string& msg) {
  throw Error(ErrorKind::Proof, "malformed proof: " + msg);
}

int state_index(const Coalgebra& c, const ordered_json& j, const char* where) {
  if (!j.is_string()) proof_error(std::string(where) + " must be a state name");
  auto i = c.states->find(j.get<std::string>());
  if (!i) proof_error("unknown state '" + j.get<std::string>() + "' in " + where);
  return *i;
}

Witness parse_witness(const ordered_json& j) {
  if (!j.is_object()) proof_error("witness must be an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) proof_error("witness needs a kind");
  Witness w;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "atoms") {
    w.kind = Witness::Kind::Atoms;
  } else if (kind == "state_classes") {
    w.kind = Witness::Kind::StateClasses;
  } else if (kind == "side") {
    w.kind = Witness::Kind::Side;
  } else if (kind == "dist_class") {
    w.kind = Witness::Kind::DistClass;
  } else if (kind == "set_member") {
    w.kind = Witness::Kind::SetMember;
  } else {
    proof_error("unknown witness kind '" + kind + "'");
  }
  if (!j.contains("path") || !j.at("path").is_array()) proof_error("witness needs a path array");
  for (const auto& step : j.at("path")) {
    if (step.is_string()) {
      std::string s = step.get<std::string>();
      if (s == "fst") {
        w.path.push_back({Witness::Step::Kind::Fst, ""});
      } else if (s == "snd") {
        w.path.push_back({Witness::Step::Kind::Snd, ""});
      } else if (s == "inl") {
        w.path.push_back({Witness::Step::Kind::Inl, ""});
      } else if (s == "inr") {
        w.path.push_back({Witness::Step::Kind::Inr, ""});
      } else {
        proof_error("unknown path step '" + s + "'");
      }
    } else if (step.is_object() && step.contains("at") && step.at("at").is_string()) {
      w.path.push_back({Witness::Step::Kind::At, step.at("at").get<std::string>()});
    } else {
      proof_error("unreadable path step");
    }
  }
  auto str_field = [&](const char* name) {
    if (!j.contains(name) || !j.at(name).is_string()) {
      proof_error(std::string("witness needs a '") + name + "' string");
    }
    return j.at(name).get<std::string>();
  };
  auto mass_field = [&](const char* name) {
    auto r = parse_rational_string(str_field(name));
    if (!r) proof_error(std::string("witness field '") + name + "' is not a rational");
    return *r;
  };
  switch (w.kind) {
    case Witness::Kind::Atoms:
    case Witness::Kind::StateClasses:
    case Witness::Kind::Side:
      w.left = str_field("left");
      w.right = str_field("right");
      break;
    case Witness::Kind::DistClass:
      w.class_repr = str_field("class");
      w.left_mass = mass_field("left");
      w.right_mass = mass_field("right");
      break;
    case Witness::Kind::SetMember: {
      w.class_repr = str_field("element");
      std::string side = str_field("side");
      if (side != "left" && side != "right") proof_error("witness side must be left or right");
      w.element_on_left = side == "left";
      break;
    }
  }
  return w;
}

ProofPtr parse_node(const Coalgebra& c, const ordered_json& j,
                    std::map<std::pair<int, int>, ProofPtr>& completed) {
  if (!j.is_object()) proof_error("node must be an object");
  if (j.contains("ref")) {
    const auto& r = j.at("ref");
    if (!r.is_array() || r.size() != 2) proof_error("ref must name a pair of states");
    int a = state_index(c, r[0], "ref");
    int b = state_index(c, r[1], "ref");
    auto it = completed.find(canonical(a, b));
    if (it == completed.end()) {
      // Also what a reference cycle would look like: nothing registers
      // before its whole subtree has parsed.
      proof_error("reference to a goal with no earlier proof: (" + c.states->name(a) + ", " +
                  c.states->name(b) + ")");
    }
    return it->second;
  }
  if (!j.contains("goal") || !j.at("goal").is_array() || j.at("goal").size() != 2) {
    proof_error("node needs a two-state goal");
  }
  auto node = std::make_shared<ProofNode>();
  node->x = state_index(c, j.at("goal")[0], "goal");
  node->y = state_index(c, j.at("goal")[1], "goal");
  if (!j.contains("rule") || !j.at("rule").is_string()) proof_error("node needs a rule");
  std::string rule = j.at("rule").get<std::string>();
  if (rule == "covering") {
    node->covering_rule = true;
  } else if (rule == "basic") {
    node->covering_rule = false;
  } else {
    proof_error("unknown rule '" + rule + "'");
  }
  if (node->covering_rule) {
    if (!j.contains("Z") || !j.at("Z").is_array()) proof_error("covering node needs Z");
    for (const auto& s : j.at("Z")) node->z.push_back(state_index(c, s, "Z"));
    std::sort(node->z.begin(), node->z.end());
    if (std::adjacent_find(node->z.begin(), node->z.end()) != node->z.end()) {
      proof_error("duplicate state in Z");
    }
  } else if (j.contains("Z")) {
    proof_error("basic rule does not take Z");
  }
  if (!j.contains("R") || !j.at("R").is_array()) proof_error("node needs an R array");
  for (const auto& p : j.at("R")) {
    if (!p.is_array() || p.size() != 2) proof_error("R entries must be pairs of states");
    int a = state_index(c, p[0], "R");
    int b = state_index(c, p[1], "R");
    if (a == b) proof_error("reflexive pair in R");
    node->r_pairs.push_back(canonical(a, b));
  }
  std::sort(node->r_pairs.begin(), node->r_pairs.end());
  if (std::adjacent_find(node->r_pairs.begin(), node->r_pairs.end()) != node->r_pairs.end()) {
    proof_error("duplicate pair in R");
  }
  if (!j.contains("witness")) proof_error("node needs a witness");
  node->witness = parse_witness(j.at("witness"));
  if (!j.contains("children") || !j.at("children").is_array()) {
    proof_error("node needs a children array");
  }
  for (const auto& ch : j.at("children")) {
    node->children.push_back(parse_node(c, ch, completed));
  }
  completed.emplace(canonical(node->x, node->y), node);
  return node;
}

}  // namespace

ParsedProof parse_proof_json(const Coalgebra& c, const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    proof_error(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("system_hash") || !j.at("system_hash").is_string()) {
    proof_error("document needs a system_hash string");
  }
  if (!j.contains("root")) proof_error("document needs a root node");
  ParsedProof out;
  out.stored_hash = j.at("system_hash").get<std::string>();
  std::map<std::pair<int, int>, ProofPtr> completed;
  out.root = parse_node(c, j.at("root"), completed);
  return out;
}

}  // namespace apart

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

#ifndef APART_PROOF_HPP_
#define APART_PROOF_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coalgebra.hpp"
#include "reca.hpp"

namespace apart {

struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

// One derivation step: the goal pair is apart because the behaviours differ
// once the pairs in R are assumed apart, and each pair in R is discharged by
// a child node.  Shared subgoals may share one node (the tree is really a
// DAG); serialization keeps one definition and references it afterwards.
struct ProofNode {
  int x = 0, y = 0;
  bool covering_rule = false;
  std::vector<int> z;                        // sorted; meaningful for covering only
  std::vector<std::pair<int, int>> r_pairs;  // canonical (a < b), sorted
  Witness witness;
  std::vector<ProofPtr> children;            // same order as r_pairs
};

enum class ProofStyle { Covering, Basic };

struct SynthesisResult {
  ProofPtr root;                     // null when the pair is not apart
  std::vector<int> not_apart_class;  // the behavioural class of x in that case
};

// Derive a proof for (x, y), or report the equivalence class that refutes
// apartness.  Covering style keeps each node's assumptions inside a one-step
// covering of its goal; basic style quantifies over the whole state space.
// Either way, every node's R is greedily pruned to a locally minimal set.
SynthesisResult synthesize(const Coalgebra& c, int x, int y, ProofStyle style);

struct CheckResult {
  bool valid = true;
  std::string node_path;  // "x # y > x1 # x2" down to the failing node
  std::string reason;
};

// Re-derive every node bottom-up and re-evaluate recorded witnesses.  A
// witness passes if it truthfully describes a difference, not necessarily
// the one synthesis would pick.
CheckResult check_proof(const Coalgebra& c, const ProofNode& root);

std::string render_text(const Coalgebra& c, const ProofNode& root);
std::string render_json(const Coalgebra& c, const ProofNode& root);

struct ParsedProof {
  ProofPtr root;
  std::string stored_hash;
};

// Strict structural parse; malformed documents raise Proof errors.  Hash
// agreement with the system is the caller's job (after semantic checks, so
// tampering reports point at the real defect first).
ParsedProof parse_proof_json(const Coalgebra& c, const std::string& json_text);

}  // namespace apart

#endif  // APART_PROOF_HPP_

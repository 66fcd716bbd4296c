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

#include "apart/apart.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "cobisim.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "parser.hpp"
#include "proof.hpp"

using namespace apart;

struct apart_system {
  Coalgebra c;
};

namespace {

thread_local std::string g_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

apart_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage: return APART_ERR_USAGE;
    case ErrorKind::Parse:
    case ErrorKind::Shape:
    case ErrorKind::Fragment: return APART_ERR_INPUT;
    case ErrorKind::Proof: return APART_INVALID_PROOF;
    case ErrorKind::Internal: return APART_ERR_INTERNAL;
  }
  return APART_ERR_INTERNAL;
}

template <typename F>
apart_status guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    g_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    g_error = e.what();
    return APART_ERR_INTERNAL;
  }
}

apart_status need(bool ok, const char* what) {
  if (ok) return APART_OK;
  throw Error(ErrorKind::Usage, std::string("missing argument: ") + what);
}

std::string class_text(const Coalgebra& c, const std::vector<int>& block) {
  std::string out = "{";
  for (size_t i = 0; i < block.size(); ++i) {
    if (i) out += ", ";
    out += c.states->name(block[i]);
  }
  return out + "}";
}

std::string pair_text(const Coalgebra& c, int a, int b) {
  return "(" + c.states->name(a) + ", " + c.states->name(b) + ")";
}

}  // namespace

extern "C" {

apart_status apart_system_parse(const char* text, apart_system** out) {
  return guarded([&] {
    need(text != nullptr, "text");
    need(out != nullptr, "out");
    auto* sys = new apart_system{parse_system(text)};
    *out = sys;
    return APART_OK;
  });
}

void apart_system_free(apart_system* sys) { delete sys; }

void apart_string_free(char* s) { std::free(s); }

const char* apart_last_error(void) { return g_error.c_str(); }

apart_status apart_system_print(const apart_system* sys, char** out) {
  return guarded([&] {
    need(sys != nullptr, "sys");
    need(out != nullptr, "out");
    *out = dup_string(print_system(sys->c));
    return APART_OK;
  });
}

apart_status apart_system_hash(const apart_system* sys, char** out) {
  return guarded([&] {
    need(sys != nullptr, "sys");
    need(out != nullptr, "out");
    *out = dup_string(system_hash(sys->c));
    return APART_OK;
  });
}

int apart_system_is_fragment(const apart_system* sys) {
  return sys != nullptr && !sys->c.complete() ? 1 : 0;
}

apart_status apart_relation_text(const apart_system* sys, char** out) {
  return guarded([&] {
    need(sys != nullptr, "sys");
    need(out != nullptr, "out");
    const Coalgebra& c = sys->c;
    Partition eq = behavioural_equivalence(c);
    Relation apart_rel = behavioural_apartness(c);
    std::ostringstream text;
    text << "classes:\n";
    for (const auto& block : eq.blocks()) {
      text << "  " << class_text(c, block) << "\n";
    }
    auto pairs = apart_rel.unordered_pairs();
    text << "apart pairs (" << pairs.size() << "):\n";
    for (auto [a, b] : pairs) {
      text << "  " << pair_text(c, a, b) << "\n";
    }
    *out = dup_string(text.str());
    return APART_OK;
  });
}

apart_status apart_check_pair(const apart_system* sys, const char* x, const char* y, char** out) {
  return guarded([&]() -> apart_status {
    need(sys != nullptr, "sys");
    need(x != nullptr, "x");
    need(y != nullptr, "y");
    need(out != nullptr, "out");
    const Coalgebra& c = sys->c;
    int xi = c.states->index_of(x);
    int yi = c.states->index_of(y);
    Relation apart_rel = behavioural_apartness(c);
    if (xi != yi && apart_rel.contains(xi, yi)) {
      *out = dup_string("apart");
      return APART_OK;
    }
    Partition eq = equivalence_closure(apart_rel.complement());
    *out = dup_string("equivalent (class: " +
                      class_text(c, eq.blocks()[static_cast<size_t>(eq.block_of(xi))]) + ")");
    return APART_NOT_APART;
  });
}

apart_status apart_prove(const apart_system* sys, const char* x, const char* y, apart_style style,
                         apart_format format, char** out) {
  return guarded([&]() -> apart_status {
    need(sys != nullptr, "sys");
    need(x != nullptr, "x");
    need(y != nullptr, "y");
    need(out != nullptr, "out");
    const Coalgebra& c = sys->c;
    int xi = c.states->index_of(x);
    int yi = c.states->index_of(y);
    SynthesisResult r = synthesize(
        c, xi, yi, style == APART_STYLE_BASIC ? ProofStyle::Basic : ProofStyle::Covering);
    if (!r.root) {
      *out = dup_string("equivalent (class: " + class_text(c, r.not_apart_class) + ")");
      return APART_NOT_APART;
    }
    *out = dup_string(format == APART_FORMAT_JSON ? render_json(c, *r.root)
                                                  : render_text(c, *r.root));
    return APART_OK;
  });
}

apart_status apart_verify(const apart_system* sys, const char* proof_json, char** out) {
  return guarded([&]() -> apart_status {
    need(sys != nullptr, "sys");
    need(proof_json != nullptr, "proof_json");
    need(out != nullptr, "out");
    const Coalgebra& c = sys->c;
    ParsedProof p = parse_proof_json(c, proof_json);
    CheckResult r = check_proof(c, *p.root);
    if (!r.valid) {
      *out = dup_string("invalid at " + r.node_path + ": " + r.reason);
      return APART_INVALID_PROOF;
    }
    // The derivation itself holds water; only now compare the hash, so a
    // doctored system is reported by the step it breaks when it breaks one.
    if (p.stored_hash != system_hash(c)) {
      *out = dup_string("invalid: system hash mismatch (recorded " + p.stored_hash +
                        ", this system is " + system_hash(c) + ")");
      return APART_INVALID_PROOF;
    }
    *out = dup_string("valid");
    return APART_OK;
  });
}

apart_status apart_tower_text(const apart_system* sys, int max_levels, char** out) {
  return guarded([&] {
    need(sys != nullptr, "sys");
    need(out != nullptr, "out");
    const Coalgebra& c = sys->c;
    Tower t = apartness_tower(c, max_levels);
    std::ostringstream text;
    for (size_t n = 1; n < t.levels.size(); ++n) {
      text << "level " << n << ":";
      Relation fresh = t.levels[n].intersect(t.levels[n - 1].complement());
      bool first = true;
      for (auto [a, b] : fresh.unordered_pairs()) {
        text << (first ? " " : ", ") << pair_text(c, a, b);
        first = false;
      }
      text << "\n";
    }
    if (t.stabilized) {
      text << "stable after " << t.levels.size() - 1 << " levels\n";
    } else {
      text << "cut off after " << t.levels.size() - 1 << " levels\n";
    }
    *out = dup_string(text.str());
    return APART_OK;
  });
}

apart_status apart_cobisim_text(const apart_system* sys, char** out) {
  return guarded([&]() -> apart_status {
    need(sys != nullptr, "sys");
    need(out != nullptr, "out");
    const Coalgebra& c = sys->c;
    Relation via_couplings = cobisim_apart(c);
    Relation via_behaviour = behavioural_apartness(c);
    if (via_couplings == via_behaviour) {
      *out = dup_string("agree");
      return APART_OK;
    }
    std::ostringstream text;
    text << "disagree\n";
    Relation only_couplings = via_couplings.intersect(via_behaviour.complement());
    Relation only_behaviour = via_behaviour.intersect(via_couplings.complement());
    for (auto [a, b] : only_couplings.unordered_pairs()) {
      text << "only couplings: " << pair_text(c, a, b) << "\n";
    }
    for (auto [a, b] : only_behaviour.unordered_pairs()) {
      text << "only behaviour: " << pair_text(c, a, b) << "\n";
    }
    *out = dup_string(text.str());
    return APART_NOT_APART;
  });
}

}  // extern "C"

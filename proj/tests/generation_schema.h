// Copyright 2026 The Amrprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Structural checks on generated entries, computed from the sentence text
// and the graph without going through the grammar.

#ifndef AMRPROBE_TESTS_GENERATION_SCHEMA_H_
#define AMRPROBE_TESTS_GENERATION_SCHEMA_H_

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "amrprobe/amr/graph.h"
#include "amrprobe/amr/penman.h"
#include "amrprobe/generation/suite.h"

namespace amrprobe {
namespace testing {

inline std::vector<std::string> SentenceWords(const std::string &sentence) {
  std::string text;
  for (char c : sentence) {
    text += (c == ',' || c == '.') ? ' ' : static_cast<char>(std::tolower(c));
  }
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline int CountWord(const std::vector<std::string> &words,
                     const std::string &w) {
  return std::count(words.begin(), words.end(), w);
}

struct GraphView {
  AmrGraph g;
  std::map<std::string, int> incoming;

  explicit GraphView(const AmrGraph &graph) : g(Normalize(graph)) {
    for (const Instance &i : g.instances()) incoming[i.var] = 0;
    for (const Relation &r : g.relations()) ++incoming[r.target];
  }

  std::string Target(const std::string &source, const std::string &role) const {
    for (const Relation &r : g.relations()) {
      if (r.source == source && r.role == role) return r.target;
    }
    return "";
  }

  std::string Source(const std::string &role, const std::string &target) const {
    for (const Relation &r : g.relations()) {
      if (r.target == target && r.role == role) return r.source;
    }
    return "";
  }

  std::vector<std::string> Reentrant() const {
    std::vector<std::string> out;
    for (const auto &[var, n] : incoming) {
      if (n > 1) out.push_back(var);
    }
    return out;
  }

  int Excess() const {
    int n = 0;
    for (const auto &[var, k] : incoming) n += std::max(0, k - 1);
    return n;
  }

  // Predicates reached from `var` by following ARG1 downwards.
  std::vector<std::string> Arg1Chain(std::string var) const {
    std::vector<std::string> out;
    while (!var.empty() && g.ConceptOf(var).has_sense()) {
      out.push_back(var);
      var = Target(var, "ARG1");
    }
    return out;
  }

  // Predicates reached from `var` by following ARG1 upwards.
  std::vector<std::string> Arg1ChainUp(std::string var) const {
    std::vector<std::string> out;
    while (!var.empty()) {
      out.push_back(var);
      var = Source("ARG1", var);
    }
    return out;
  }
};

inline const std::map<std::string, int> &AdjectiveRanks() {
  static const std::map<std::string, int> kRanks = {
      {"strange", 1}, {"fantastic", 1}, {"big", 2},    {"small", 2},
      {"antique", 3}, {"new", 3},       {"square", 4}, {"round", 4},
      {"dark", 5},    {"pale", 5},      {"wooden", 6}};
  return kRanks;
}

// Empty when `e` satisfies the structure its category promises.
inline std::string SchemaViolation(const std::string &category,
                                   const GeneratedEntry &e) {
  if (!e.entry.graph) return "no graph";
  const AmrGraph &graph = *e.entry.graph;
  if (!IsExactMatch(ParsePenman(SerializePenman(graph)), graph)) {
    return "graph does not survive a Penman round trip";
  }
  GraphView v(graph);
  std::vector<std::string> words = SentenceWords(e.entry.sentence);
  const int d = e.depth;
  auto fail = [&](const std::string &what) {
    return what + " in '" + e.entry.sentence + "' " + SerializePenman(graph);
  };
  auto binding = [&](const std::string &name) {
    auto it = e.bindings.find(name);
    return it == e.bindings.end() ? std::string() : it->second;
  };

  if (category == "cp_recursion") {
    if (CountWord(words, "that") != d) return fail("wrong number of CPs");
    if (v.Excess() != 0) return fail("accidental reentrancy");
    if (static_cast<int>(v.Arg1Chain(v.g.root()).size()) != d + 1) {
      return fail("ARG1 chain is not d+1 long");
    }
    if (static_cast<int>(v.g.size()) != 2 * (d + 1)) {
      return fail("extra nodes");
    }
  } else if (category == "multiple_adjectives") {
    if (v.Excess() != 0) return fail("accidental reentrancy");
    int mods = 0;
    for (const Relation &r : v.g.relations()) {
      if (r.source != v.g.root() || r.role != "mod") return fail("stray edge");
      ++mods;
    }
    if (mods != d) return fail("wrong number of modifiers");
    int last = 0, seen = 0;
    for (const std::string &w : words) {
      auto it = AdjectiveRanks().find(w);
      if (it == AdjectiveRanks().end()) continue;
      if (it->second <= last) return fail("adjectives out of order");
      last = it->second;
      ++seen;
    }
    if (seen != d) return fail("adjective count differs from depth");
  } else if (category == "long_lists") {
    if (v.Excess() != 0) return fail("accidental reentrancy");
    std::string conj = d > 1 ? v.Target(v.g.root(), "ARG1") : "";
    if (d > 1 && (conj.empty() || v.g.ConceptOf(conj).full != "and")) {
      return fail("no coordination node");
    }
    std::map<std::string, int> ops;
    for (const Relation &r : v.g.relations()) {
      if (r.role.rfind("op", 0) == 0) {
        if (r.source != conj) return fail("op edge off the and node");
        ++ops[r.role];
      }
    }
    if (static_cast<int>(ops.size()) != (d > 1 ? d : 0)) {
      return fail("wrong number of conjuncts");
    }
    for (int i = 1; d > 1 && i <= d; ++i) {
      if (ops["op" + std::to_string(i)] != 1) {
        return fail("op" + std::to_string(i) + " not present exactly once");
      }
    }
    if (d > 1 && CountWord(words, "and") != 1) return fail("missing 'and'");
  } else if (category == "centre_embedding") {
    if (CountWord(words, "who") != d) return fail("wrong number of RCs");
    std::vector<std::string> re = v.Reentrant();
    if (static_cast<int>(re.size()) != d || v.Excess() != d) {
      return fail("expected one reentrancy per relative clause");
    }
    for (const std::string &var : re) {
      if (v.Source("ARG1", var).empty()) return fail("RC gap is not ARG1");
    }
  } else if (category == "nested_control_and_coordination") {
    int expected = CountWord(words, "to") + CountWord(words, "and");
    if (expected != d) return fail("depth differs from the sentence");
    if (v.Excess() != d) return fail("expected one reentrancy per level");
  } else if (category == "cp_recursion_plus_coreference") {
    std::string ant = binding("ANT");
    if (ant.empty()) return fail("no antecedent binding");
    std::vector<std::string> re = v.Reentrant();
    if (re != std::vector<std::string>{ant} || v.incoming.at(ant) != 2) {
      return fail("reentrancy is not exactly the antecedent");
    }
    std::vector<std::string> chain = v.Arg1Chain(v.g.root());
    int first = -1, second = -1;
    for (size_t i = 0; i < chain.size(); ++i) {
      bool mentions = v.Target(chain[i], "ARG0") == ant ||
                      v.Target(chain[i], "ARG1") == ant;
      if (mentions && first < 0) {
        first = i;
      } else if (mentions) {
        second = i;
      }
    }
    if (first < 0 || second - first != d) return fail("wrong distance");
    if (CountWord(words, "that") + 1 != static_cast<int>(chain.size())) {
      return fail("CP count differs from the chain");
    }
  } else if (category == "cp_recursion_plus_rc" ||
             category == "cp_recursion_plus_rc_plus_coreference") {
    bool coref = category == "cp_recursion_plus_rc_plus_coreference";
    std::string head = binding("HEAD");
    std::set<std::string> want = {head};
    if (coref) want.insert(binding("ANT"));
    std::vector<std::string> re = v.Reentrant();
    if (std::set<std::string>(re.begin(), re.end()) != want ||
        v.Excess() != static_cast<int>(want.size())) {
      return fail("reentrancies are not exactly the bound nodes");
    }
    // The innermost RC verb has the head as ARG0 and is not the root.
    std::string inner;
    for (const Relation &r : v.g.relations()) {
      if (r.target == head && r.role == "ARG0" && r.source != v.g.root()) {
        inner = r.source;
      }
    }
    if (inner.empty()) return fail("no gap");
    if (static_cast<int>(v.Arg1ChainUp(inner).size()) != d + 1) {
      return fail("RC chain is not d+1 long");
    }
    if (coref) {
      std::set<std::string> verbs = {v.g.ConceptOf(v.g.root()).full,
                                     v.g.ConceptOf(inner).full};
      if (verbs != std::set<std::string>{"hate-01", "like-01"}) {
        return fail("like/hate not paired");
      }
      if (v.Target(v.g.root(), "ARG1") != binding("ANT")) {
        return fail("pronoun does not resolve to the object");
      }
    }
  } else if (category == "pp_attachment") {
    if (e.marked.size() != 1) return fail("no target edge");
  } else {
    return "no schema for " + category;
  }
  return "";
}

}  // namespace testing
}  // namespace amrprobe

#endif  // AMRPROBE_TESTS_GENERATION_SCHEMA_H_

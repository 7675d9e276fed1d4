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


#ifndef AMRPROBE_GENERATION_SAMPLER_H_
#define AMRPROBE_GENERATION_SAMPLER_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "amrprobe/amr/graph.h"
#include "amrprobe/generation/grammar.h"
#include "amrprobe/util/random.h"

namespace amrprobe {

// Feature values requested of the start symbol, e.g. {{"d", "3"}}.
using FeatureRequest = std::vector<std::pair<std::string, std::string>>;

struct Derivation {
  std::string sentence;
  AmrGraph graph;  // canonical variable names
  // Global bindings that hold a node, by name, as variables of `graph`.
  std::map<std::string, std::string> bindings;
  // Edges marked with "!" in templates, in normalized direction.
  std::vector<Relation> marked;
  // Lexical rules used, as indices into Grammar::rules().
  std::vector<int> lexical_rules;
};

class Sampler {
 public:
  // Rules carrying a class listed in `no_repeat` may not be used twice with
  // the same lexical key within one derivation.
  Sampler(const Grammar &grammar, std::vector<std::string> no_repeat = {"noun"},
          uint64_t step_budget = 2000000);

  // Random derivation, rules drawn by weight. Throws GenerationError when
  // the search finds no derivation or exhausts the step budget.
  Derivation Sample(const std::string &start, const FeatureRequest &request,
                    Rng &rng) const;

  // Like Sample, but prefers rules that reach lexical keys outside
  // `covered` (see SyncRule::LexicalKey).
  Derivation SampleCovering(const std::string &start,
                            const FeatureRequest &request,
                            const std::set<std::string> &covered,
                            Rng &rng) const;

  // Every derivation in rule order, at most `limit`.
  std::vector<Derivation> Enumerate(const std::string &start,
                                    const FeatureRequest &request,
                                    size_t limit = 100000) const;

  // Keys of the lexical rules reachable from `start`, ignoring features.
  std::set<std::string> ReachableKeys(const std::string &start) const;

  const Grammar &grammar() const { return grammar_; }

 private:
  friend class Search;

  const Grammar &grammar_;
  std::set<std::string> no_repeat_;
  uint64_t step_budget_;
  std::vector<std::set<int>> reach_;  // lexical rules, per rule
  std::vector<std::set<std::string>> reach_keys_;
};

// Joins tokens into a sentence: no space before punctuation, "a" becomes
// "an" before a vowel, first letter capitalized.
std::string Realize(const std::vector<std::string> &tokens);

}  // namespace amrprobe

#endif  // AMRPROBE_GENERATION_SAMPLER_H_

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


// Brute-force reference implementations shared by the unit and acceptance
// tests. They use nothing from the library beyond the graph model.

#ifndef AMRPROBE_TESTS_ORACLES_H_
#define AMRPROBE_TESTS_ORACLES_H_

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "amrprobe/amr/graph.h"

namespace amrprobe {
namespace testing {

// Brute force: try every bijection between the variable sets.
inline bool BruteForceExactMatch(const AmrGraph &a, const AmrGraph &b) {
  if (a.size() != b.size()) return false;
  using Triple = std::tuple<std::string, std::string, std::string>;
  auto triples = [](const AmrGraph &g, const std::vector<int> &perm) {
    std::set<Triple> out;
    auto name = [&](const std::string &v) {
      return std::to_string(perm[g.IndexOf(v)]);
    };
    for (const Instance &i : g.instances()) {
      out.insert({name(i.var), "instance", i.label.full});
    }
    for (const Relation &r : g.relations()) {
      out.insert({name(r.source), r.role, "@" + name(r.target)});
    }
    for (const Attribute &x : g.attributes()) {
      out.insert({name(x.source), x.role, x.value.ToPenman()});
    }
    out.insert({name(g.root()), "TOP", ""});
    return out;
  };
  std::vector<int> identity(a.size());
  for (size_t i = 0; i < identity.size(); ++i) identity[i] = i;
  std::set<Triple> target = triples(a, identity);
  std::vector<int> perm = identity;
  do {
    if (triples(b, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Independent enumeration over every partial injection, scoring by explicit
// triple-set intersection.
inline int BruteForceMatched(const AmrGraph &pred, const AmrGraph &gold) {
  AmrGraph p = Normalize(pred), g = Normalize(gold);
  using Triple = std::tuple<std::string, std::string, std::string>;
  auto gold_triples = [&]() {
    std::set<Triple> out;
    for (const Instance &i : g.instances()) {
      out.insert({"instance", i.var, i.label.full});
    }
    for (const Attribute &a : g.attributes()) {
      out.insert({a.role, a.source, a.value.ToPenman()});
    }
    for (const Relation &r : g.relations()) {
      out.insert({r.role, r.source, "@" + r.target});
    }
    out.insert({"TOP", g.root(), g.ConceptOf(g.root()).full});
    return out;
  }();
  int best = 0;
  std::vector<int> map(p.size(), -1);
  std::vector<bool> used(g.size(), false);
  auto score = [&]() {
    auto name = [&](const std::string &v) -> std::string {
      int m = map[p.IndexOf(v)];
      return m < 0 ? "?" + v : g.instances()[m].var;
    };
    std::set<Triple> mine;
    for (const Instance &i : p.instances()) {
      mine.insert({"instance", name(i.var), i.label.full});
    }
    for (const Attribute &a : p.attributes()) {
      mine.insert({a.role, name(a.source), a.value.ToPenman()});
    }
    for (const Relation &r : p.relations()) {
      mine.insert({r.role, name(r.source), "@" + name(r.target)});
    }
    mine.insert({"TOP", name(p.root()), p.ConceptOf(p.root()).full});
    int n = 0;
    for (const Triple &t : mine) n += gold_triples.count(t);
    return n;
  };
  std::function<void(size_t)> visit = [&](size_t i) {
    if (i == map.size()) {
      best = std::max(best, score());
      return;
    }
    map[i] = -1;
    visit(i + 1);
    for (size_t j = 0; j < used.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      map[i] = j;
      visit(i + 1);
      map[i] = -1;
      used[j] = false;
    }
  };
  visit(0);
  return best;
}

}  // namespace testing
}  // namespace amrprobe

#endif  // AMRPROBE_TESTS_ORACLES_H_

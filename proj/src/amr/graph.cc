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


#include "amrprobe/amr/graph.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <set>
#include <tuple>
#include <utility>

namespace amrprobe {

namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

bool ValidToken(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

ConceptLabel ConceptLabel::Parse(std::string_view token) {
  ConceptLabel label;
  label.full = std::string(token);
  size_t n = token.size();
  if (n >= 4 && token[n - 3] == '-' && IsDigit(token[n - 2]) &&
      IsDigit(token[n - 1])) {
    label.lemma = std::string(token.substr(0, n - 3));
    label.sense = std::string(token.substr(n - 2));
  } else {
    label.lemma = label.full;
  }
  return label;
}

ConstantValue ConstantValue::FromBareToken(std::string_view token) {
  static const std::regex kNumber(
      R"([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)");
  ConstantValue value;
  value.text = std::string(token);
  value.kind = std::regex_match(value.text, kNumber) ? Kind::kNumber
                                                     : Kind::kSymbol;
  return value;
}

ConstantValue ConstantValue::String(std::string_view text) {
  ConstantValue value;
  value.kind = Kind::kString;
  value.text = std::string(text);
  return value;
}

std::string ConstantValue::ToPenman() const {
  if (kind != Kind::kString) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

AmrGraph::AmrGraph(std::string root, std::vector<Instance> instances,
                   std::vector<Relation> relations,
                   std::vector<Attribute> attributes)
    : root_(std::move(root)),
      instances_(std::move(instances)),
      relations_(std::move(relations)),
      attributes_(std::move(attributes)) {
  if (instances_.empty()) throw AmrError("graph has no instances");
  for (size_t i = 0; i < instances_.size(); ++i) {
    const Instance &inst = instances_[i];
    if (!ValidToken(inst.var)) {
      throw AmrError("invalid variable name '" + inst.var + "'");
    }
    if (!ValidToken(inst.label.full)) {
      throw AmrError("invalid concept for variable " + inst.var);
    }
    if (!index_.emplace(inst.var, static_cast<int>(i)).second) {
      throw AmrError("duplicate instance declaration for variable " +
                     inst.var);
    }
  }
  if (!index_.count(root_)) throw AmrError("undeclared root " + root_);

  // Undirected reachability from the root.
  std::vector<std::vector<int>> adjacent(instances_.size());
  for (const Relation &r : relations_) {
    if (!ValidToken(r.role)) throw AmrError("invalid role '" + r.role + "'");
    auto s = index_.find(r.source);
    auto t = index_.find(r.target);
    if (s == index_.end()) throw AmrError("undeclared variable " + r.source);
    if (t == index_.end()) throw AmrError("undeclared variable " + r.target);
    adjacent[s->second].push_back(t->second);
    adjacent[t->second].push_back(s->second);
  }
  for (const Attribute &a : attributes_) {
    if (!ValidToken(a.role)) throw AmrError("invalid role '" + a.role + "'");
    if (!index_.count(a.source)) {
      throw AmrError("undeclared variable " + a.source);
    }
  }
  std::vector<bool> seen(instances_.size(), false);
  std::vector<int> stack = {index_[root_]};
  seen[stack.back()] = true;
  size_t reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adjacent[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != instances_.size()) throw AmrError("disconnected graph");
}

bool AmrGraph::HasVariable(std::string_view var) const {
  return index_.count(std::string(var)) > 0;
}

int AmrGraph::IndexOf(std::string_view var) const {
  auto it = index_.find(std::string(var));
  return it == index_.end() ? -1 : it->second;
}

const ConceptLabel &AmrGraph::ConceptOf(std::string_view var) const {
  int i = IndexOf(var);
  if (i < 0) throw AmrError("unknown variable " + std::string(var));
  return instances_[i].label;
}

std::vector<int> AmrGraph::IncomingCounts() const {
  std::vector<int> counts(instances_.size(), 0);
  for (const Relation &r : relations_) ++counts[IndexOf(r.target)];
  return counts;
}

AmrGraph Normalize(const AmrGraph &graph, const NormalizeOptions &options) {
  if (graph.empty()) return graph;
  std::vector<Relation> relations;
  relations.reserve(graph.relations().size());
  for (const Relation &r : graph.relations()) {
    const std::string &role = r.role;
    bool inverted = role.size() > 3 &&
                    role.compare(role.size() - 3, 3, "-of") == 0 &&
                    std::find(options.keep_of_roles.begin(),
                              options.keep_of_roles.end(),
                              role) == options.keep_of_roles.end();
    if (inverted) {
      relations.push_back({r.target, role.substr(0, role.size() - 3),
                           r.source});
    } else {
      relations.push_back(r);
    }
  }
  return AmrGraph(graph.root(), graph.instances(), std::move(relations),
                  graph.attributes());
}

namespace {

// Per-variable data used to prune the exact-match search.
struct MatchView {
  explicit MatchView(const AmrGraph &g) : graph(g) {
    int n = g.size();
    attrs.resize(n);
    out_degree.assign(n, 0);
    in_degree.assign(n, 0);
    neighbours.resize(n);
    for (const Attribute &a : g.attributes()) {
      attrs[g.IndexOf(a.source)].insert({a.role, a.value});
    }
    for (const Relation &r : g.relations()) {
      int s = g.IndexOf(r.source);
      int t = g.IndexOf(r.target);
      if (rels.insert({s, r.role, t}).second) {
        ++out_degree[s];
        ++in_degree[t];
        neighbours[s].push_back(t);
        neighbours[t].push_back(s);
      }
    }
    for (const auto &set : attrs) attr_count += set.size();
  }

  const AmrGraph &graph;
  std::vector<std::set<std::pair<std::string, ConstantValue>>> attrs;
  std::set<std::tuple<int, std::string, int>> rels;
  std::vector<int> out_degree, in_degree;
  std::vector<std::vector<int>> neighbours;
  size_t attr_count = 0;
};

bool Compatible(const MatchView &a, int i, const MatchView &b, int j) {
  return a.graph.instances()[i].label.full ==
             b.graph.instances()[j].label.full &&
         a.out_degree[i] == b.out_degree[j] &&
         a.in_degree[i] == b.in_degree[j] && a.attrs[i] == b.attrs[j];
}

bool Extend(const MatchView &a, const MatchView &b,
            const std::vector<int> &order, size_t pos, std::vector<int> &map,
            std::vector<bool> &used,
            const std::vector<std::vector<std::pair<std::string, int>>> &out,
            const std::vector<std::vector<std::pair<std::string, int>>> &in) {
  if (pos == order.size()) return true;
  int v = order[pos];
  int n = b.graph.size();
  for (int w = 0; w < n; ++w) {
    if (used[w] || !Compatible(a, v, b, w)) continue;
    if (pos == 0 && w != b.graph.IndexOf(b.graph.root())) continue;
    map[v] = w;
    bool ok = true;
    for (const auto &[role, t] : out[v]) {
      if (map[t] >= 0 && !b.rels.count({w, role, map[t]})) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const auto &[role, s] : in[v]) {
        if (map[s] >= 0 && !b.rels.count({map[s], role, w})) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      used[w] = true;
      if (Extend(a, b, order, pos + 1, map, used, out, in)) return true;
      used[w] = false;
    }
    map[v] = -1;
  }
  return false;
}

}  // namespace

bool IsExactMatch(const AmrGraph &a, const AmrGraph &b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  if (a.size() != b.size()) return false;
  MatchView va(a), vb(b);
  if (va.rels.size() != vb.rels.size() || va.attr_count != vb.attr_count) {
    return false;
  }
  int n = a.size();
  std::vector<std::vector<std::pair<std::string, int>>> out(n), in(n);
  for (const auto &[s, role, t] : va.rels) {
    out[s].push_back({role, t});
    in[t].push_back({role, s});
  }
  // Breadth-first order from the root so each step is constrained by
  // already mapped neighbours.
  std::vector<int> order;
  std::vector<bool> queued(n, false);
  int root = a.IndexOf(a.root());
  order.push_back(root);
  queued[root] = true;
  for (size_t i = 0; i < order.size(); ++i) {
    for (int w : va.neighbours[order[i]]) {
      if (!queued[w]) {
        queued[w] = true;
        order.push_back(w);
      }
    }
  }
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  return Extend(va, vb, order, 0, map, used, out, in);
}

AmrGraph CanonicalizeVariables(const AmrGraph &graph) {
  if (graph.empty()) return graph;
  std::map<char, int> counters;
  std::unordered_map<std::string, std::string> rename;
  std::vector<Instance> instances;
  for (const Instance &inst : graph.instances()) {
    char first = inst.label.lemma.empty() ? 'x' : inst.label.lemma[0];
    first = std::tolower(static_cast<unsigned char>(first));
    if (first < 'a' || first > 'z') first = 'x';
    int k = ++counters[first];
    std::string name(1, first);
    if (k > 1) name += std::to_string(k);
    rename[inst.var] = name;
    instances.push_back({name, inst.label});
  }
  std::vector<Relation> relations;
  for (const Relation &r : graph.relations()) {
    relations.push_back({rename[r.source], r.role, rename[r.target]});
  }
  std::vector<Attribute> attributes;
  for (const Attribute &a : graph.attributes()) {
    attributes.push_back({rename[a.source], a.role, a.value});
  }
  return AmrGraph(rename[graph.root()], std::move(instances),
                  std::move(relations), std::move(attributes));
}

}  // namespace amrprobe

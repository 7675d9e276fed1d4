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


#include "amrprobe/metrics/check.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace amrprobe {
namespace {

// Returns N for roles of the form "opN", otherwise nullopt.
std::optional<int> OpIndex(std::string_view role) {
  if (role.size() < 3 || role.substr(0, 2) != "op") return std::nullopt;
  int n = 0;
  auto [ptr, ec] = std::from_chars(role.data() + 2, role.data() + role.size(),
                                   n);
  if (ec != std::errc() || ptr != role.data() + role.size()) {
    return std::nullopt;
  }
  return n;
}

bool HasLabel(const AmrGraph &g, const std::string &var,
              std::string_view label) {
  return g.ConceptOf(var).full == label;
}

class Embedder {
 public:
  Embedder(const AmrGraph &fragment, const AmrGraph &graph, bool sense)
      : f_(fragment), g_(graph), sense_(sense) {
    for (const Relation &r : g_.relations()) {
      g_rel_.insert({g_.IndexOf(r.source), r.role, g_.IndexOf(r.target)});
    }
    for (const Attribute &a : g_.attributes()) {
      g_attr_.insert({g_.IndexOf(a.source), a.role, a.value.ToPenman()});
    }
    // Undirected BFS from the fragment root fixes the assignment order so
    // that every variable after the first has an assigned neighbour.
    size_t n = f_.size();
    std::vector<std::vector<int>> adj(n);
    for (const Relation &r : f_.relations()) {
      int s = f_.IndexOf(r.source), t = f_.IndexOf(r.target);
      adj[s].push_back(t);
      adj[t].push_back(s);
    }
    std::vector<bool> seen(n, false);
    int root = f_.IndexOf(f_.root());
    order_.push_back(root);
    seen[root] = true;
    for (size_t i = 0; i < order_.size(); ++i) {
      for (int next : adj[order_[i]]) {
        if (!seen[next]) {
          seen[next] = true;
          order_.push_back(next);
        }
      }
    }
    f_attrs_.resize(n);
    for (const Attribute &a : f_.attributes()) {
      f_attrs_[f_.IndexOf(a.source)].push_back({a.role, a.value.ToPenman()});
    }
    f_rels_.resize(n);
    for (const Relation &r : f_.relations()) {
      int s = f_.IndexOf(r.source), t = f_.IndexOf(r.target);
      f_rels_[s].push_back({s, r.role, t});
      if (t != s) f_rels_[t].push_back({s, r.role, t});
    }
    map_.assign(n, -1);
    used_.assign(g_.size(), false);
  }

  bool Run() { return Assign(0); }

 private:
  using Triple = std::tuple<int, std::string, int>;

  bool Consistent(int fv) const {
    for (const auto &[role, value] : f_attrs_[fv]) {
      if (!g_attr_.count({map_[fv], role, value})) return false;
    }
    for (const Triple &t : f_rels_[fv]) {
      int s = map_[std::get<0>(t)], d = map_[std::get<2>(t)];
      if (s < 0 || d < 0) continue;
      if (!g_rel_.count({s, std::get<1>(t), d})) return false;
    }
    return true;
  }

  bool Assign(size_t pos) {
    if (pos == order_.size()) return true;
    int fv = order_[pos];
    const ConceptLabel &label = f_.instances()[fv].label;
    for (size_t gv = 0; gv < g_.size(); ++gv) {
      if (used_[gv]) continue;
      if (!LabelMatches(g_.instances()[gv].label, label.full, sense_)) {
        continue;
      }
      map_[fv] = static_cast<int>(gv);
      used_[gv] = true;
      if (Consistent(fv) && Assign(pos + 1)) return true;
      used_[gv] = false;
      map_[fv] = -1;
    }
    return false;
  }

  const AmrGraph &f_;
  const AmrGraph &g_;
  bool sense_;
  std::set<Triple> g_rel_;
  std::set<std::tuple<int, std::string, std::string>> g_attr_;
  std::vector<int> order_;
  std::vector<std::vector<std::pair<std::string, std::string>>> f_attrs_;
  std::vector<std::vector<Triple>> f_rels_;
  std::vector<int> map_;
  std::vector<bool> used_;
};

struct Conjunct {
  std::string and_var;
  int op = 0;
  AmrGraph fragment;
};

// All conjuncts of every and-instance, grouped by and-instance in instance
// order and by opN within each.
std::vector<std::vector<Conjunct>> AllConjuncts(const AmrGraph &g) {
  std::vector<std::vector<Conjunct>> out;
  for (const Instance &inst : g.instances()) {
    if (inst.label.full != "and") continue;
    std::vector<Conjunct> group;
    for (const Relation &r : g.relations()) {
      if (r.source != inst.var) continue;
      std::optional<int> op = OpIndex(r.role);
      if (!op) continue;
      group.push_back({inst.var, *op, ConjunctFragment(g, inst.var, r.target)});
    }
    std::stable_sort(group.begin(), group.end(),
                     [](const Conjunct &a, const Conjunct &b) {
                       return a.op < b.op;
                     });
    out.push_back(std::move(group));
  }
  return out;
}

bool MatchesAnyConjunct(const AmrGraph &fragment, const AmrGraph &predicted,
                        std::optional<int> op) {
  for (const Instance &inst : predicted.instances()) {
    if (inst.label.full != "and") continue;
    for (const Relation &r : predicted.relations()) {
      if (r.source != inst.var) continue;
      std::optional<int> n = OpIndex(r.role);
      if (!n || (op && *n != *op)) continue;
      if (IsExactMatch(ConjunctFragment(predicted, inst.var, r.target),
                       fragment)) {
        return true;
      }
    }
  }
  return false;
}

bool EdgeViaReification(const MetricSpec &spec, const AmrGraph &g,
                        const CheckOptions &options) {
  for (const std::string &concept_label : spec.reifications) {
    const Reification *reif =
        options.reifications->Find(spec.edge_role, concept_label);
    if (reif == nullptr) {
      throw MetricError("malformed payload for edge_recall: no reification " +
                        concept_label + " for role " + spec.edge_role);
    }
    for (const Instance &node : g.instances()) {
      if (node.label.full != concept_label) continue;
      bool source_ok = false, target_ok = false;
      for (const Relation &r : g.relations()) {
        if (r.source != node.var) continue;
        const ConceptLabel &label = g.ConceptOf(r.target);
        if (r.role == reif->source_role &&
            LabelMatches(label, spec.labels[0], spec.sense_sensitive)) {
          source_ok = true;
        }
        if (r.role == reif->target_role &&
            LabelMatches(label, spec.labels[1], spec.sense_sensitive)) {
          target_ok = true;
        }
      }
      if (source_ok && target_ok) return true;
    }
  }
  return false;
}

bool CheckImpl(const MetricSpec &spec, const AmrGraph &g,
               const CheckOptions &options) {
  switch (spec.kind) {
    case MetricKind::kNodeLabelRecall: {
      std::set<std::string> distinct(spec.labels.begin(), spec.labels.end());
      for (const std::string &wanted : distinct) {
        int count = 0;
        for (const Instance &inst : g.instances()) {
          if (LabelMatches(inst.label, wanted, spec.sense_sensitive)) ++count;
        }
        if (count < spec.min_occurrences) return false;
      }
      return true;
    }
    case MetricKind::kEdgeRecall: {
      for (const Relation &r : g.relations()) {
        if (r.role == spec.edge_role &&
            LabelMatches(g.ConceptOf(r.source), spec.labels[0],
                         spec.sense_sensitive) &&
            LabelMatches(g.ConceptOf(r.target), spec.labels[1],
                         spec.sense_sensitive)) {
          return true;
        }
      }
      return EdgeViaReification(spec, g, options);
    }
    case MetricKind::kExactMatch:
      return IsExactMatch(Normalize(spec.fragments[0]), g);
    case MetricKind::kSubgraphRecall:
      return HasSubgraphEmbedding(Normalize(spec.fragments[0]), g,
                                  spec.sense_sensitive);
    case MetricKind::kNameSequenceRecall:
      for (const Instance &inst : g.instances()) {
        if (inst.label.full == "name" &&
            NameSequence(g, inst.var) == spec.tokens) {
          return true;
        }
      }
      return false;
    case MetricKind::kDateAttributeRecall: {
      std::set<std::pair<std::string, std::string>> wanted(spec.date.begin(),
                                                           spec.date.end());
      for (const Instance &inst : g.instances()) {
        if (inst.label.full != "date-entity") continue;
        std::set<std::pair<std::string, std::string>> have;
        for (const Attribute &a : g.attributes()) {
          if (a.source == inst.var) have.insert({a.role, a.value.text});
        }
        if (have == wanted) return true;
      }
      return false;
    }
    case MetricKind::kEntityValueRecall:
    case MetricKind::kWikiRecall:
      for (const Attribute &a : g.attributes()) {
        if (spec.kind == MetricKind::kWikiRecall && a.role != "wiki") continue;
        if (a.value.text == spec.value->text) return true;
      }
      return false;
    case MetricKind::kNeTypeRecall:
      for (const Relation &r : g.relations()) {
        if (r.role == "name" && HasLabel(g, r.source, spec.labels[0]) &&
            HasLabel(g, r.target, "name") &&
            NameSequence(g, r.target) == spec.tokens) {
          return true;
        }
      }
      return false;
    case MetricKind::kConjunctRecall:
      return MatchesAnyConjunct(Normalize(spec.fragments[0]), g, std::nullopt);
    case MetricKind::kUnseenOpiRecall:
      return MatchesAnyConjunct(Normalize(spec.fragments[0]), g, spec.index);
    case MetricKind::kConjunctPrecision:
      return ConjunctPrecision(spec.fragments, g) == 1.0;
    case MetricKind::kImperativeRecall:
      for (const Instance &inst : g.instances()) {
        if (!LabelMatches(inst.label, spec.labels[0], spec.sense_sensitive)) {
          continue;
        }
        bool imperative = false, subject = false;
        for (const Attribute &a : g.attributes()) {
          if (a.source == inst.var && a.role == "mode" &&
              a.value.text == "imperative") {
            imperative = true;
          }
        }
        for (const Relation &r : g.relations()) {
          if (r.source == inst.var && r.role == "ARG0" &&
              HasLabel(g, r.target, spec.labels[1])) {
            subject = true;
          }
        }
        if (imperative && subject) return true;
      }
      return false;
  }
  return false;
}

}  // namespace

bool LabelMatches(const ConceptLabel &label, std::string_view wanted,
                  bool sense_sensitive) {
  if (sense_sensitive) return label.full == wanted;
  return label.lemma == ConceptLabel::Parse(wanted).lemma;
}

bool HasSubgraphEmbedding(const AmrGraph &fragment, const AmrGraph &graph,
                          bool sense_sensitive) {
  if (fragment.empty()) return true;
  if (fragment.size() > graph.size()) return false;
  return Embedder(fragment, graph, sense_sensitive).Run();
}

std::vector<std::string> NameSequence(const AmrGraph &graph,
                                      std::string_view var) {
  std::vector<std::pair<int, std::string>> ops;
  for (const Attribute &a : graph.attributes()) {
    if (a.source != var) continue;
    if (std::optional<int> n = OpIndex(a.role)) ops.push_back({*n, a.value.text});
  }
  std::stable_sort(ops.begin(), ops.end(), [](const auto &a, const auto &b) {
    return a.first < b.first;
  });
  std::vector<std::string> out;
  for (auto &op : ops) out.push_back(std::move(op.second));
  return out;
}

AmrGraph ConjunctFragment(const AmrGraph &graph, std::string_view and_var,
                          std::string_view target) {
  if (!graph.HasVariable(target)) {
    throw MetricError("unknown conjunct variable " + std::string(target));
  }
  std::set<std::string> reached = {std::string(target)};
  std::vector<std::string> stack = {std::string(target)};
  while (!stack.empty()) {
    std::string v = std::move(stack.back());
    stack.pop_back();
    for (const Relation &r : graph.relations()) {
      const std::string *next = nullptr;
      if (r.source == v) next = &r.target;
      if (r.target == v) next = &r.source;
      if (next == nullptr || *next == and_var || reached.count(*next)) continue;
      reached.insert(*next);
      stack.push_back(*next);
    }
  }
  std::vector<Instance> instances;
  for (const Instance &inst : graph.instances()) {
    if (reached.count(inst.var)) instances.push_back(inst);
  }
  std::vector<Relation> relations;
  for (const Relation &r : graph.relations()) {
    if (reached.count(r.source) && reached.count(r.target)) {
      relations.push_back(r);
    }
  }
  std::vector<Attribute> attributes;
  for (const Attribute &a : graph.attributes()) {
    if (reached.count(a.source)) attributes.push_back(a);
  }
  return AmrGraph(std::string(target), std::move(instances),
                  std::move(relations), std::move(attributes));
}

std::vector<AmrGraph> GoldConjuncts(const AmrGraph &gold) {
  AmrGraph g = Normalize(gold);
  std::vector<std::vector<Conjunct>> groups = AllConjuncts(g);
  if (groups.empty()) throw MetricError("gold graph has no and-instance");
  size_t best = 0;
  for (size_t i = 1; i < groups.size(); ++i) {
    if (groups[i].size() > groups[best].size()) best = i;
  }
  std::vector<AmrGraph> out;
  for (Conjunct &c : groups[best]) out.push_back(std::move(c.fragment));
  return out;
}

double ConjunctPrecision(const std::vector<AmrGraph> &gold_conjuncts,
                         const AmrGraph &predicted) {
  std::vector<AmrGraph> gold;
  for (const AmrGraph &g : gold_conjuncts) gold.push_back(Normalize(g));
  double best = 0;
  for (const std::vector<Conjunct> &group : AllConjuncts(predicted)) {
    if (group.empty()) continue;
    std::vector<bool> used(gold.size(), false);
    int matched = 0;
    for (const Conjunct &c : group) {
      for (size_t i = 0; i < gold.size(); ++i) {
        if (!used[i] && IsExactMatch(c.fragment, gold[i])) {
          used[i] = true;
          ++matched;
          break;
        }
      }
    }
    best = std::max(best, static_cast<double>(matched) / group.size());
  }
  return best;
}

bool EvaluateCheck(const MetricSpec &spec, const AmrGraph &predicted,
                   const CheckOptions &options) {
  ValidatePayload(spec);
  if (predicted.empty()) return false;
  return CheckImpl(spec, predicted, options);
}

double CheckCredit(const MetricSpec &spec, const AmrGraph &predicted,
                   const CheckOptions &options) {
  ValidatePayload(spec);
  if (predicted.empty()) return 0;
  if (spec.kind == MetricKind::kConjunctPrecision) {
    return ConjunctPrecision(spec.fragments, predicted);
  }
  return CheckImpl(spec, predicted, options) ? 1.0 : 0.0;
}

}  // namespace amrprobe

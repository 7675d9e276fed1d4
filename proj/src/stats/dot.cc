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


#include "amrprobe/stats/dot.h"

#include <algorithm>
#include <set>
#include <tuple>

#include <fmt/format.h>

namespace amrprobe {
namespace {

int Count(const std::vector<bool> &v) {
  return static_cast<int>(std::count(v.begin(), v.end(), true));
}

// Marks triples of `a` without a counterpart in `b`, where map[i] is the
// index in `b` of variable i of `a` (or -1).
void MarkUnmatched(const AmrGraph &a, const AmrGraph &b,
                   const std::vector<int> &map, std::vector<bool> *instances,
                   std::vector<bool> *relations,
                   std::vector<bool> *attributes) {
  std::set<std::tuple<int, std::string, int>> b_rel;
  for (const Relation &r : b.relations()) {
    b_rel.insert({b.IndexOf(r.source), r.role, b.IndexOf(r.target)});
  }
  std::set<std::tuple<int, std::string, std::string>> b_attr;
  for (const Attribute &at : b.attributes()) {
    b_attr.insert({b.IndexOf(at.source), at.role, at.value.ToPenman()});
  }
  instances->clear();
  for (size_t i = 0; i < a.size(); ++i) {
    int j = map[i];
    instances->push_back(j < 0 || b.instances()[j].label.full !=
                                      a.instances()[i].label.full);
  }
  relations->clear();
  for (const Relation &r : a.relations()) {
    int s = map[a.IndexOf(r.source)], t = map[a.IndexOf(r.target)];
    relations->push_back(s < 0 || t < 0 || !b_rel.count({s, r.role, t}));
  }
  attributes->clear();
  for (const Attribute &at : a.attributes()) {
    int s = map[a.IndexOf(at.source)];
    attributes->push_back(s < 0 ||
                          !b_attr.count({s, at.role, at.value.ToPenman()}));
  }
}

std::string Quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void EmitCluster(const AmrGraph &g, std::string_view name,
                 std::string_view prefix, std::string_view color,
                 const std::vector<bool> &instances,
                 const std::vector<bool> &relations,
                 const std::vector<bool> &attributes, std::string *out) {
  auto style = [&](bool highlight) {
    return highlight ? fmt::format(", color={0}, fontcolor={0}", color)
                     : std::string();
  };
  *out += fmt::format("  subgraph cluster_{} {{\n    label={};\n", name,
                      Quote(name));
  for (size_t i = 0; i < g.size(); ++i) {
    const Instance &inst = g.instances()[i];
    std::string shape = inst.var == g.root() ? ", peripheries=2" : "";
    *out += fmt::format("    {}{} [label={}{}{}];\n", prefix, i,
                        Quote(inst.var + " / " + inst.label.full), shape,
                        style(instances[i]));
  }
  for (size_t i = 0; i < g.relations().size(); ++i) {
    const Relation &r = g.relations()[i];
    *out += fmt::format("    {0}{1} -> {0}{2} [label={3}{4}];\n", prefix,
                        g.IndexOf(r.source), g.IndexOf(r.target),
                        Quote(r.role), style(relations[i]));
  }
  for (size_t i = 0; i < g.attributes().size(); ++i) {
    const Attribute &a = g.attributes()[i];
    *out += fmt::format("    {0}a{1} [shape=box, label={2}{3}];\n", prefix, i,
                        Quote(a.value.ToPenman()), style(attributes[i]));
    *out += fmt::format("    {0}{1} -> {0}a{2} [label={3}{4}];\n", prefix,
                        g.IndexOf(a.source), i, Quote(a.role),
                        style(attributes[i]));
  }
  *out += "  }\n";
}

}  // namespace

int GraphDiff::unmatched_gold() const {
  return Count(gold_instances) + Count(gold_relations) +
         Count(gold_attributes);
}

int GraphDiff::unmatched_predicted() const {
  return Count(predicted_instances) + Count(predicted_relations) +
         Count(predicted_attributes);
}

GraphDiff DiffGraphs(const AmrGraph &gold, const AmrGraph &predicted,
                     const SmatchOptions &options) {
  AmrGraph g = Normalize(gold), p = Normalize(predicted);
  GraphDiff diff;
  std::vector<int> pred_to_gold(p.size(), -1);
  if (!g.empty() && !p.empty()) {
    pred_to_gold = AlignSmatch(p, g, options).mapping;
  }
  std::vector<int> gold_to_pred(g.size(), -1);
  for (size_t j = 0; j < pred_to_gold.size(); ++j) {
    if (pred_to_gold[j] >= 0) gold_to_pred[pred_to_gold[j]] = j;
  }
  MarkUnmatched(g, p, gold_to_pred, &diff.gold_instances,
                &diff.gold_relations, &diff.gold_attributes);
  MarkUnmatched(p, g, pred_to_gold, &diff.predicted_instances,
                &diff.predicted_relations, &diff.predicted_attributes);
  return diff;
}

std::string ToDot(const AmrGraph &gold, const AmrGraph &predicted,
                  const SmatchOptions &options) {
  GraphDiff diff = DiffGraphs(gold, predicted, options);
  AmrGraph g = Normalize(gold), p = Normalize(predicted);
  std::string out = "digraph amr_diff {\n  node [shape=ellipse];\n";
  EmitCluster(g, "gold", "g", "red", diff.gold_instances, diff.gold_relations,
              diff.gold_attributes, &out);
  EmitCluster(p, "predicted", "p", "blue", diff.predicted_instances,
              diff.predicted_relations, diff.predicted_attributes, &out);
  out += "}\n";
  return out;
}

}  // namespace amrprobe

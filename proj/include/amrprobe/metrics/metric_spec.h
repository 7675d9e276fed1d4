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


#ifndef AMRPROBE_METRICS_METRIC_SPEC_H_
#define AMRPROBE_METRICS_METRIC_SPEC_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amrprobe/amr/graph.h"

namespace amrprobe {

class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MetricKind {
  kNodeLabelRecall,
  kEdgeRecall,
  kExactMatch,
  kSubgraphRecall,
  kNameSequenceRecall,
  kDateAttributeRecall,
  kEntityValueRecall,
  kWikiRecall,
  kNeTypeRecall,
  kConjunctRecall,
  kConjunctPrecision,
  kUnseenOpiRecall,
  kImperativeRecall,
};

enum class MetricRole { kMain, kPrerequisite, kSanityCheck };

// Identifier used in annotation files, e.g. "edge_recall".
std::string_view KindName(MetricKind kind);
// Accepts KindName() values and the short forms "node", "edge", "sequence",
// "date", "subgraph", "value", "wiki", "ne_type", "imperative".
std::optional<MetricKind> ParseKind(std::string_view name);
// Row label used in result tables, e.g. "Edge recall".
std::string_view KindDisplayName(MetricKind kind);

std::string_view RoleName(MetricRole role);  // main, prereq, sanity
std::optional<MetricRole> ParseRole(std::string_view name);

// One checkable target. Only the payload fields used by `kind` are set:
//   node_label_recall     labels (each must occur min_occurrences times)
//   edge_recall           labels = {source, target}, role, reifications
//   exact_match           fragments = {gold graph}
//   subgraph_recall       fragments = {gold fragment}
//   name_sequence_recall  tokens
//   date_attribute_recall date
//   entity_value_recall   value
//   wiki_recall           value
//   ne_type_recall        labels = {type}, tokens = name sequence
//   conjunct_recall       fragments = {conjunct}
//   conjunct_precision    fragments = all gold conjuncts of the entry
//   unseen_opi_recall     index, fragments = {conjunct}
//   imperative_recall     labels = {predicate, subject}
struct MetricSpec {
  MetricKind kind = MetricKind::kNodeLabelRecall;
  MetricRole role = MetricRole::kMain;
  bool sense_sensitive = true;
  int min_occurrences = 1;

  std::vector<std::string> labels;
  std::string edge_role;
  std::vector<std::string> reifications;
  std::vector<std::string> tokens;
  std::vector<std::pair<std::string, std::string>> date;
  std::optional<ConstantValue> value;
  std::vector<AmrGraph> fragments;
  int index = 0;
};

// Throws MetricError("malformed payload ...") if required fields are
// missing for the kind.
void ValidatePayload(const MetricSpec &spec);

// Convenience constructors.
MetricSpec NodeSpec(std::vector<std::string> labels, MetricRole role,
                    bool sense_sensitive = true, int min_occurrences = 1);
MetricSpec EdgeSpec(std::string source, std::string role_token,
                    std::string target, MetricRole role,
                    bool sense_sensitive = true,
                    std::vector<std::string> reifications = {});
MetricSpec GraphSpec(MetricKind kind, AmrGraph fragment, MetricRole role);

struct CategoryInstance {
  std::string entry_id;
  std::string category_id;
  std::vector<MetricSpec> checks;
};

struct Outcome {
  std::string entry_id;
  int check_index = 0;
  bool pass = false;
  // 1 or 0, except for conjunct precision where it is the entry's precision.
  double credit = 0;
};

struct EvaluationResult {
  std::string category_id;
  std::string metric_name;
  MetricRole role = MetricRole::kMain;
  std::vector<Outcome> outcomes;
  double numerator = 0;
  int denominator = 0;

  double score() const {
    return denominator > 0 ? 100.0 * numerator / denominator : 0.0;
  }
};

// Metric name used for a spec in results: the kind's display name for main
// checks, "Prerequisites" and "Sanity check" otherwise.
std::string MetricNameFor(const MetricSpec &spec);
MetricRole RoleForMetricName(std::string_view metric_name);

}  // namespace amrprobe

#endif  // AMRPROBE_METRICS_METRIC_SPEC_H_

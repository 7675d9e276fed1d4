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


#ifndef AMRPROBE_METRICS_CHECK_H_
#define AMRPROBE_METRICS_CHECK_H_

#include <string>
#include <string_view>
#include <vector>

#include "amrprobe/amr/graph.h"
#include "amrprobe/metrics/metric_spec.h"
#include "amrprobe/metrics/reification.h"

namespace amrprobe {

struct CheckOptions {
  const ReificationTable *reifications = &ReificationTable::Default();
};

// Full-label comparison, or lemma-only when !sense_sensitive.
bool LabelMatches(const ConceptLabel &label, std::string_view wanted,
                  bool sense_sensitive);

// Whether the (normalized) fragment is isomorphic to a subgraph of the
// (normalized) graph: injective on variables, with every fragment instance
// label, relation and attribute present in the image.
bool HasSubgraphEmbedding(const AmrGraph &fragment, const AmrGraph &graph,
                          bool sense_sensitive = true);

// Values of the opN attributes of `var`, ordered by N.
std::vector<std::string> NameSequence(const AmrGraph &graph,
                                      std::string_view var);

// The part of `graph` hanging off conjunct `target` of coordination node
// `and_var`: everything connected to `target` without passing through
// `and_var`, rooted at `target`.
AmrGraph ConjunctFragment(const AmrGraph &graph, std::string_view and_var,
                          std::string_view target);

// Conjunct fragments of the and-instance with the most opN children, in opN
// order. Throws MetricError if the graph has no and-instance.
std::vector<AmrGraph> GoldConjuncts(const AmrGraph &gold);

// Fraction of the predicted conjuncts that match distinct gold conjuncts,
// taking the best predicted and-instance; 0 when there is none.
double ConjunctPrecision(const std::vector<AmrGraph> &gold_conjuncts,
                         const AmrGraph &predicted);

// Evaluates one check. `predicted` must be normalized. For conjunct
// precision the result is true iff the precision is 1; use CheckCredit for
// the fractional value.
bool EvaluateCheck(const MetricSpec &spec, const AmrGraph &predicted,
                   const CheckOptions &options = CheckOptions());

// 1 or 0 for ordinary checks, the precision for conjunct precision.
double CheckCredit(const MetricSpec &spec, const AmrGraph &predicted,
                   const CheckOptions &options = CheckOptions());

}  // namespace amrprobe

#endif  // AMRPROBE_METRICS_CHECK_H_

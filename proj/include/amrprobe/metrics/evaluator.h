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


#ifndef AMRPROBE_METRICS_EVALUATOR_H_
#define AMRPROBE_METRICS_EVALUATOR_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "amrprobe/amr/graph.h"
#include "amrprobe/metrics/check.h"
#include "amrprobe/metrics/metric_spec.h"

namespace amrprobe {

struct EvaluateOptions {
  CheckOptions check;
  // Within each instance the k-th main check is paired with the k-th
  // prerequisite; a passing main check with a failing prerequisite throws.
  bool check_dominance = true;
};

// Evaluates instances against predictions keyed by entry id. Predictions
// need not be normalized. Entries without a prediction fail every check
// and produce one message in *warnings. Results come out per category in
// first-appearance order, main metrics first, then prerequisites, then
// sanity checks. Throws MetricError for unknown category ids.
std::vector<EvaluationResult> EvaluateCategory(
    const std::vector<CategoryInstance> &instances,
    const std::map<std::string, AmrGraph> &predictions,
    std::vector<std::string> *warnings = nullptr,
    const EvaluateOptions &options = EvaluateOptions());

// Conjunct recall (one datapoint per gold conjunct) and conjunct precision
// (one datapoint per entry) for parallel gold and predicted graphs.
std::pair<EvaluationResult, EvaluationResult> ConjunctScores(
    const std::vector<std::string> &entry_ids,
    const std::vector<AmrGraph> &gold, const std::vector<AmrGraph> &predicted);

}  // namespace amrprobe

#endif  // AMRPROBE_METRICS_EVALUATOR_H_

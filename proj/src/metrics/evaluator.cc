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


#include "amrprobe/metrics/evaluator.h"

#include "amrprobe/metrics/categories.h"

namespace amrprobe {
namespace {

struct Key {
  std::string category;
  std::string metric;
  MetricRole role;
};

int RoleRank(MetricRole role) {
  switch (role) {
    case MetricRole::kMain:
      return 0;
    case MetricRole::kPrerequisite:
      return 1;
    case MetricRole::kSanityCheck:
      return 2;
  }
  return 0;
}

void CheckDominance(const CategoryInstance &inst,
                    const std::vector<double> &credit) {
  std::vector<size_t> mains, prereqs;
  for (size_t i = 0; i < inst.checks.size(); ++i) {
    if (inst.checks[i].role == MetricRole::kMain) mains.push_back(i);
    if (inst.checks[i].role == MetricRole::kPrerequisite) prereqs.push_back(i);
  }
  if (prereqs.empty()) return;
  if (mains.size() != prereqs.size()) {
    throw MetricError("entry " + inst.entry_id + ": " +
                      std::to_string(mains.size()) + " main checks but " +
                      std::to_string(prereqs.size()) + " prerequisites");
  }
  for (size_t k = 0; k < mains.size(); ++k) {
    if (credit[mains[k]] > 0 && credit[prereqs[k]] < 1) {
      throw MetricError("prerequisite dominance violated in entry " +
                        inst.entry_id + " (" + inst.category_id +
                        ", check " + std::to_string(mains[k]) + ")");
    }
  }
}

}  // namespace

std::vector<EvaluationResult> EvaluateCategory(
    const std::vector<CategoryInstance> &instances,
    const std::map<std::string, AmrGraph> &predictions,
    std::vector<std::string> *warnings, const EvaluateOptions &options) {
  std::vector<EvaluationResult> results;
  std::vector<std::string> category_order;
  std::map<std::string, AmrGraph> normalized;
  std::map<std::string, bool> warned;

  auto result_for = [&](const std::string &category, const MetricSpec &spec)
      -> EvaluationResult & {
    std::string name = MetricNameFor(spec);
    for (EvaluationResult &r : results) {
      if (r.category_id == category && r.metric_name == name) return r;
    }
    EvaluationResult r;
    r.category_id = category;
    r.metric_name = name;
    r.role = spec.role;
    results.push_back(std::move(r));
    return results.back();
  };

  for (const CategoryInstance &inst : instances) {
    if (FindCategory(inst.category_id) == nullptr) {
      throw MetricError("unknown category id: " + inst.category_id);
    }
    if (inst.checks.empty()) {
      throw MetricError("entry " + inst.entry_id + " has no checks");
    }
    bool seen = false;
    for (const std::string &c : category_order) seen |= c == inst.category_id;
    if (!seen) category_order.push_back(inst.category_id);

    const AmrGraph *predicted = nullptr;
    auto cached = normalized.find(inst.entry_id);
    if (cached != normalized.end()) {
      predicted = &cached->second;
    } else if (auto it = predictions.find(inst.entry_id);
               it != predictions.end()) {
      predicted = &normalized.emplace(inst.entry_id, Normalize(it->second))
                       .first->second;
    } else if (!warned[inst.entry_id]) {
      warned[inst.entry_id] = true;
      if (warnings != nullptr) {
        warnings->push_back("missing prediction for entry " + inst.entry_id);
      }
    }

    std::vector<double> credit(inst.checks.size(), 0.0);
    for (size_t i = 0; i < inst.checks.size(); ++i) {
      const MetricSpec &spec = inst.checks[i];
      ValidatePayload(spec);
      if (predicted != nullptr) {
        credit[i] = CheckCredit(spec, *predicted, options.check);
      }
      EvaluationResult &r = result_for(inst.category_id, spec);
      r.outcomes.push_back(
          {inst.entry_id, static_cast<int>(i), credit[i] == 1.0, credit[i]});
      r.numerator += credit[i];
      r.denominator += 1;
    }
    if (options.check_dominance) CheckDominance(inst, credit);
  }

  std::vector<EvaluationResult> ordered;
  for (const std::string &category : category_order) {
    for (int rank = 0; rank < 3; ++rank) {
      for (EvaluationResult &r : results) {
        if (r.category_id == category && RoleRank(r.role) == rank) {
          ordered.push_back(std::move(r));
        }
      }
    }
  }
  return ordered;
}

std::pair<EvaluationResult, EvaluationResult> ConjunctScores(
    const std::vector<std::string> &entry_ids,
    const std::vector<AmrGraph> &gold, const std::vector<AmrGraph> &predicted) {
  if (entry_ids.size() != gold.size() || gold.size() != predicted.size()) {
    throw MetricError("conjunct scores: mismatched input sizes");
  }
  EvaluationResult recall, precision;
  recall.category_id = precision.category_id = "long_lists";
  recall.metric_name = std::string(KindDisplayName(MetricKind::kConjunctRecall));
  precision.metric_name =
      std::string(KindDisplayName(MetricKind::kConjunctPrecision));
  for (size_t e = 0; e < gold.size(); ++e) {
    std::vector<AmrGraph> conjuncts = GoldConjuncts(gold[e]);
    AmrGraph pred = Normalize(predicted[e]);
    for (size_t i = 0; i < conjuncts.size(); ++i) {
      MetricSpec spec = GraphSpec(MetricKind::kConjunctRecall, conjuncts[i],
                                  MetricRole::kMain);
      bool pass = !pred.empty() && EvaluateCheck(spec, pred);
      recall.outcomes.push_back(
          {entry_ids[e], static_cast<int>(i), pass, pass ? 1.0 : 0.0});
      recall.numerator += pass ? 1 : 0;
      recall.denominator += 1;
    }
    double p = pred.empty() ? 0.0 : ConjunctPrecision(conjuncts, pred);
    precision.outcomes.push_back({entry_ids[e], 0, p == 1.0, p});
    precision.numerator += p;
    precision.denominator += 1;
  }
  return {recall, precision};
}

}  // namespace amrprobe

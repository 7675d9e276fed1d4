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


#ifndef AMRPROBE_SMATCH_SMATCH_H_
#define AMRPROBE_SMATCH_SMATCH_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "amrprobe/amr/graph.h"

namespace amrprobe {

class SmatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deduplicated triples of a normalized graph, with variables as indices into
// the graph's instance list. The root contributes one extra TOP triple.
struct TripleSet {
  std::vector<std::string> instances;  // concept per variable
  std::vector<std::vector<std::string>> attributes;  // "role=value" per var
  std::vector<std::tuple<int, std::string, int>> relations;
  int root = -1;

  int size() const;
};

TripleSet ExtractTriples(const AmrGraph &normalized);

struct SmatchScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  int matched = 0;
  int gold_total = 0;
  int predicted_total = 0;

  static SmatchScore FromCounts(int matched, int gold_total,
                                int predicted_total);
};

struct SmatchOptions {
  int restarts = 5;
  uint64_t seed = 0;
};

struct SmatchAlignment {
  SmatchScore score;
  // Gold instance index for each predicted instance, or -1.
  std::vector<int> mapping;
};

// Hill-climbing search over variable mappings: one start seeded by concept
// matches plus restarts-1 random starts. Graphs are normalized internally.
SmatchAlignment AlignSmatch(const AmrGraph &predicted, const AmrGraph &gold,
                            const SmatchOptions &options = {});

SmatchScore ComputeSmatch(const AmrGraph &predicted, const AmrGraph &gold,
                          const SmatchOptions &options = {});

inline constexpr int kOracleMaxVariables = 8;

// Exhaustive search; both graphs must have at most kOracleMaxVariables
// variables.
SmatchAlignment SmatchOracle(const AmrGraph &predicted, const AmrGraph &gold);

// Micro average over pooled triple counts. Pairs are (predicted, gold).
SmatchScore CorpusSmatch(
    const std::vector<std::pair<const AmrGraph *, const AmrGraph *>> &pairs,
    const SmatchOptions &options = {});

}  // namespace amrprobe

#endif  // AMRPROBE_SMATCH_SMATCH_H_

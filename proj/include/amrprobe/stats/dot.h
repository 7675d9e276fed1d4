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


#ifndef AMRPROBE_STATS_DOT_H_
#define AMRPROBE_STATS_DOT_H_

#include <string>

#include "amrprobe/amr/graph.h"
#include "amrprobe/smatch/smatch.h"

namespace amrprobe {

struct GraphDiff {
  // Parallel to the instances, relations and attributes of the normalized
  // graphs; true where the triple has no counterpart under the alignment.
  std::vector<bool> gold_instances, gold_relations, gold_attributes;
  std::vector<bool> predicted_instances, predicted_relations,
      predicted_attributes;

  int unmatched_gold() const;
  int unmatched_predicted() const;
};

// Diffs the normalized graphs under the best Smatch alignment found.
GraphDiff DiffGraphs(const AmrGraph &gold, const AmrGraph &predicted,
                     const SmatchOptions &options = {});

// Graphviz digraph with a "gold" and a "predicted" cluster. Unmatched gold
// material is drawn red, extra predicted material blue.
std::string ToDot(const AmrGraph &gold, const AmrGraph &predicted,
                  const SmatchOptions &options = {});

}  // namespace amrprobe

#endif  // AMRPROBE_STATS_DOT_H_

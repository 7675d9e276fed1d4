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


#include "amrprobe/metrics/categories.h"

#include <array>

namespace amrprobe {
namespace {

constexpr std::array<std::string_view, 9> kSetNames = {
    "Pragmatic reentrancies",
    "Unambiguous reentrancies",
    "Structural generalization",
    "Rare and unseen words",
    "Special entities",
    "Entity classification and linking",
    "Lexical disambiguation",
    "Edge attachments",
    "Non-trivial word-to-node relations",
};

struct Row {
  const char *id;
  int set;
  const char *display;
};

constexpr Row kRows[] = {
    {"pragmatic_coreference_testset", 1, "Pragmatic coreference (testset)"},
    {"pragmatic_coreference_winograd", 1, "Pragmatic coreference (Winograd)"},
    {"syntactic_gap_reentrancies", 2, "Syntactic (gap) reentrancies"},
    {"unambiguous_coreference", 2, "Unambiguous coreference"},
    {"nested_control_and_coordination", 3, "Nested control and coordination"},
    {"multiple_adjectives", 3, "Multiple adjectives"},
    {"centre_embedding", 3, "Centre embedding"},
    {"long_lists", 3, "Long lists"},
    {"cp_recursion", 3, "CP recursion"},
    {"cp_recursion_plus_coreference", 3, "CP recursion + coreference"},
    {"cp_recursion_plus_rc", 3, "CP recursion + relative clause (RC)"},
    {"cp_recursion_plus_rc_plus_coreference", 3,
     "CP recursion + RC + coreference"},
    {"rare_node_labels", 4, "Rare node labels"},
    {"unseen_node_labels", 4, "Unseen node labels"},
    {"rare_predicate_senses", 4, "Rare predicate senses (excl. -01)"},
    {"unseen_predicate_senses", 4, "Unseen predicate senses (excl. -01)"},
    {"rare_edge_labels", 4, "Rare edge labels (ARG2+)"},
    {"unseen_edge_labels", 4, "Unseen edge labels (ARG2+)"},
    {"seen_names", 5, "Seen names"},
    {"unseen_names", 5, "Unseen names"},
    {"seen_dates", 5, "Seen dates"},
    {"unseen_dates", 5, "Unseen dates"},
    {"other_seen_entities", 5, "Other seen entities"},
    {"other_unseen_entities", 5, "Other unseen entities"},
    {"types_of_seen_named_entities", 6, "Types of seen named entities"},
    {"types_of_unseen_named_entities", 6, "Types of unseen named entities"},
    {"seen_and_easy_wiki_links", 6, "Seen and/or easy wiki links"},
    {"hard_unseen_wiki_links", 6, "Hard unseen wiki links"},
    {"frequent_predicate_senses", 7, "Frequent predicate senses (incl. -01)"},
    {"word_ambiguities_handcrafted", 7, "Word ambiguities (handcrafted)"},
    {"word_ambiguities_karidi", 7, "Word ambiguities (Karidi et al.)"},
    {"pp_attachment", 8, "PP attachment"},
    {"unbounded_dependencies", 8, "Unbounded dependencies"},
    {"passives", 8, "Passives"},
    {"unaccusatives", 8, "Unaccusatives"},
    {"ellipsis", 9, "Ellipsis"},
    {"multinode_word_meanings", 9, "Multinode word meanings"},
    {"imperatives", 9, "Imperatives"},
};

}  // namespace

std::string SetName(int set) {
  if (set < 1 || set > static_cast<int>(kSetNames.size())) return "";
  return std::string(kSetNames[set - 1]);
}

const std::vector<CategoryInfo> &Categories() {
  static const std::vector<CategoryInfo> *all = [] {
    auto *v = new std::vector<CategoryInfo>;
    for (const Row &row : kRows) {
      v->push_back({row.id, row.set, row.display, SetName(row.set)});
    }
    return v;
  }();
  return *all;
}

const CategoryInfo *FindCategory(std::string_view id) {
  for (const CategoryInfo &info : Categories()) {
    if (info.id == id) return &info;
  }
  return nullptr;
}

}  // namespace amrprobe

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


#ifndef AMRPROBE_CORPUS_FREQUENCY_INDEX_H_
#define AMRPROBE_CORPUS_FREQUENCY_INDEX_H_

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amrprobe/amr/corpus.h"

namespace amrprobe {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using NameSequenceKey = std::vector<std::string>;
// Sorted (role, value) pairs of a date-entity.
using DateSignature = std::vector<std::pair<std::string, std::string>>;

// Training-set statistics. Counts are per occurrence in the normalized
// graphs, not per entry.
struct FrequencyIndex {
  std::map<std::string, int> label_counts;
  std::map<std::string, std::map<std::string, int>> lemma_sense_counts;
  // (predicate label, ARG2..ARG5) -> count
  std::map<std::pair<std::string, std::string>, int> predicate_role_counts;
  std::set<NameSequenceKey> name_sequences;
  std::set<DateSignature> date_signatures;
  std::set<std::pair<std::string, std::string>> entity_values;
  std::set<std::string> wiki_values;
  std::set<std::pair<std::string, NameSequenceKey>> ne_type_pairs;
  std::set<std::string> training_ids;

  int LabelCount(std::string_view label) const;
  // Occurrences of the label's own sense.
  int SenseCount(std::string_view label) const;
  // Occurrences of all other senses of the label's lemma.
  int CompetingSenseCount(std::string_view label) const;
  int PredicateRoleCount(std::string_view predicate,
                         std::string_view role) const;

  bool operator==(const FrequencyIndex &other) const = default;
};

// Throws CorpusError for an empty corpus or entries without graphs.
FrequencyIndex BuildIndex(const std::vector<CorpusEntry> &training);

// Snapshot: one "## section" header per field followed by sorted
// tab-separated rows. Tabs, newlines and backslashes inside tokens are
// backslash-escaped.
std::string SaveIndex(const FrequencyIndex &index);
FrequencyIndex LoadIndex(std::string_view text);

enum class Band { kUnseen, kRare, kMid, kFrequent };

inline constexpr int kRareMax = 5;
inline constexpr int kFrequentMin = 30;

// 0 -> unseen, 1..5 -> rare, 6..29 -> mid, >= 30 -> frequent.
Band BandOf(int count);
std::string_view BandName(Band band);

// Shared feature extraction used by both the index and the extractors.
DateSignature DateSignatureOf(const AmrGraph &graph, std::string_view var);

}  // namespace amrprobe

#endif  // AMRPROBE_CORPUS_FREQUENCY_INDEX_H_

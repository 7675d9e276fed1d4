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


#ifndef AMRPROBE_CORPUS_EXTRACTION_H_
#define AMRPROBE_CORPUS_EXTRACTION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "amrprobe/amr/corpus.h"
#include "amrprobe/corpus/frequency_index.h"
#include "amrprobe/metrics/metric_spec.h"

namespace amrprobe {

enum class CandidateStatus { kUnreviewed, kAccepted, kRejected };

std::string_view StatusName(CandidateStatus status);
std::optional<CandidateStatus> ParseStatus(std::string_view name);

// One proposed test item. `category_id` is a registry id, except for
// reentrancy and unsplit no-ARG0 pools, which a reviewer must retype.
struct CandidateRecord {
  std::string candidate_id;
  std::string entry_id;
  std::string category_id;
  std::vector<MetricSpec> checks;
  CandidateStatus status = CandidateStatus::kUnreviewed;
  std::string note;
};

struct ExtractOptions {
  // Labels never proposed as frequent senses.
  std::set<std::string> frequent_sense_exclusions = {"include-01",
                                                     "include-91"};
  // Predicate -> whether its frame has an ARG0. When set, no-ARG0
  // candidates are split into passives and unaccusatives.
  std::optional<std::map<std::string, bool>> frames;
  std::vector<std::string> other_entity_types;  // empty: built-in list
  // One candidate with an edge check per parent, or one subgraph check
  // covering both parents.
  bool reentrancy_per_edge = true;
};

// Extraction ids accepted by ExtractCategory, in a fixed order.
const std::vector<std::string> &ExtractionIds();

// The built-in "other entities" concept list.
const std::vector<std::string> &DefaultOtherEntityTypes();

// One concept per line; '#' starts a comment.
std::vector<std::string> ParseTypeList(std::string_view text);

// "predicate<TAB>0|1" lines.
std::map<std::string, bool> ParseFrames(std::string_view text);

// Proposes candidates for one category. Candidates are ordered by entry
// id, then by position in the entry. Throws CorpusError for an unknown
// category; id overlap with the training set and missing graphs only warn.
std::vector<CandidateRecord> ExtractCategory(
    const std::vector<CorpusEntry> &test, const FrequencyIndex &index,
    std::string_view category, const ExtractOptions &options = {},
    std::vector<std::string> *warnings = nullptr);

struct AlignmentRecord {
  std::string entry_id;
  int token_start = 0;
  int token_end = 0;
  std::vector<std::string> vars;
};

// entry_id, token_start, token_end and a ';'-joined variable list per line.
std::vector<AlignmentRecord> ParseAlignments(std::string_view text);

enum class AlignMode { kEllipsis, kMultinode };

// Ellipsis: a span aligned to several nodes sharing a label. Multinode: a
// span aligned to nodes with at least two distinct labels. Throws
// CorpusError for unknown entries or variables.
std::vector<CandidateRecord> ExtractAligned(
    const std::vector<CorpusEntry> &test,
    const std::vector<AlignmentRecord> &alignments, AlignMode mode,
    std::vector<std::string> *warnings = nullptr);

enum class ReviewAdvice { kHandFilter, kAcceptRemainder };

std::string_view AdviceName(ReviewAdvice advice);

// Hand filtering is needed when the sampled error rate exceeds 10%.
ReviewAdvice ReviewSummary(const std::vector<CandidateRecord> &candidates,
                           size_t sample_size, double error_rate);

// Sorted indices of a seeded sample of min(n, size) candidates.
std::vector<size_t> SampleForReview(
    const std::vector<CandidateRecord> &candidates, size_t n, uint64_t seed);

// Review sheet: one tab-separated row per check, grouped by candidate, with
// the sentence and graph as '#' comments and fragments on indented lines.
std::string WriteReviewSheet(const std::vector<CandidateRecord> &candidates,
                             const std::vector<CorpusEntry> &test = {});
std::vector<CandidateRecord> ReadReviewSheet(std::string_view text);

// Accepted candidates (or all but rejected ones) as category instances.
// Throws CorpusError for a kept candidate whose category is not in the
// registry.
std::vector<CategoryInstance> ToAnnotations(
    const std::vector<CandidateRecord> &candidates,
    bool include_unreviewed = false);

}  // namespace amrprobe

#endif  // AMRPROBE_CORPUS_EXTRACTION_H_

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


#ifndef AMRPROBE_GENERATION_SUITE_H_
#define AMRPROBE_GENERATION_SUITE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amrprobe/amr/corpus.h"
#include "amrprobe/generation/grammar.h"
#include "amrprobe/generation/sampler.h"
#include "amrprobe/metrics/metric_spec.h"

namespace amrprobe {

enum class CorpusKind {
  kExactMatch,  // one exact-match check per entry
  kList,        // conjunct recall, unseen :opi and conjunct precision
  kAttachment,  // target edge with a node prerequisite
};

struct DepthAllocation {
  int depth = 0;
  int count = 0;
  FeatureRequest features;  // extra start-symbol features
};

struct Quota {
  std::string start;
  int count = 0;
};

// Generation settings for one category.
struct GenerationConfig {
  std::string category_id;
  CorpusKind kind = CorpusKind::kExactMatch;
  std::string grammar;  // path relative to the data directory
  std::string start = "S";
  std::string depth_feature = "d";
  std::vector<DepthAllocation> depths;
  // Attachment corpora: entries drawn per start symbol from the full
  // enumeration.
  std::vector<Quota> quotas;
  std::string sanity_start;  // empty when the category has no sanity split
  FeatureRequest sanity_features;
  int sanity_count = 0;
  std::vector<std::string> no_repeat = {"noun"};
  uint64_t seed = 0;
  bool sanity = true;

  int MainCount() const;
};

struct GenerationSuite {
  uint64_t seed = 0;
  std::vector<GenerationConfig> categories;

  // nullptr for unknown ids.
  const GenerationConfig *Find(const std::string &category_id) const;
};

// Reads the JSON suite description. Per-category seeds default to the suite
// seed mixed with a hash of the category id. Throws GenerationError.
GenerationSuite ParseGenerationSuite(const std::string &json_text);
GenerationSuite LoadGenerationSuite(const std::string &path);

// Data directory compiled into the build; overridable at run time.
std::string DefaultDataDir();

// Seed of a category without an explicit one.
uint64_t CategorySeed(uint64_t suite_seed, const std::string &category_id);

struct GeneratedEntry {
  CorpusEntry entry;
  int depth = 0;
  bool sanity = false;
  // Global binding name -> variable in entry.graph.
  std::map<std::string, std::string> bindings;
  std::vector<Relation> marked;
};

// Main entries of an exact-match or list category, by depth, with
// distinct sentences. Deterministic under config.seed.
std::vector<GeneratedEntry> Sample(const Grammar &grammar,
                                   const GenerationConfig &config);

// Unnested entries from config.sanity_start that together use every lexical
// key reachable from it (the smallest cover found over several seeded
// passes), padded with further distinct entries up to config.sanity_count.
std::vector<GeneratedEntry> SanitySplit(const Grammar &grammar,
                                        const GenerationConfig &config);

// Attachment corpus: enumerates each quota's start symbol and draws the
// quota without replacement.
std::vector<GeneratedEntry> AttachmentCorpus(const Grammar &grammar,
                                             const GenerationConfig &config);

// Checks for the entries of one category.
std::vector<CategoryInstance> BuildAnnotations(
    const GenerationConfig &config, const std::vector<GeneratedEntry> &entries);

struct GeneratedCorpus {
  std::string category_id;
  std::vector<GeneratedEntry> entries;  // main, then sanity
  std::vector<CategoryInstance> annotations;
};

// Loads the grammar from `data_dir` and produces the full category corpus.
GeneratedCorpus GenerateCategory(const GenerationConfig &config,
                                 const std::string &data_dir);

// GenerateCategory for the category with `category_id` in `suite`; throws
// GenerationError for unknown ids.
GeneratedCorpus GenerateCategory(const GenerationSuite &suite,
                                 const std::string &category_id,
                                 const std::string &data_dir);

}  // namespace amrprobe

#endif  // AMRPROBE_GENERATION_SUITE_H_

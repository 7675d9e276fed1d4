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


#ifndef AMRPROBE_AMR_CORPUS_H_
#define AMRPROBE_AMR_CORPUS_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amrprobe/amr/graph.h"

namespace amrprobe {

struct CorpusEntry {
  std::string id;
  std::string sentence;
  std::optional<AmrGraph> graph;
  // Metadata other than ::id and ::snt, in file order.
  std::vector<std::pair<std::string, std::string>> metadata;
  // Set instead of throwing when reading leniently.
  std::string parse_error;

  // Value of a metadata key, or empty.
  std::string Meta(std::string_view key) const;
};

struct ReadCorpusOptions {
  // Record Penman errors in CorpusEntry::parse_error instead of throwing.
  bool lenient = false;
  // Reject blocks without "# ::id".
  bool require_id = true;
};

// Reads blank-line separated blocks of "# ::key value" lines followed by a
// Penman graph. A leading block made only of plain comment lines is treated
// as a file header and skipped.
std::vector<CorpusEntry> ReadCorpus(
    std::string_view text, const ReadCorpusOptions &options = {});

std::vector<CorpusEntry> ReadCorpusFile(
    const std::string &path, const ReadCorpusOptions &options = {});

std::string WriteCorpus(const std::vector<CorpusEntry> &entries);

// Whole-file helpers. WriteFileAtomic writes to a temporary sibling file and
// renames it into place.
std::string ReadFile(const std::string &path);
void WriteFileAtomic(const std::string &path, std::string_view contents);

}  // namespace amrprobe

#endif  // AMRPROBE_AMR_CORPUS_H_

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


#ifndef AMRPROBE_STATS_REPORT_H_
#define AMRPROBE_STATS_REPORT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amrprobe/metrics/metric_spec.h"

namespace amrprobe {

// Results file: tab-separated rows category_id, metric_name, numerator,
// denominator, score_percent, ci_low, ci_high under one header line. The
// interval columns are 95% Wilson bounds in percent.
std::string WriteResults(const std::vector<EvaluationResult> &results);
// Outcomes are not stored, so results read back carry counts only.
std::vector<EvaluationResult> ReadResults(std::string_view text);

struct ParserResults {
  std::string parser;
  std::vector<EvaluationResult> results;
};

struct SetSummary {
  int set = 0;
  std::string set_name;
  // Unrounded mean of the main-metric scores, one per parser.
  std::vector<double> averages;
};

// Per set, the mean of every main-metric score of each parser. Sets
// without any result are skipped; a set whose results are all
// prerequisites or sanity checks is an error.
std::vector<SetSummary> CompactSummary(
    const std::vector<ParserResults> &parsers);

enum class TableFormat { kTsv, kMarkdown, kLatex };
enum class TableStyle { kFull, kCompact };

std::optional<TableFormat> ParseTableFormat(std::string_view name);

// Full style: one row per (category, metric) with "score [lo,hi]" per
// parser and the datapoint count. Compact style: one row per set with the
// rounded averages.
std::string RenderTables(const std::vector<ParserResults> &parsers,
                         TableFormat format, TableStyle style);

}  // namespace amrprobe

#endif  // AMRPROBE_STATS_REPORT_H_

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


#include "amrprobe/metrics/reification.h"

#include <sstream>

#include "amrprobe/metrics/metric_spec.h"

namespace amrprobe {
namespace {

constexpr std::string_view kDefaultTable =
    "poss\thave-03\tARG1\tARG0\n"
    "poss\town-01\tARG1\tARG0\n"
    "poss\twrite-01\tARG1\tARG0\n"
    "location\tbe-located-at-91\tARG1\tARG2\n"
    "time\tbe-temporally-at-91\tARG1\tARG2\n"
    "instrument\thave-instrument-91\tARG1\tARG2\n"
    "purpose\thave-purpose-91\tARG1\tARG2\n"
    "manner\thave-manner-91\tARG1\tARG2\n"
    "source\tbe-from-91\tARG1\tARG2\n"
    "topic\tconcern-02\tARG0\tARG1\n"
    "mod\thave-mod-91\tARG1\tARG2\n"
    "part\thave-part-91\tARG1\tARG2\n";

}  // namespace

const ReificationTable &ReificationTable::Default() {
  static const ReificationTable *table =
      new ReificationTable(Parse(kDefaultTable));
  return *table;
}

ReificationTable ReificationTable::Parse(std::string_view text) {
  ReificationTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, '\t')) fields.push_back(field);
    if (fields.size() != 4) {
      throw MetricError("reification table line " + std::to_string(line_no) +
                        ": expected 4 fields");
    }
    for (const std::string &f : fields) {
      if (f.empty()) {
        throw MetricError("reification table line " +
                          std::to_string(line_no) + ": empty field");
      }
    }
    table.rows_.push_back({fields[0], fields[1], fields[2], fields[3]});
  }
  return table;
}

const Reification *ReificationTable::Find(
    std::string_view role, std::string_view concept_label) const {
  for (const Reification &r : rows_) {
    if (r.role == role && r.concept_label == concept_label) return &r;
  }
  return nullptr;
}

}  // namespace amrprobe

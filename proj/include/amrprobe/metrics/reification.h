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


#ifndef AMRPROBE_METRICS_REIFICATION_H_
#define AMRPROBE_METRICS_REIFICATION_H_

#include <string>
#include <string_view>
#include <vector>

namespace amrprobe {

// (x :role y) may also be written as (c / concept :source_role x
// :target_role y).
struct Reification {
  std::string role;
  std::string concept_label;
  std::string source_role;
  std::string target_role;
};

class ReificationTable {
 public:
  // Built-in table, the same rows as data/reifications.tsv.
  static const ReificationTable &Default();

  // Tab-separated rows: role, concept, source role, target role. Lines
  // starting with '#' are comments.
  static ReificationTable Parse(std::string_view text);

  const Reification *Find(std::string_view role,
                          std::string_view concept_label) const;

  const std::vector<Reification> &rows() const { return rows_; }

 private:
  std::vector<Reification> rows_;
};

}  // namespace amrprobe

#endif  // AMRPROBE_METRICS_REIFICATION_H_

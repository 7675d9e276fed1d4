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


#ifndef AMRPROBE_METRICS_ANNOTATION_IO_H_
#define AMRPROBE_METRICS_ANNOTATION_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "amrprobe/metrics/metric_spec.h"

namespace amrprobe {

// Category annotation files are tab-separated rows
//
//   entry_id  category_id  role  kind  payload
//
// where role is main, prereq or sanity. Graph payloads (exact match,
// subgraph, conjunct and unseen :opi checks) follow the row as indented
// single-line Penman fragments. Payload syntax by kind:
//
//   node         label[;label...][|nosense][|min=N]
//   edge         src|role|tgt[|reif;reif...][|nosense]
//   exact_match  -                         + 1 fragment
//   subgraph     - or nosense              + 1 fragment
//   sequence     tok;tok...
//   date         role=value;...
//   value, wiki  Penman constant, e.g. "470-5715" or North_Korea
//   ne_type      type|tok;tok...
//   conjunct     -                         + 1 fragment
//   precision    N                         + N fragments
//   unseen_opi   index                     + 1 fragment
//   imperative   predicate|subject[|nosense]
//
// '|', ';' and '\' inside tokens are escaped with '\'. Consecutive rows with
// the same entry and category form one CategoryInstance. Blank lines and
// lines starting with '#' are ignored.
std::vector<CategoryInstance> ReadAnnotations(std::string_view text);
std::vector<CategoryInstance> ReadAnnotationsFile(const std::string &path);

std::string WriteAnnotations(const std::vector<CategoryInstance> &instances);

// Row-level helpers shared with other tab-separated formats.
std::string FormatPayload(const MetricSpec &spec);
// Number of indented fragment lines that follow a row of this kind.
size_t PayloadFragmentCount(MetricKind kind, std::string_view payload);
// Builds and validates one check; fragment lines are single-line Penman.
// Throws MetricError.
MetricSpec ParseCheck(std::string_view role, std::string_view kind,
                      std::string_view payload,
                      const std::vector<std::string> &fragment_lines);

}  // namespace amrprobe

#endif  // AMRPROBE_METRICS_ANNOTATION_IO_H_

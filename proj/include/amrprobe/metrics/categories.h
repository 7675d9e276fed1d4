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


#ifndef AMRPROBE_METRICS_CATEGORIES_H_
#define AMRPROBE_METRICS_CATEGORIES_H_

#include <string>
#include <string_view>
#include <vector>

namespace amrprobe {

struct CategoryInfo {
  std::string id;
  int set = 0;  // 1..9
  std::string display_name;
  std::string set_name;
};

// Every known category, ordered by set.
const std::vector<CategoryInfo> &Categories();

// nullptr for unknown ids.
const CategoryInfo *FindCategory(std::string_view id);

std::string SetName(int set);

}  // namespace amrprobe

#endif  // AMRPROBE_METRICS_CATEGORIES_H_

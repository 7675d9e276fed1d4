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


#ifndef AMRPROBE_AMR_PENMAN_H_
#define AMRPROBE_AMR_PENMAN_H_

#include <string>
#include <string_view>
#include <vector>

#include "amrprobe/amr/graph.h"

namespace amrprobe {

// Parses one parenthesized Penman expression. A role target that names a
// declared variable is a relation; any other token is a constant. Bare
// tokens shaped like variables ("x12") that are never declared are rejected.
AmrGraph ParsePenman(std::string_view text);

enum class PenmanStyle { kCompact, kIndented };

// Depth-first serialization from the root. Relations are emitted from their
// source where possible and as inverted ":R-of" roles otherwise; repeated
// mentions are bare variables.
std::string SerializePenman(const AmrGraph &graph,
                            PenmanStyle style = PenmanStyle::kCompact);

// Variables in the order their instances are declared by SerializePenman.
std::vector<std::string> DeclarationOrder(const AmrGraph &graph);

}  // namespace amrprobe

#endif  // AMRPROBE_AMR_PENMAN_H_

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

#ifndef AMRPROBE_AMR_GRAPH_H_
#define AMRPROBE_AMR_GRAPH_H_

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace amrprobe {

// Raised for malformed graphs, Penman text and corpus files.
class AmrError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Concept label split into lemma and optional two-digit sense.
struct ConceptLabel {
  std::string full;
  std::string lemma;
  std::string sense;  // empty when the label carries no sense

  static ConceptLabel Parse(std::string_view token);

  bool has_sense() const { return !sense.empty(); }

  bool operator==(const ConceptLabel &other) const {
    return full == other.full;
  }
};

// Constant attribute value.
struct ConstantValue {
  enum class Kind { kString, kNumber, kSymbol };

  Kind kind = Kind::kSymbol;
  std::string text;  // unquoted, unescaped surface form

  // Classifies an unquoted Penman token as number or symbol.
  static ConstantValue FromBareToken(std::string_view token);
  static ConstantValue String(std::string_view text);

  // Penman surface form; string literals are quoted and escaped.
  std::string ToPenman() const;

  auto operator<=>(const ConstantValue &other) const = default;
  bool operator==(const ConstantValue &other) const = default;
};

struct Instance {
  std::string var;
  ConceptLabel label;
};

struct Relation {
  std::string source;
  std::string role;
  std::string target;

  auto operator<=>(const Relation &other) const = default;
  bool operator==(const Relation &other) const = default;
};

struct Attribute {
  std::string source;
  std::string role;
  ConstantValue value;

  auto operator<=>(const Attribute &other) const = default;
  bool operator==(const Attribute &other) const = default;
};

// Rooted AMR graph. Immutable once constructed; the constructor checks that
// every variable is declared exactly once and that the graph is connected
// when edge direction is ignored.
class AmrGraph {
 public:
  AmrGraph() = default;
  AmrGraph(std::string root, std::vector<Instance> instances,
           std::vector<Relation> relations,
           std::vector<Attribute> attributes);

  const std::string &root() const { return root_; }
  const std::vector<Instance> &instances() const { return instances_; }
  const std::vector<Relation> &relations() const { return relations_; }
  const std::vector<Attribute> &attributes() const { return attributes_; }

  bool empty() const { return instances_.empty(); }
  size_t size() const { return instances_.size(); }

  bool HasVariable(std::string_view var) const;

  // Index into instances(), or -1.
  int IndexOf(std::string_view var) const;

  // Concept of a declared variable. Throws AmrError for unknown variables.
  const ConceptLabel &ConceptOf(std::string_view var) const;

  // Number of relations targeting each instance, parallel to instances().
  std::vector<int> IncomingCounts() const;

 private:
  std::string root_;
  std::vector<Instance> instances_;
  std::vector<Relation> relations_;
  std::vector<Attribute> attributes_;
  std::unordered_map<std::string, int> index_;
};

// Roles ending in "-of" that are lexical rather than inverted.
struct NormalizeOptions {
  std::vector<std::string> keep_of_roles = {"consist-of", "prep-on-behalf-of",
                                            "prep-out-of"};
};

// Replaces every inverted relation (x :R-of y) by (y :R x).
AmrGraph Normalize(const AmrGraph &graph,
                   const NormalizeOptions &options = NormalizeOptions());

// True iff some bijection between variables maps the deduplicated instance,
// relation and attribute triples of `a` onto those of `b`, root to root.
bool IsExactMatch(const AmrGraph &a, const AmrGraph &b);

// Renames every variable using the first letter of its concept plus a
// counter, in instance order ("b", "b2", ...).
AmrGraph CanonicalizeVariables(const AmrGraph &graph);

}  // namespace amrprobe

#endif  // AMRPROBE_AMR_GRAPH_H_

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


#ifndef AMRPROBE_GENERATION_GRAMMAR_H_
#define AMRPROBE_GENERATION_GRAMMAR_H_

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "amrprobe/amr/graph.h"

namespace amrprobe {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grammar files (.sg) hold one rule per logical line; lines that start with
// whitespace continue the previous line.
//
//   LHS[features] -> rhs tokens => graph template [; clause]...
//
// Right-hand-side tokens naming a nonterminal are slots, numbered from 1
// in string order; "@NAME" copies the words of a bound phrase; anything
// else is a terminal. Features are comma-separated constraints:
//   f=v     constant         f=?x   bind variable x
//   f=x     variable value   f=x-1  variable arithmetic
//   f>v f>=v f<v f<=v f!=v   comparisons
// On the left-hand side they filter requests and fix the rule's result
// features; on slots they form the child's request, and comparisons are
// checked against the child's result.
//
// Templates are Penman with extensions: "<k>" is the root of slot k,
// "@NAME" a bound node, "(<k> :role ...)" adds edges to an existing node,
// ":op+" is the next free opN of its source, and a trailing "!" on a role
// marks the edge as the rule's target edge.
//
// Clauses: "let NAME=<k>" (visible to later slots of this rule and their
// descendants), "bind NAME=<k>" (visible for the rest of the derivation),
// "when NAME.f=v", "class C", "weight W", "order 2 1 ...".
// Directives: "include path" and "start NT".

enum class FeatureOp { kEq, kNe, kLt, kLe, kGt, kGe };

struct FeatureExpr {
  enum class Kind { kConstant, kVariable, kBind };
  Kind kind = Kind::kConstant;
  std::string text;
  int offset = 0;  // for kVariable
};

struct FeatureConstraint {
  std::string feature;
  FeatureOp op = FeatureOp::kEq;
  FeatureExpr value;
};

struct Symbol {
  enum class Kind { kTerminal, kSlot, kBoundText };
  Kind kind = Kind::kTerminal;
  std::string text;  // word, nonterminal or binding name
  std::vector<FeatureConstraint> features;
  int slot = -1;  // 0-based slot index for kSlot
};

struct TemplateValue {
  enum class Kind { kNode, kSlot, kBinding, kLocal, kConstant };
  Kind kind = Kind::kConstant;
  int index = -1;  // node index or slot index
  std::string name;
  ConstantValue constant;
};

struct TemplateEdge {
  std::string role;  // without "-of"
  bool inverse = false;
  bool next_op = false;
  bool marked = false;
  TemplateValue value;
};

struct TemplateNode {
  enum class Head { kNew, kSlot, kBinding };
  Head head = Head::kNew;
  std::string local;  // kNew
  std::string concept_label;  // kNew
  int slot = -1;  // kSlot
  std::string binding;  // kBinding
  std::vector<TemplateEdge> edges;
};

struct GraphTemplate {
  std::vector<TemplateNode> nodes;
  TemplateValue root;
};

struct BindingAction {
  bool global = false;
  std::string name;
  TemplateValue value;  // kSlot or kLocal
};

struct BindingCondition {
  std::string name;
  std::string feature;
  std::string value;
};

struct SyncRule {
  std::string lhs;
  std::vector<FeatureConstraint> lhs_features;
  std::vector<Symbol> rhs;
  int slot_count = 0;
  std::vector<int> order;  // slot expansion order
  GraphTemplate graph;
  std::vector<BindingAction> actions;
  std::vector<BindingCondition> conditions;
  std::vector<std::string> classes;
  double weight = 1.0;
  std::string source;  // file:line

  bool lexical() const { return slot_count == 0; }
  // Identity used by no-repeat classes: the root concept of a new root
  // node, otherwise the terminals.
  std::string LexicalKey() const;
};

class Grammar {
 public:
  // `loader` resolves include paths relative to `name`.
  using Loader = std::function<std::string(const std::string &path)>;

  static Grammar Parse(std::string_view text, const std::string &name = "",
                       const Loader &loader = nullptr);

  const std::vector<SyncRule> &rules() const { return rules_; }
  // The "start" directive, else the left-hand side of the first rule.
  const std::string &start() const { return start_; }
  bool HasNonterminal(std::string_view nt) const;
  const std::vector<int> &RulesFor(std::string_view nt) const;

 private:
  std::vector<SyncRule> rules_;
  std::map<std::string, std::vector<int>, std::less<>> by_lhs_;
  std::string start_;
};

// Reads a grammar file, resolving includes against its directory.
Grammar LoadGrammar(const std::string &path);

// Parses a template on its own; slot references must be below
// `slot_count`.
GraphTemplate ParseTemplate(std::string_view text, int slot_count);

}  // namespace amrprobe

#endif  // AMRPROBE_GENERATION_GRAMMAR_H_

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


#include "amrprobe/amr/penman.h"

#include <cctype>
#include <regex>
#include <unordered_set>
#include <utility>

namespace amrprobe {

namespace {

enum class TokenType { kOpen, kClose, kSlash, kRole, kString, kSymbol, kEnd };

struct Token {
  TokenType type;
  std::string text;
  size_t pos;
};

bool IsDelimiter(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
         c == ')' || c == '"' || c == '/';
}

std::vector<Token> Tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(') {
      tokens.push_back({TokenType::kOpen, "(", i++});
    } else if (c == ')') {
      tokens.push_back({TokenType::kClose, ")", i++});
    } else if (c == '/') {
      tokens.push_back({TokenType::kSlash, "/", i++});
    } else if (c == '"') {
      size_t start = i++;
      std::string value;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '\\' && i + 1 < text.size()) {
          value += text[i + 1];
          i += 2;
        } else if (text[i] == '"') {
          ++i;
          closed = true;
          break;
        } else {
          value += text[i++];
        }
      }
      if (!closed) {
        throw AmrError("unterminated string literal at offset " +
                       std::to_string(start));
      }
      tokens.push_back({TokenType::kString, value, start});
    } else if (c == ':') {
      size_t start = i++;
      while (i < text.size() && !IsDelimiter(text[i])) ++i;
      std::string role(text.substr(start + 1, i - start - 1));
      if (role.empty()) {
        throw AmrError("empty role at offset " + std::to_string(start));
      }
      tokens.push_back({TokenType::kRole, role, start});
    } else {
      size_t start = i;
      while (i < text.size() && !IsDelimiter(text[i])) ++i;
      tokens.push_back(
          {TokenType::kSymbol, std::string(text.substr(start, i - start)),
           start});
    }
  }
  tokens.push_back({TokenType::kEnd, "", text.size()});
  return tokens;
}

// Edge collected during parsing, before targets are classified.
struct PendingEdge {
  std::string source;
  std::string role;
  enum { kNode, kString, kBare } kind;
  std::string target;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  AmrGraph Parse() {
    std::string root = ParseNode();
    if (Peek().type != TokenType::kEnd) {
      throw AmrError("unexpected trailing input at offset " +
                     std::to_string(Peek().pos));
    }
    static const std::regex kVariableShape("[a-z][0-9]+");
    std::vector<Relation> relations;
    std::vector<Attribute> attributes;
    for (PendingEdge &e : edges_) {
      switch (e.kind) {
        case PendingEdge::kNode:
          relations.push_back({e.source, e.role, e.target});
          break;
        case PendingEdge::kString:
          attributes.push_back(
              {e.source, e.role, ConstantValue::String(e.target)});
          break;
        case PendingEdge::kBare:
          if (declared_.count(e.target)) {
            relations.push_back({e.source, e.role, e.target});
          } else if (std::regex_match(e.target, kVariableShape)) {
            throw AmrError("relation to undeclared variable " + e.target);
          } else {
            attributes.push_back(
                {e.source, e.role, ConstantValue::FromBareToken(e.target)});
          }
          break;
      }
    }
    return AmrGraph(root, std::move(instances_), std::move(relations),
                    std::move(attributes));
  }

 private:
  const Token &Peek() const { return tokens_[pos_]; }

  const Token &Next() {
    const Token &t = tokens_[pos_];
    if (t.type != TokenType::kEnd) ++pos_;
    return t;
  }

  const Token &Expect(TokenType type, const char *what) {
    const Token &t = Next();
    if (t.type == type) return t;
    if (t.type == TokenType::kEnd) throw AmrError("unbalanced parentheses");
    throw AmrError(std::string("expected ") + what + " at offset " +
                   std::to_string(t.pos) + ", found '" + t.text + "'");
  }

  std::string ParseNode() {
    Expect(TokenType::kOpen, "'('");
    std::string var = Expect(TokenType::kSymbol, "variable").text;
    Expect(TokenType::kSlash, "'/'");
    const Token &concept_token = Next();
    if (concept_token.type != TokenType::kSymbol &&
        concept_token.type != TokenType::kString) {
      if (concept_token.type == TokenType::kEnd) {
        throw AmrError("unbalanced parentheses");
      }
      throw AmrError("missing concept for variable " + var);
    }
    if (!declared_.insert(var).second) {
      throw AmrError("duplicate instance declaration for variable " + var);
    }
    instances_.push_back({var, ConceptLabel::Parse(concept_token.text)});
    while (true) {
      const Token &t = Peek();
      if (t.type == TokenType::kClose) {
        Next();
        return var;
      }
      if (t.type == TokenType::kEnd) throw AmrError("unbalanced parentheses");
      std::string role = Expect(TokenType::kRole, "role").text;
      const Token &target = Peek();
      if (target.type == TokenType::kOpen) {
        size_t slot = edges_.size();
        edges_.push_back({var, role, PendingEdge::kNode, ""});
        std::string child = ParseNode();
        edges_[slot].target = child;
      } else if (target.type == TokenType::kString) {
        edges_.push_back({var, role, PendingEdge::kString, Next().text});
      } else if (target.type == TokenType::kSymbol) {
        edges_.push_back({var, role, PendingEdge::kBare, Next().text});
      } else if (target.type == TokenType::kEnd) {
        throw AmrError("unbalanced parentheses");
      } else {
        throw AmrError("missing target for role :" + role);
      }
    }
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  std::vector<Instance> instances_;
  std::vector<PendingEdge> edges_;
  std::unordered_set<std::string> declared_;
};

std::string InvertRole(const std::string &role) {
  static const NormalizeOptions kDefaults;
  bool keep = false;
  for (const std::string &r : kDefaults.keep_of_roles) keep |= r == role;
  if (!keep && role.size() > 3 &&
      role.compare(role.size() - 3, 3, "-of") == 0) {
    return role.substr(0, role.size() - 3);
  }
  return role + "-of";
}

class Writer {
 public:
  Writer(const AmrGraph &graph, PenmanStyle style)
      : graph_(graph),
        style_(style),
        declared_(graph.size(), false),
        emitted_(graph.relations().size(), false),
        forward_(graph.size(), false) {
    // Nodes reachable from the root along stored edge directions are never
    // introduced through an inverted role.
    std::vector<int> stack = {graph.IndexOf(graph.root())};
    forward_[stack.back()] = true;
    while (!stack.empty()) {
      const std::string &var = graph.instances()[stack.back()].var;
      stack.pop_back();
      for (const Relation &r : graph.relations()) {
        int t = graph.IndexOf(r.target);
        if (r.source == var && !forward_[t]) {
          forward_[t] = true;
          stack.push_back(t);
        }
      }
    }
  }

  std::string Run() {
    Visit(graph_.root(), 0);
    if (order_.size() != graph_.size()) throw AmrError("disconnected graph");
    return out_;
  }

  const std::vector<std::string> &order() const { return order_; }

 private:
  void Break(int depth) {
    if (style_ == PenmanStyle::kIndented) {
      out_ += '\n';
      out_.append(6 * depth, ' ');
    } else {
      out_ += ' ';
    }
  }

  void Target(const std::string &var, int depth) {
    if (declared_[graph_.IndexOf(var)]) {
      out_ += var;
    } else {
      Visit(var, depth);
    }
  }

  void Visit(const std::string &var, int depth) {
    declared_[graph_.IndexOf(var)] = true;
    order_.push_back(var);
    out_ += "(" + var + " / " + graph_.ConceptOf(var).full;
    for (const Attribute &a : graph_.attributes()) {
      if (a.source != var) continue;
      Break(depth + 1);
      out_ += ":" + a.role + " " + a.value.ToPenman();
    }
    const std::vector<Relation> &relations = graph_.relations();
    for (size_t i = 0; i < relations.size(); ++i) {
      if (emitted_[i]) continue;
      const Relation &r = relations[i];
      if (r.source == var) {
        emitted_[i] = true;
        Break(depth + 1);
        out_ += ":" + r.role + " ";
        Target(r.target, depth + 1);
      } else if (r.target == var && !declared_[graph_.IndexOf(r.source)] &&
                 !forward_[graph_.IndexOf(r.source)]) {
        emitted_[i] = true;
        Break(depth + 1);
        out_ += ":" + InvertRole(r.role) + " ";
        Target(r.source, depth + 1);
      }
    }
    out_ += ")";
  }

  const AmrGraph &graph_;
  PenmanStyle style_;
  std::vector<bool> declared_;
  std::vector<bool> emitted_;
  std::vector<bool> forward_;
  std::vector<std::string> order_;
  std::string out_;
};

}  // namespace

AmrGraph ParsePenman(std::string_view text) {
  std::vector<Token> tokens = Tokenize(text);
  if (tokens.size() == 1) throw AmrError("empty input");
  return Parser(std::move(tokens)).Parse();
}

std::string SerializePenman(const AmrGraph &graph, PenmanStyle style) {
  if (graph.empty()) throw AmrError("cannot serialize an empty graph");
  return Writer(graph, style).Run();
}

std::vector<std::string> DeclarationOrder(const AmrGraph &graph) {
  if (graph.empty()) return {};
  Writer writer(graph, PenmanStyle::kCompact);
  writer.Run();
  return writer.order();
}

}  // namespace amrprobe

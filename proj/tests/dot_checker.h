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


// Recursive-descent recognizer for the Graphviz DOT language (graph, node,
// edge, attribute and subgraph statements; ID, quoted string and numeral
// identifiers). HTML labels and ports are not supported.

#ifndef AMRPROBE_TESTS_DOT_CHECKER_H_
#define AMRPROBE_TESTS_DOT_CHECKER_H_

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace amrprobe {
namespace testing {

class DotChecker {
 public:
  // Empty string on success, otherwise a description of the first error.
  static std::string Check(std::string_view text) {
    DotChecker c;
    if (!c.Tokenize(text)) return c.error_;
    if (!c.Graph()) return c.error_.empty() ? "syntax error" : c.error_;
    if (c.pos_ != c.tokens_.size()) return "trailing tokens";
    return "";
  }

 private:
  enum Kind { kId, kPunct, kArrow };
  struct Token {
    Kind kind;
    std::string text;
  };

  bool Tokenize(std::string_view s) {
    size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '"') {
        std::string text;
        ++i;
        while (i < s.size() && s[i] != '"') {
          if (s[i] == '\\' && i + 1 < s.size()) text += s[i++];
          text += s[i++];
        }
        if (i >= s.size()) return Fail("unterminated string");
        ++i;
        tokens_.push_back({kId, text});
      } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
        tokens_.push_back({kArrow, "->"});
        i += 2;
      } else if (std::string_view("{}[];,=").find(c) != std::string_view::npos) {
        tokens_.push_back({kPunct, std::string(1, c)});
        ++i;
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                 c == '.' || c == '-') {
        size_t start = i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) ||
                s[i] == '_' || s[i] == '.' ||
                (s[i] == '-' && !(i + 1 < s.size() && s[i + 1] == '>')))) {
          ++i;
        }
        tokens_.push_back({kId, std::string(s.substr(start, i - start))});
      } else {
        return Fail(std::string("unexpected character '") + c + "'");
      }
    }
    return true;
  }

  bool Fail(const std::string &message) {
    if (error_.empty()) error_ = message;
    return false;
  }
  bool Peek(std::string_view text) const {
    return pos_ < tokens_.size() && tokens_[pos_].kind != kId &&
           tokens_[pos_].text == text;
  }
  bool Accept(std::string_view text) {
    if (!Peek(text)) return false;
    ++pos_;
    return true;
  }
  bool Expect(std::string_view text) {
    return Accept(text) || Fail("expected '" + std::string(text) + "'");
  }
  bool PeekKeyword(std::string_view word) const {
    return pos_ < tokens_.size() && tokens_[pos_].kind == kId &&
           tokens_[pos_].text == word;
  }
  bool Id() {
    if (pos_ < tokens_.size() && tokens_[pos_].kind == kId) {
      ++pos_;
      return true;
    }
    return Fail("expected identifier");
  }

  bool Graph() {
    if (PeekKeyword("strict")) ++pos_;
    if (!PeekKeyword("digraph") && !PeekKeyword("graph")) {
      return Fail("expected graph or digraph");
    }
    ++pos_;
    if (pos_ < tokens_.size() && tokens_[pos_].kind == kId) ++pos_;
    return Expect("{") && StmtList() && Expect("}");
  }

  bool StmtList() {
    while (!Peek("}")) {
      if (pos_ >= tokens_.size()) return Fail("unexpected end of input");
      if (!Stmt()) return false;
      Accept(";");
    }
    return true;
  }

  bool AttrList() {
    while (Accept("[")) {
      while (!Peek("]")) {
        if (!Id() || !Expect("=") || !Id()) return false;
        if (!Accept(",")) Accept(";");
      }
      if (!Expect("]")) return false;
    }
    return true;
  }

  bool Subgraph() {
    if (PeekKeyword("subgraph")) {
      ++pos_;
      if (pos_ < tokens_.size() && tokens_[pos_].kind == kId) ++pos_;
    }
    return Expect("{") && StmtList() && Expect("}");
  }

  bool Operand() {
    if (PeekKeyword("subgraph") || Peek("{")) return Subgraph();
    return Id();
  }

  bool Stmt() {
    if (PeekKeyword("graph") || PeekKeyword("node") || PeekKeyword("edge")) {
      ++pos_;
      return Peek("[") ? AttrList() : Fail("expected attribute list");
    }
    if (!Operand()) return false;
    if (Accept("=")) return Id();
    while (pos_ < tokens_.size() && tokens_[pos_].kind == kArrow) {
      ++pos_;
      if (!Operand()) return false;
    }
    return AttrList();
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  std::string error_;
};

}  // namespace testing
}  // namespace amrprobe

#endif  // AMRPROBE_TESTS_DOT_CHECKER_H_

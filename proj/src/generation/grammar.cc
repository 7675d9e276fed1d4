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


#include "amrprobe/generation/grammar.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <set>

#include "amrprobe/amr/corpus.h"

namespace amrprobe {
namespace {

struct Line {
  std::string text;
  std::string source;
};

[[noreturn]] void Fail(const std::string &source, const std::string &what) {
  throw GenerationError(source + ": " + what);
}

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool IsIdentifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' &&
        c != '-') {
      return false;
    }
  }
  return true;
}

bool ParseInt(std::string_view s, int *out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Splits on `sep` outside double quotes.
std::vector<std::string> SplitOutsideQuotes(std::string_view s, char sep) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '\\' && quoted && i + 1 < s.size()) {
      out.back() += c;
      out.back() += s[++i];
      continue;
    }
    if (c == '"') quoted = !quoted;
    if (c == sep && !quoted) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::vector<std::string> Words(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void CollectLines(std::string_view text, const std::string &name,
                  const Grammar::Loader &loader, int depth,
                  std::vector<Line> &out, std::string &start) {
  if (depth > 16) Fail(name, "include nesting too deep");
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string raw(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    std::string source = name + ":" + std::to_string(line_no);
    std::string trimmed = Trim(raw);
    if (trimmed.empty() || trimmed[0] == '#') {
      if (pos > text.size()) break;
      continue;
    }
    if (raw[0] == ' ' || raw[0] == '\t') {
      if (out.empty()) Fail(source, "continuation without a rule");
      out.back().text += " " + trimmed;
    } else if (trimmed.rfind("include ", 0) == 0) {
      if (!loader) Fail(source, "include without a file loader");
      std::string path = Trim(trimmed.substr(8));
      CollectLines(loader(path), path, loader, depth + 1, out, start);
    } else if (trimmed.rfind("start ", 0) == 0) {
      start = Trim(trimmed.substr(6));
    } else {
      out.push_back({trimmed, source});
    }
    if (pos > text.size()) break;
  }
}

// "Name[...]" -> ("Name", "..."); no brackets -> ("Name", "").
std::pair<std::string, std::string> SplitSymbol(const std::string &token,
                                                const std::string &source) {
  size_t open = token.find('[');
  if (open == std::string::npos) return {token, ""};
  if (token.back() != ']') Fail(source, "unclosed feature list in " + token);
  return {token.substr(0, open), token.substr(open + 1, token.size() - open - 2)};
}

std::vector<FeatureConstraint> ParseFeatures(const std::string &text,
                                             std::set<std::string> &vars,
                                             const std::string &source) {
  std::vector<FeatureConstraint> out;
  if (Trim(text).empty()) return out;
  for (const std::string &raw : SplitOutsideQuotes(text, ',')) {
    std::string item = Trim(raw);
    FeatureConstraint c;
    static const std::pair<const char *, FeatureOp> kOps[] = {
        {"!=", FeatureOp::kNe}, {">=", FeatureOp::kGe}, {"<=", FeatureOp::kLe},
        {"=", FeatureOp::kEq},  {">", FeatureOp::kGt},  {"<", FeatureOp::kLt}};
    size_t at = std::string::npos;
    size_t op_len = 0;
    for (const auto &[text_op, op] : kOps) {
      size_t p = item.find(text_op);
      if (p != std::string::npos && (at == std::string::npos || p < at ||
                                     (p == at && strlen(text_op) > op_len))) {
        at = p;
        op_len = strlen(text_op);
        c.op = op;
      }
    }
    if (at == std::string::npos) {
      // Bare feature name: shorthand for f=?f.
      if (!IsIdentifier(item)) Fail(source, "bad feature '" + item + "'");
      c.feature = item;
      c.value = {FeatureExpr::Kind::kBind, item, 0};
      vars.insert(item);
      out.push_back(c);
      continue;
    }
    c.feature = Trim(item.substr(0, at));
    std::string value = Trim(item.substr(at + op_len));
    if (!IsIdentifier(c.feature) || value.empty()) {
      Fail(source, "bad feature '" + item + "'");
    }
    if (value[0] == '?') {
      if (c.op != FeatureOp::kEq) Fail(source, "?var needs '=' in " + item);
      c.value = {FeatureExpr::Kind::kBind, value.substr(1), 0};
      vars.insert(value.substr(1));
    } else {
      size_t sign = value.find_first_of("+-", 1);
      std::string base = value.substr(0, sign);
      int offset = 0;
      if (vars.count(base) &&
          (sign == std::string::npos ||
           ParseInt(value.substr(sign + (value[sign] == '+')), &offset))) {
        c.value = {FeatureExpr::Kind::kVariable, base, offset};
      } else {
        c.value = {FeatureExpr::Kind::kConstant, value, 0};
      }
    }
    out.push_back(c);
  }
  return out;
}

class TemplateParser {
 public:
  TemplateParser(std::string_view text, int slot_count, std::string source)
      : text_(text), slot_count_(slot_count), source_(std::move(source)) {}

  GraphTemplate Parse() {
    GraphTemplate t;
    t.root = ParseValue(t);
    Skip();
    if (pos_ != text_.size()) Error("trailing text in template");
    if (t.root.kind == TemplateValue::Kind::kConstant) {
      Error("template root must be a node, slot or binding");
    }
    // Bare tokens naming a declared node are references to it.
    std::map<std::string, int> locals;
    for (size_t i = 0; i < t.nodes.size(); ++i) {
      if (t.nodes[i].head == TemplateNode::Head::kNew) {
        if (!locals.emplace(t.nodes[i].local, i).second) {
          Error("node '" + t.nodes[i].local + "' declared twice");
        }
      }
    }
    for (TemplateNode &node : t.nodes) {
      for (TemplateEdge &edge : node.edges) {
        TemplateValue &v = edge.value;
        if (v.kind == TemplateValue::Kind::kLocal) {
          auto it = locals.find(v.name);
          if (it != locals.end()) {
            v.index = it->second;
          } else {
            v.kind = TemplateValue::Kind::kConstant;
            v.constant = ConstantValue::FromBareToken(v.name);
          }
        }
        if (v.kind == TemplateValue::Kind::kConstant && edge.inverse) {
          Error("inverted role :" + edge.role + "-of on a constant");
        }
      }
    }
    return t;
  }

 private:
  [[noreturn]] void Error(const std::string &what) {
    Fail(source_, what + " in template '" + std::string(text_) + "'");
  }

  void Skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(
                                      text_[pos_]))) {
      ++pos_;
    }
  }

  std::string Token() {
    Skip();
    size_t b = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(
                                      text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    return std::string(text_.substr(b, pos_ - b));
  }

  int ParseSlot(const std::string &token) {
    int k = 0;
    if (token.size() < 3 || token.back() != '>' ||
        !ParseInt(token.substr(1, token.size() - 2), &k) || k < 1 ||
        k > slot_count_) {
      Error("bad slot reference '" + token + "'");
    }
    return k - 1;
  }

  TemplateValue ParseValue(GraphTemplate &t) {
    Skip();
    if (pos_ >= text_.size()) Error("unexpected end");
    TemplateValue v;
    char c = text_[pos_];
    if (c == '(') {
      v.kind = TemplateValue::Kind::kNode;
      v.index = ParseNode(t);
      return v;
    }
    if (c == '"') {
      std::string s;
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        s += text_[pos_++];
      }
      if (pos_ >= text_.size()) Error("unterminated string");
      ++pos_;
      v.kind = TemplateValue::Kind::kConstant;
      v.constant = ConstantValue::String(s);
      return v;
    }
    std::string token = Token();
    if (token.empty()) Error("expected a value");
    if (token[0] == '<') {
      v.kind = TemplateValue::Kind::kSlot;
      v.index = ParseSlot(token);
    } else if (token[0] == '@') {
      v.kind = TemplateValue::Kind::kBinding;
      v.name = token.substr(1);
    } else {
      v.kind = TemplateValue::Kind::kLocal;
      v.name = token;
    }
    return v;
  }

  int ParseNode(GraphTemplate &t) {
    ++pos_;  // '('
    TemplateNode node;
    std::string head = Token();
    if (head.empty()) Error("empty node");
    if (head[0] == '<') {
      node.head = TemplateNode::Head::kSlot;
      node.slot = ParseSlot(head);
    } else if (head[0] == '@') {
      node.head = TemplateNode::Head::kBinding;
      node.binding = head.substr(1);
    } else {
      node.local = head;
      if (Token() != "/") Error("expected '/' after " + head);
      node.concept_label = Token();
      if (node.concept_label.empty()) Error("missing concept");
    }
    int index = t.nodes.size();
    t.nodes.push_back(node);
    while (true) {
      Skip();
      if (pos_ >= text_.size()) Error("unclosed node");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      std::string role = Token();
      if (role.size() < 2 || role[0] != ':') Error("expected a role");
      TemplateEdge edge;
      role = role.substr(1);
      if (role.back() == '!') {
        edge.marked = true;
        role.pop_back();
      }
      static const NormalizeOptions kNormalize;
      if (role.size() > 3 && role.compare(role.size() - 3, 3, "-of") == 0 &&
          std::find(kNormalize.keep_of_roles.begin(),
                    kNormalize.keep_of_roles.end(),
                    role) == kNormalize.keep_of_roles.end()) {
        edge.inverse = true;
        role = role.substr(0, role.size() - 3);
      }
      if (role == "op+") {
        edge.next_op = true;
        role = "op";
      }
      edge.role = role;
      edge.value = ParseValue(t);
      t.nodes[index].edges.push_back(std::move(edge));
    }
    return index;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int slot_count_;
  std::string source_;
};

TemplateValue ParseActionTarget(const std::string &text, const SyncRule &rule,
                                const std::string &source) {
  TemplateValue v;
  if (!text.empty() && text[0] == '<') {
    int k = 0;
    if (text.back() != '>' || !ParseInt(text.substr(1, text.size() - 2), &k) ||
        k < 1 || k > rule.slot_count) {
      Fail(source, "bad slot reference '" + text + "'");
    }
    v.kind = TemplateValue::Kind::kSlot;
    v.index = k - 1;
    return v;
  }
  for (size_t i = 0; i < rule.graph.nodes.size(); ++i) {
    const TemplateNode &n = rule.graph.nodes[i];
    if (n.head == TemplateNode::Head::kNew && n.local == text) {
      v.kind = TemplateValue::Kind::kLocal;
      v.index = i;
      return v;
    }
  }
  Fail(source, "binding target '" + text + "' is not a slot or node");
}

SyncRule ParseRule(const Line &line, const std::set<std::string> &nts) {
  const std::string &src = line.source;
  size_t arrow = line.text.find("->");
  size_t fat = line.text.find("=>");
  if (arrow == std::string::npos || fat == std::string::npos || fat < arrow) {
    Fail(src, "expected 'LHS -> rhs => template'");
  }
  SyncRule rule;
  rule.source = src;
  std::set<std::string> vars;
  auto [lhs, lhs_feats] = SplitSymbol(Trim(line.text.substr(0, arrow)), src);
  if (!IsIdentifier(lhs)) Fail(src, "bad left-hand side '" + lhs + "'");
  rule.lhs = lhs;
  rule.lhs_features = ParseFeatures(lhs_feats, vars, src);
  // Requested feature values are visible to slots under the feature name.
  for (const FeatureConstraint &c : rule.lhs_features) vars.insert(c.feature);
  for (const FeatureConstraint &c : rule.lhs_features) {
    if (c.value.kind == FeatureExpr::Kind::kVariable) {
      Fail(src, "left-hand features take constants or ?vars");
    }
    if (c.op != FeatureOp::kEq &&
        c.value.kind != FeatureExpr::Kind::kConstant) {
      Fail(src, "left-hand comparisons need a constant");
    }
  }

  for (const std::string &token :
       Words(line.text.substr(arrow + 2, fat - arrow - 2))) {
    Symbol sym;
    auto [name, feats] = SplitSymbol(token, src);
    if (token[0] == '@' && token.size() > 1) {
      sym.kind = Symbol::Kind::kBoundText;
      sym.text = token.substr(1);
    } else if (nts.count(name)) {
      sym.kind = Symbol::Kind::kSlot;
      sym.text = name;
      sym.slot = rule.slot_count++;
      sym.features = ParseFeatures(feats, vars, src);
    } else if (token.find('[') != std::string::npos) {
      Fail(src, "unknown nonterminal '" + name + "'");
    } else {
      sym.text = token;
    }
    rule.rhs.push_back(std::move(sym));
  }

  std::vector<std::string> parts =
      SplitOutsideQuotes(line.text.substr(fat + 2), ';');
  rule.graph = TemplateParser(Trim(parts[0]), rule.slot_count, src).Parse();
  for (size_t i = 1; i < parts.size(); ++i) {
    std::vector<std::string> w = Words(parts[i]);
    if (w.empty()) continue;
    const std::string &kw = w[0];
    if ((kw == "let" || kw == "bind") && w.size() == 2) {
      size_t eq = w[1].find('=');
      if (eq == std::string::npos) Fail(src, kw + " needs NAME=target");
      rule.actions.push_back({kw == "bind", w[1].substr(0, eq),
                              ParseActionTarget(w[1].substr(eq + 1), rule,
                                                src)});
    } else if (kw == "when" && w.size() >= 2) {
      for (size_t j = 1; j < w.size(); ++j) {
        size_t dot = w[j].find('.'), eq = w[j].find('=');
        if (dot == std::string::npos || eq == std::string::npos || eq < dot) {
          Fail(src, "when needs NAME.feature=value");
        }
        rule.conditions.push_back({w[j].substr(0, dot),
                                   w[j].substr(dot + 1, eq - dot - 1),
                                   w[j].substr(eq + 1)});
      }
    } else if (kw == "class" && w.size() >= 2) {
      rule.classes.insert(rule.classes.end(), w.begin() + 1, w.end());
    } else if (kw == "weight" && w.size() == 2) {
      try {
        rule.weight = std::stod(w[1]);
      } catch (const std::exception &) {
        rule.weight = -1;
      }
      if (!(rule.weight > 0)) Fail(src, "weight must be positive");
    } else if (kw == "order" && w.size() >= 2) {
      for (size_t j = 1; j < w.size(); ++j) {
        int k = 0;
        if (!ParseInt(w[j], &k) || k < 1 || k > rule.slot_count) {
          Fail(src, "bad slot in order clause");
        }
        rule.order.push_back(k - 1);
      }
    } else {
      Fail(src, "unknown clause '" + Trim(parts[i]) + "'");
    }
  }
  if (rule.order.empty()) {
    for (int k = 0; k < rule.slot_count; ++k) rule.order.push_back(k);
  } else {
    std::vector<int> sorted = rule.order;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < rule.slot_count; ++k) {
      if (static_cast<int>(sorted.size()) != rule.slot_count || sorted[k] != k) {
        Fail(src, "order clause must list every slot once");
      }
    }
  }
  return rule;
}

}  // namespace

std::string SyncRule::LexicalKey() const {
  if (graph.root.kind == TemplateValue::Kind::kNode &&
      graph.nodes[graph.root.index].head == TemplateNode::Head::kNew) {
    return graph.nodes[graph.root.index].concept_label;
  }
  std::string out;
  for (const Symbol &s : rhs) {
    if (s.kind == Symbol::Kind::kTerminal) out += (out.empty() ? "" : " ") + s.text;
  }
  return out;
}

Grammar Grammar::Parse(std::string_view text, const std::string &name,
                       const Loader &loader) {
  std::vector<Line> lines;
  Grammar g;
  CollectLines(text, name.empty() ? "grammar" : name, loader, 0, lines,
               g.start_);
  std::set<std::string> nts;
  for (const Line &line : lines) {
    size_t arrow = line.text.find("->");
    if (arrow == std::string::npos) {
      Fail(line.source, "expected 'LHS -> rhs => template'");
    }
    nts.insert(SplitSymbol(Trim(line.text.substr(0, arrow)), line.source).first);
  }
  for (const Line &line : lines) {
    g.by_lhs_[SplitSymbol(Trim(line.text.substr(0, line.text.find("->"))),
                          line.source)
                  .first]
        .push_back(g.rules_.size());
    g.rules_.push_back(ParseRule(line, nts));
  }
  if (g.start_.empty() && !g.rules_.empty()) g.start_ = g.rules_[0].lhs;
  if (!g.start_.empty() && !nts.count(g.start_)) {
    throw GenerationError(name + ": start symbol " + g.start_ +
                          " has no rules");
  }
  return g;
}

bool Grammar::HasNonterminal(std::string_view nt) const {
  return by_lhs_.find(nt) != by_lhs_.end();
}

const std::vector<int> &Grammar::RulesFor(std::string_view nt) const {
  static const std::vector<int> kNone;
  auto it = by_lhs_.find(nt);
  return it == by_lhs_.end() ? kNone : it->second;
}

Grammar LoadGrammar(const std::string &path) {
  namespace fs = std::filesystem;
  fs::path base = fs::path(path).parent_path();
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const std::exception &e) {
    throw GenerationError(e.what());
  }
  return Grammar::Parse(text, fs::path(path).filename().string(),
                        [base](const std::string &include) {
                          try {
                            return ReadFile((base / include).string());
                          } catch (const std::exception &e) {
                            throw GenerationError(e.what());
                          }
                        });
}

GraphTemplate ParseTemplate(std::string_view text, int slot_count) {
  return TemplateParser(text, slot_count, "template").Parse();
}

}  // namespace amrprobe

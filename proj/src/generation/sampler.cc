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


#include "amrprobe/generation/sampler.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <optional>
#include <tuple>

#include "amrprobe/amr/penman.h"

namespace amrprobe {
namespace {

bool ToInt(const std::string &s, long *out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

bool Compare(const std::string &a, FeatureOp op, const std::string &b) {
  long x, y;
  int cmp;
  if (ToInt(a, &x) && ToInt(b, &y)) {
    cmp = x < y ? -1 : (x > y ? 1 : 0);
  } else {
    cmp = a.compare(b);
    cmp = cmp < 0 ? -1 : (cmp > 0 ? 1 : 0);
  }
  switch (op) {
    case FeatureOp::kEq: return cmp == 0;
    case FeatureOp::kNe: return cmp != 0;
    case FeatureOp::kLt: return cmp < 0;
    case FeatureOp::kLe: return cmp <= 0;
    case FeatureOp::kGt: return cmp > 0;
    case FeatureOp::kGe: return cmp >= 0;
  }
  return false;
}

struct Constraint {
  std::string feature;
  FeatureOp op;
  std::string value;
};

using Features = std::map<std::string, std::string>;

struct Bound {
  int node = -1;
  std::vector<std::string> tokens;
  Features features;
};

using Scope = std::map<std::string, Bound>;

struct Result {
  int root = -1;
  std::vector<std::string> tokens;
  Features features;
};

struct EdgeRecord {
  int source;
  std::string role;
  int target;  // -1 for attributes
  ConstantValue value;
};

struct State {
  std::vector<std::string> concepts;
  std::vector<EdgeRecord> edges;
  std::vector<size_t> marked;
  std::vector<int> lexical;
  std::set<std::pair<std::string, std::string>> used;
  std::map<std::string, Bound> globals;
};

struct Snapshot {
  size_t concepts, edges, marked, lexical;
  std::set<std::pair<std::string, std::string>> used;
  std::map<std::string, Bound> globals;
};

enum class Mode { kSample, kCover, kEnumerate };

bool IsPunct(const std::string &t) {
  return t == "," || t == "." || t == "?" || t == "!" || t == ";" ||
         t == ":";
}

}  // namespace

std::string Realize(const std::vector<std::string> &tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string t = tokens[i];
    if ((t == "a" || t == "A") && i + 1 < tokens.size() &&
        !tokens[i + 1].empty() &&
        std::string("aeiouAEIOU").find(tokens[i + 1][0]) != std::string::npos) {
      t += "n";
    }
    if (!out.empty() && !IsPunct(t)) out += ' ';
    out += t;
  }
  if (!out.empty()) {
    out[0] = std::toupper(static_cast<unsigned char>(out[0]));
  }
  return out;
}

class Search {
 public:
  using Cont = std::function<bool(const Result &)>;

  Search(const Sampler &sampler, Mode mode, Rng *rng,
         const std::set<std::string> *covered)
      : s_(sampler), g_(sampler.grammar_), mode_(mode), rng_(rng),
        covered_(covered) {}

  State state;

  bool Expand(const std::string &nt, const std::vector<Constraint> &request,
              const Scope &lets, const Cont &k) {
    for (int r : Order(nt)) {
      Snapshot snap = Take();
      if (TryRule(r, request, lets, k)) return true;
      Restore(snap);
    }
    return false;
  }

 private:
  struct Ctx {
    int rule;
    Features env;
    Features result_features;
    Scope inherited;  // scope at rule start, used by the template
    Scope lets;       // scope for the slots
    std::vector<int> created;
    std::vector<Result> slots;
    std::vector<std::string> deferred;  // ?x vars bound by the result
  };

  Snapshot Take() const {
    return {state.concepts.size(), state.edges.size(), state.marked.size(),
            state.lexical.size(), state.used, state.globals};
  }

  void Restore(const Snapshot &snap) {
    state.concepts.resize(snap.concepts);
    state.edges.resize(snap.edges);
    state.marked.resize(snap.marked);
    state.lexical.resize(snap.lexical);
    state.used = snap.used;
    state.globals = snap.globals;
  }

  size_t Uncovered(int rule) const {
    size_t n = 0;
    for (const std::string &key : s_.reach_keys_[rule]) {
      if (covered_->count(key)) continue;
      bool used = false;
      for (int lex : state.lexical) {
        used |= g_.rules()[lex].LexicalKey() == key;
      }
      if (!used) ++n;
    }
    return n;
  }

  std::vector<int> Order(const std::string &nt) {
    std::vector<int> rules = g_.RulesFor(nt);
    if (mode_ == Mode::kEnumerate) return rules;
    // Weighted order without replacement: sort by log(u) / w. In cover
    // mode, rules that still reach uncovered vocabulary go first.
    std::vector<std::tuple<bool, double, int>> keyed;
    for (int r : rules) {
      double u = rng_->Real();
      bool fresh = mode_ == Mode::kCover && Uncovered(r) > 0;
      keyed.emplace_back(fresh, std::log(u + 1e-300) / g_.rules()[r].weight,
                         r);
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto &a, const auto &b) { return a > b; });
    rules.clear();
    for (const auto &k : keyed) rules.push_back(std::get<2>(k));
    return rules;
  }

  const Bound *Lookup(const std::string &name, const Scope &lets) const {
    auto it = lets.find(name);
    if (it != lets.end()) return &it->second;
    auto git = state.globals.find(name);
    return git == state.globals.end() ? nullptr : &git->second;
  }

  bool Resolve(const FeatureExpr &e, const Features &env,
               std::string *out) const {
    if (e.kind == FeatureExpr::Kind::kConstant) {
      *out = e.text;
      return true;
    }
    auto it = env.find(e.text);
    if (it == env.end()) return false;
    if (e.kind == FeatureExpr::Kind::kVariable && e.offset != 0) {
      long v;
      if (!ToInt(it->second, &v)) return false;
      *out = std::to_string(v + e.offset);
    } else {
      *out = it->second;
    }
    return true;
  }

  bool TryRule(int r, const std::vector<Constraint> &request,
               const Scope &lets, const Cont &k) {
    if (++steps_ > s_.step_budget_) {
      throw GenerationError("constraint-unsatisfiable: step budget exhausted");
    }
    const SyncRule &rule = g_.rules()[r];
    Ctx ctx;
    ctx.rule = r;
    ctx.inherited = lets;
    ctx.lets = lets;

    // Requested values pass through and are visible by feature name.
    for (const Constraint &c : request) {
      if (c.op == FeatureOp::kEq) {
        ctx.env[c.feature] = c.value;
        ctx.result_features[c.feature] = c.value;
      }
    }
    for (const FeatureConstraint &f : rule.lhs_features) {
      auto req = ctx.result_features.find(f.feature);
      const std::string *requested =
          req == ctx.result_features.end() ? nullptr : &req->second;
      if (f.value.kind == FeatureExpr::Kind::kBind) {
        if (requested) {
          auto [it, fresh] = ctx.env.emplace(f.value.text, *requested);
          if (!fresh && it->second != *requested) return false;
        } else {
          ctx.deferred.push_back(f.feature);
        }
        continue;
      }
      // Constant.
      if (f.op == FeatureOp::kEq) {
        for (const Constraint &c : request) {
          if (c.feature == f.feature && !Compare(f.value.text, c.op, c.value)) {
            return false;
          }
        }
        ctx.result_features[f.feature] = f.value.text;
      } else if (!requested || !Compare(*requested, f.op, f.value.text)) {
        return false;
      }
    }
    for (const BindingCondition &c : rule.conditions) {
      const Bound *b = Lookup(c.name, lets);
      if (!b) return false;
      auto it = b->features.find(c.feature);
      if (it == b->features.end() || it->second != c.value) return false;
    }
    for (const std::string &cls : rule.classes) {
      if (!s_.no_repeat_.count(cls)) continue;
      if (!state.used.emplace(cls, rule.LexicalKey()).second) return false;
    }
    if (rule.lexical()) state.lexical.push_back(r);

    ctx.created.assign(rule.graph.nodes.size(), -1);
    for (size_t i = 0; i < rule.graph.nodes.size(); ++i) {
      const TemplateNode &n = rule.graph.nodes[i];
      if (n.head == TemplateNode::Head::kNew) {
        ctx.created[i] = state.concepts.size();
        state.concepts.push_back(n.concept_label);
      }
    }
    ctx.slots.resize(rule.slot_count);
    RunActions(rule, ctx, -1);
    return ExpandSlots(std::move(ctx), 0, k);
  }

  // Actions targeting slot `slot`, or local nodes when slot is -1.
  void RunActions(const SyncRule &rule, Ctx &ctx, int slot) {
    for (const BindingAction &a : rule.actions) {
      Bound b;
      if (a.value.kind == TemplateValue::Kind::kSlot) {
        if (a.value.index != slot) continue;
        const Result &res = ctx.slots[slot];
        b = {res.root, res.tokens, res.features};
      } else {
        if (slot != -1) continue;
        b.node = ctx.created[a.value.index];
      }
      if (a.global) {
        state.globals[a.name] = b;
      } else {
        ctx.lets[a.name] = b;
      }
    }
  }

  const Symbol &SlotSymbol(const SyncRule &rule, int slot) const {
    for (const Symbol &s : rule.rhs) {
      if (s.kind == Symbol::Kind::kSlot && s.slot == slot) return s;
    }
    throw GenerationError("internal: missing slot");
  }

  bool ExpandSlots(Ctx ctx, size_t pos, const Cont &k) {
    const SyncRule &rule = g_.rules()[ctx.rule];
    if (pos == rule.order.size()) return Finish(ctx, k);
    int slot = rule.order[pos];
    const Symbol &sym = SlotSymbol(rule, slot);
    std::vector<Constraint> request;
    std::vector<std::pair<std::string, std::string>> binds;  // feature, var
    for (const FeatureConstraint &f : sym.features) {
      if (f.value.kind == FeatureExpr::Kind::kBind &&
          !ctx.env.count(f.value.text)) {
        binds.emplace_back(f.feature, f.value.text);
        continue;
      }
      std::string value;
      if (!Resolve(f.value, ctx.env, &value)) return false;
      request.push_back({f.feature, f.op, value});
    }
    return Expand(sym.text, request, ctx.lets,
                  [&, slot, pos](const Result &res) {
                    Ctx next = ctx;
                    for (const Constraint &c : request) {
                      auto it = res.features.find(c.feature);
                      if (it == res.features.end() ||
                          !Compare(it->second, c.op, c.value)) {
                        return false;
                      }
                    }
                    for (const auto &[feature, var] : binds) {
                      auto it = res.features.find(feature);
                      if (it == res.features.end()) return false;
                      next.env[var] = it->second;
                    }
                    next.slots[slot] = res;
                    RunActions(rule, next, slot);
                    return ExpandSlots(std::move(next), pos + 1, k);
                  });
  }

  int NodeOf(const TemplateValue &v, const Ctx &ctx) const {
    switch (v.kind) {
      case TemplateValue::Kind::kNode:
      case TemplateValue::Kind::kLocal:
        return NodeOfTemplate(v.index, ctx);
      case TemplateValue::Kind::kSlot:
        return ctx.slots[v.index].root;
      case TemplateValue::Kind::kBinding: {
        const Bound *b = Lookup(v.name, ctx.inherited);
        return b ? b->node : -1;
      }
      case TemplateValue::Kind::kConstant:
        break;
    }
    return -1;
  }

  int NodeOfTemplate(int index, const Ctx &ctx) const {
    const SyncRule &rule = g_.rules()[ctx.rule];
    const TemplateNode &n = rule.graph.nodes[index];
    switch (n.head) {
      case TemplateNode::Head::kNew:
        return ctx.created[index];
      case TemplateNode::Head::kSlot:
        return ctx.slots[n.slot].root;
      case TemplateNode::Head::kBinding: {
        const Bound *b = Lookup(n.binding, ctx.inherited);
        return b ? b->node : -1;
      }
    }
    return -1;
  }

  int NextOp(int source) const {
    int max = 0;
    for (const EdgeRecord &e : state.edges) {
      if (e.source != source || e.role.size() < 3 ||
          e.role.compare(0, 2, "op") != 0) {
        continue;
      }
      long n;
      if (ToInt(e.role.substr(2), &n)) max = std::max<int>(max, n);
    }
    return max + 1;
  }

  bool Finish(const Ctx &ctx, const Cont &k) {
    const SyncRule &rule = g_.rules()[ctx.rule];
    for (size_t i = 0; i < rule.graph.nodes.size(); ++i) {
      int source = NodeOfTemplate(i, ctx);
      if (source < 0) return false;
      for (const TemplateEdge &edge : rule.graph.nodes[i].edges) {
        EdgeRecord rec;
        rec.role = edge.next_op ? "op" + std::to_string(NextOp(source))
                                : edge.role;
        if (edge.value.kind == TemplateValue::Kind::kConstant) {
          rec.source = source;
          rec.target = -1;
          rec.value = edge.value.constant;
        } else {
          int target = NodeOf(edge.value, ctx);
          if (target < 0) return false;
          rec.source = edge.inverse ? target : source;
          rec.target = edge.inverse ? source : target;
        }
        if (edge.marked) state.marked.push_back(state.edges.size());
        state.edges.push_back(std::move(rec));
      }
    }
    Result res;
    res.root = NodeOf(rule.graph.root, ctx);
    if (res.root < 0) return false;
    for (const Symbol &sym : rule.rhs) {
      switch (sym.kind) {
        case Symbol::Kind::kTerminal:
          res.tokens.push_back(sym.text);
          break;
        case Symbol::Kind::kSlot: {
          const auto &t = ctx.slots[sym.slot].tokens;
          res.tokens.insert(res.tokens.end(), t.begin(), t.end());
          break;
        }
        case Symbol::Kind::kBoundText: {
          const Bound *b = Lookup(sym.text, ctx.inherited);
          if (!b) return false;
          res.tokens.insert(res.tokens.end(), b->tokens.begin(),
                            b->tokens.end());
          break;
        }
      }
    }
    res.features = ctx.result_features;
    for (const FeatureConstraint &f : rule.lhs_features) {
      if (f.value.kind != FeatureExpr::Kind::kBind) continue;
      auto it = ctx.env.find(f.value.text);
      if (it != ctx.env.end()) {
        res.features[f.feature] = it->second;
      } else if (std::find(ctx.deferred.begin(), ctx.deferred.end(),
                           f.feature) != ctx.deferred.end()) {
        return false;
      }
    }
    return k(res);
  }

  const Sampler &s_;
  const Grammar &g_;
  Mode mode_;
  Rng *rng_;
  const std::set<std::string> *covered_;
  uint64_t steps_ = 0;
};

namespace {

Derivation Finalize(const State &state, const Result &top,
                    const std::vector<int> &lexical) {
  std::vector<Instance> instances;
  std::vector<Relation> relations;
  std::vector<Attribute> attributes;
  auto var = [](int id) { return "n" + std::to_string(id); };
  for (size_t i = 0; i < state.concepts.size(); ++i) {
    instances.push_back({var(i), ConceptLabel::Parse(state.concepts[i])});
  }
  for (const EdgeRecord &e : state.edges) {
    if (e.target < 0) {
      attributes.push_back({var(e.source), e.role, e.value});
    } else {
      relations.push_back({var(e.source), e.role, var(e.target)});
    }
  }
  AmrGraph raw;
  try {
    raw = AmrGraph(var(top.root), instances, relations, attributes);
  } catch (const AmrError &e) {
    throw GenerationError(std::string("derivation builds an invalid graph: ") +
                          e.what());
  }
  AmrGraph reparsed = ParsePenman(SerializePenman(raw));
  AmrGraph canonical = CanonicalizeVariables(reparsed);
  std::map<std::string, std::string> rename;
  for (size_t i = 0; i < reparsed.instances().size(); ++i) {
    rename[reparsed.instances()[i].var] = canonical.instances()[i].var;
  }
  Derivation d;
  d.sentence = Realize(top.tokens);
  d.graph = canonical;
  for (const auto &[name, bound] : state.globals) {
    if (bound.node >= 0) d.bindings[name] = rename.at(var(bound.node));
  }
  for (size_t i : state.marked) {
    const EdgeRecord &e = state.edges[i];
    if (e.target < 0) continue;
    d.marked.push_back(
        {rename.at(var(e.source)), e.role, rename.at(var(e.target))});
  }
  d.lexical_rules = lexical;
  return d;
}

std::vector<Constraint> ToConstraints(const FeatureRequest &request) {
  std::vector<Constraint> out;
  for (const auto &[f, v] : request) out.push_back({f, FeatureOp::kEq, v});
  return out;
}

}  // namespace

Sampler::Sampler(const Grammar &grammar, std::vector<std::string> no_repeat,
                 uint64_t step_budget)
    : grammar_(grammar),
      no_repeat_(no_repeat.begin(), no_repeat.end()),
      step_budget_(step_budget) {
  const auto &rules = grammar.rules();
  reach_.resize(rules.size());
  for (size_t r = 0; r < rules.size(); ++r) {
    if (rules[r].lexical()) reach_[r].insert(r);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t r = 0; r < rules.size(); ++r) {
      for (const Symbol &s : rules[r].rhs) {
        if (s.kind != Symbol::Kind::kSlot) continue;
        for (int child : grammar.RulesFor(s.text)) {
          for (int lex : reach_[child]) {
            changed |= reach_[r].insert(lex).second;
          }
        }
      }
    }
  }
  reach_keys_.resize(rules.size());
  for (size_t r = 0; r < rules.size(); ++r) {
    for (int lex : reach_[r]) reach_keys_[r].insert(rules[lex].LexicalKey());
  }
}

std::set<std::string> Sampler::ReachableKeys(const std::string &start) const {
  std::set<std::string> out;
  for (int r : grammar_.RulesFor(start)) {
    out.insert(reach_keys_[r].begin(), reach_keys_[r].end());
  }
  return out;
}

namespace {

Derivation RunOne(const Sampler &sampler, Search &search,
                  const std::string &start, const FeatureRequest &request) {
  if (!sampler.grammar().HasNonterminal(start)) {
    throw GenerationError("unknown start symbol " + start);
  }
  std::optional<Derivation> out;
  search.Expand(start, ToConstraints(request), {}, [&](const Result &res) {
    out = Finalize(search.state, res, search.state.lexical);
    return true;
  });
  if (!out) {
    throw GenerationError("constraint-unsatisfiable: no derivation of " +
                          start);
  }
  return *out;
}

}  // namespace

Derivation Sampler::Sample(const std::string &start,
                           const FeatureRequest &request, Rng &rng) const {
  Search search(*this, Mode::kSample, &rng, nullptr);
  return RunOne(*this, search, start, request);
}

Derivation Sampler::SampleCovering(const std::string &start,
                                   const FeatureRequest &request,
                                          const std::set<std::string> &covered,
                                   Rng &rng) const {
  Search search(*this, Mode::kCover, &rng, &covered);
  return RunOne(*this, search, start, request);
}

std::vector<Derivation> Sampler::Enumerate(const std::string &start,
                                           const FeatureRequest &request,
                                           size_t limit) const {
  if (!grammar_.HasNonterminal(start)) {
    throw GenerationError("unknown start symbol " + start);
  }
  Search search(*this, Mode::kEnumerate, nullptr, nullptr);
  std::vector<Derivation> out;
  search.Expand(start, ToConstraints(request), {}, [&](const Result &res) {
    out.push_back(Finalize(search.state, res, search.state.lexical));
    return out.size() >= limit;
  });
  return out;
}

}  // namespace amrprobe

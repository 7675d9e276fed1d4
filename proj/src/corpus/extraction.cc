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


#include "amrprobe/corpus/extraction.h"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "amrprobe/amr/penman.h"
#include "amrprobe/metrics/annotation_io.h"
#include "amrprobe/metrics/categories.h"
#include "amrprobe/metrics/check.h"
#include "amrprobe/util/random.h"

namespace amrprobe {
namespace {

constexpr double kHandFilterThreshold = 0.10;

std::string Trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> out(1);
  for (char c : s) {
    if (c == sep) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

int ParseInt(std::string_view text, const std::string &where) {
  int n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw CorpusError(where + ": expected a number, got '" +
                      std::string(text) + "'");
  }
  return n;
}

bool IsArgRole(std::string_view role) {
  return role == "ARG2" || role == "ARG3" || role == "ARG4" || role == "ARG5";
}

std::string JoinTokens(const std::vector<std::string> &tokens,
                       std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

// Test entries with graphs, normalized, in stable id order.
struct PreparedEntry {
  const CorpusEntry *entry;
  AmrGraph graph;
};

std::vector<PreparedEntry> Prepare(const std::vector<CorpusEntry> &test,
                                   const FrequencyIndex *index,
                                   std::vector<std::string> *warnings) {
  std::vector<PreparedEntry> out;
  size_t overlap = 0;
  for (const CorpusEntry &entry : test) {
    if (index != nullptr && index->training_ids.count(entry.id)) ++overlap;
    if (!entry.graph.has_value() || entry.graph->empty()) {
      if (warnings) warnings->push_back("entry " + entry.id + " has no graph");
      continue;
    }
    out.push_back({&entry, Normalize(*entry.graph)});
  }
  if (overlap > 0 && warnings) {
    warnings->push_back(std::to_string(overlap) +
                        " test entry id(s) also occur in the training index");
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PreparedEntry &a, const PreparedEntry &b) {
                     return a.entry->id < b.entry->id;
                   });
  return out;
}

class Collector {
 public:
  explicit Collector(std::vector<CandidateRecord> *out) : out_(out) {}

  void Add(const std::string &entry_id, std::string category,
           std::vector<MetricSpec> checks, std::string note = "") {
    CandidateRecord c;
    int n = ++counts_[{entry_id, category}];
    c.candidate_id = entry_id + "/" + category + "/" + std::to_string(n);
    c.entry_id = entry_id;
    c.category_id = std::move(category);
    c.checks = std::move(checks);
    c.note = std::move(note);
    out_->push_back(std::move(c));
  }

 private:
  std::vector<CandidateRecord> *out_;
  std::map<std::pair<std::string, std::string>, int> counts_;
};

MetricSpec ValueSpec(MetricKind kind, const ConstantValue &value) {
  MetricSpec s;
  s.kind = kind;
  s.value = value;
  return s;
}

void ExtractNodeLabels(const AmrGraph &g, const FrequencyIndex &index,
                       Band band, const std::string &entry_id,
                       const std::string &category, Collector &out) {
  std::set<std::string> done;
  for (const Instance &inst : g.instances()) {
    const std::string &label = inst.label.full;
    if (!done.insert(label).second) continue;
    if (BandOf(index.LabelCount(label)) != band) continue;
    out.Add(entry_id, category, {NodeSpec({label}, MetricRole::kMain)});
  }
}

void ExtractSenses(const AmrGraph &g, const FrequencyIndex &index,
                   std::string_view which, const ExtractOptions &options,
                   const std::string &entry_id, const std::string &category,
                   Collector &out) {
  std::set<std::string> done;
  for (const Instance &inst : g.instances()) {
    const ConceptLabel &label = inst.label;
    if (!label.has_sense() || !done.insert(label.full).second) continue;
    int own = index.SenseCount(label.full);
    int competing = index.CompetingSenseCount(label.full);
    bool keep;
    if (which == "frequent") {
      keep = own >= kFrequentMin && competing >= kFrequentMin &&
             !options.frequent_sense_exclusions.count(label.full);
    } else {
      Band want = which == "rare" ? Band::kRare : Band::kUnseen;
      keep = label.sense != "01" && competing >= 1 && BandOf(own) == want;
    }
    if (!keep) continue;
    out.Add(entry_id, category,
            {NodeSpec({label.full}, MetricRole::kMain),
             NodeSpec({label.full}, MetricRole::kPrerequisite, false)},
            "own " + std::to_string(own) + ", other senses " +
                std::to_string(competing));
  }
}

void ExtractEdges(const AmrGraph &g, const FrequencyIndex &index, Band band,
                  const std::string &entry_id, const std::string &category,
                  Collector &out) {
  std::set<std::tuple<std::string, std::string, std::string>> done;
  for (const Relation &r : g.relations()) {
    if (!IsArgRole(r.role)) continue;
    const std::string &pred = g.ConceptOf(r.source).full;
    const std::string &tgt = g.ConceptOf(r.target).full;
    // An unseen role of an unseen predicate is an unseen label instead.
    if (index.LabelCount(pred) == 0) continue;
    if (BandOf(index.PredicateRoleCount(pred, r.role)) != band) continue;
    if (!done.insert({pred, r.role, tgt}).second) continue;
    out.Add(entry_id, category,
            {EdgeSpec(pred, r.role, tgt, MetricRole::kMain),
             NodeSpec({pred, tgt}, MetricRole::kPrerequisite)});
  }
}

void ExtractNames(const AmrGraph &g, const FrequencyIndex &index, bool seen,
                  const std::string &entry_id, const std::string &category,
                  Collector &out) {
  std::set<NameSequenceKey> done;
  for (const Instance &inst : g.instances()) {
    if (inst.label.full != "name") continue;
    NameSequenceKey seq = NameSequence(g, inst.var);
    if (seq.empty() || !done.insert(seq).second) continue;
    if (index.name_sequences.count(seq) != static_cast<size_t>(seen)) continue;
    MetricSpec s;
    s.kind = MetricKind::kNameSequenceRecall;
    s.tokens = seq;
    out.Add(entry_id, category, {s});
  }
}

void ExtractDates(const AmrGraph &g, const FrequencyIndex &index, bool seen,
                  const std::string &entry_id, const std::string &category,
                  Collector &out) {
  std::set<DateSignature> done;
  for (const Instance &inst : g.instances()) {
    if (inst.label.full != "date-entity") continue;
    DateSignature sig = DateSignatureOf(g, inst.var);
    if (sig.empty() || !done.insert(sig).second) continue;
    if (index.date_signatures.count(sig) != static_cast<size_t>(seen)) {
      continue;
    }
    MetricSpec s;
    s.kind = MetricKind::kDateAttributeRecall;
    s.date = sig;
    out.Add(entry_id, category, {s});
  }
}

void ExtractOtherEntities(const AmrGraph &g, const FrequencyIndex &index,
                          bool seen, const std::set<std::string> &types,
                          const std::string &entry_id,
                          const std::string &category, Collector &out) {
  std::set<std::pair<std::string, std::string>> done;
  for (const Instance &inst : g.instances()) {
    if (!types.count(inst.label.full)) continue;
    for (const Attribute &a : g.attributes()) {
      if (a.source != inst.var || a.role == "wiki") continue;
      std::pair<std::string, std::string> key = {inst.label.full,
                                                 a.value.text};
      if (!done.insert(key).second) continue;
      if (index.entity_values.count(key) != static_cast<size_t>(seen)) {
        continue;
      }
      out.Add(entry_id, category,
              {ValueSpec(MetricKind::kEntityValueRecall, a.value)},
              inst.label.full + " :" + a.role);
    }
  }
}

void ExtractNeTypes(const AmrGraph &g, const FrequencyIndex &index, bool seen,
                    const std::string &entry_id, const std::string &category,
                    Collector &out) {
  std::set<std::pair<std::string, NameSequenceKey>> done;
  for (const Relation &r : g.relations()) {
    if (r.role != "name" || g.ConceptOf(r.target).full != "name") continue;
    const std::string &type = g.ConceptOf(r.source).full;
    NameSequenceKey seq = NameSequence(g, r.target);
    if (seq.empty() || !done.insert({type, seq}).second) continue;
    if (index.name_sequences.count(seq) != static_cast<size_t>(seen)) continue;
    MetricSpec main;
    main.kind = MetricKind::kNeTypeRecall;
    main.labels = {type};
    main.tokens = seq;
    MetricSpec prereq;
    prereq.kind = MetricKind::kNameSequenceRecall;
    prereq.role = MetricRole::kPrerequisite;
    prereq.tokens = seq;
    std::string note;
    if (seen && !index.ne_type_pairs.count({type, seq})) {
      note = "name seen in training only with other types";
    }
    out.Add(entry_id, category, {main, prereq}, note);
  }
}

void ExtractWiki(const AmrGraph &g, const FrequencyIndex &index, bool easy,
                 const std::string &entry_id, const std::string &category,
                 Collector &out) {
  std::set<std::string> done;
  for (const Attribute &a : g.attributes()) {
    if (a.role != "wiki" || a.value.text == "-") continue;
    if (!done.insert(a.value.text).second) continue;
    bool seen = index.wiki_values.count(a.value.text) > 0;
    bool joined = false;
    for (const Relation &r : g.relations()) {
      if (r.source == a.source && r.role == "name" &&
          JoinTokens(NameSequence(g, r.target), "_") == a.value.text) {
        joined = true;
      }
    }
    if ((seen || joined) != easy) continue;
    std::string note;
    if (easy) note = seen ? "seen in training" : "name joined with '_'";
    out.Add(entry_id, category, {ValueSpec(MetricKind::kWikiRecall, a.value)},
            note);
  }
}

void ExtractReentrancies(const AmrGraph &g, bool per_edge,
                         const std::string &entry_id,
                         const std::string &category, Collector &out) {
  std::vector<std::string> order = DeclarationOrder(g);
  std::unordered_map<std::string, size_t> position;
  for (size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  for (const Instance &inst : g.instances()) {
    std::vector<const Relation *> incoming;
    for (const Relation &r : g.relations()) {
      if (r.target == inst.var) incoming.push_back(&r);
    }
    if (incoming.size() < 2) continue;
    // Relation order breaks ties between parents declared at one position.
    std::stable_sort(incoming.begin(), incoming.end(),
                     [&](const Relation *a, const Relation *b) {
                       return position[a->source] < position[b->source];
                     });
    const Relation &far = *incoming.front();
    const Relation &near = *incoming.back();
    const std::string &node = inst.label.full;
    const std::string &far_label = g.ConceptOf(far.source).full;
    const std::string &near_label = g.ConceptOf(near.source).full;
    std::string note = "proposal: far " + far_label + " :" + far.role +
                       ", near " + near_label + " :" + near.role;
    if (incoming.size() > 2) {
      note += "; " + std::to_string(incoming.size()) + " parents";
    }
    if (per_edge) {
      out.Add(entry_id, category,
              {EdgeSpec(far_label, far.role, node, MetricRole::kMain, false),
               EdgeSpec(near_label, near.role, node, MetricRole::kMain, false),
               NodeSpec({far_label, node}, MetricRole::kPrerequisite, false),
               NodeSpec({near_label, node}, MetricRole::kPrerequisite,
                        false)},
              note);
      continue;
    }
    std::vector<Instance> instances = {{"n", inst.label},
                                       {"f", g.ConceptOf(far.source)}};
    std::vector<Relation> relations = {{"f", far.role, "n"}};
    std::string near_var = "f";
    if (near.source != far.source) {
      instances.push_back({"p", g.ConceptOf(near.source)});
      near_var = "p";
    }
    relations.push_back({near_var, near.role, "n"});
    MetricSpec main = GraphSpec(MetricKind::kSubgraphRecall,
                                AmrGraph("f", instances, relations, {}),
                                MetricRole::kMain);
    main.sense_sensitive = false;
    out.Add(entry_id, category,
            {main, NodeSpec({far_label, near_label, node},
                            MetricRole::kPrerequisite, false)},
            note);
  }
}

void ExtractNoArg0(const AmrGraph &g, const ExtractOptions &options,
                   std::string_view only, const std::string &entry_id,
                   Collector &out) {
  for (const Instance &inst : g.instances()) {
    if (!inst.label.has_sense()) continue;
    const Relation *arg1 = nullptr;
    bool has_arg0 = false;
    for (const Relation &r : g.relations()) {
      if (r.source != inst.var) continue;
      if (r.role == "ARG0") has_arg0 = true;
      if (r.role == "ARG1" && arg1 == nullptr) arg1 = &r;
    }
    if (has_arg0 || arg1 == nullptr) continue;
    std::string category = "no_arg0_predicates";
    if (options.frames.has_value()) {
      auto it = options.frames->find(inst.label.full);
      if (it != options.frames->end()) {
        category = it->second ? "passives" : "unaccusatives";
      }
    }
    if (!only.empty() && category != only) continue;
    const std::string &tgt = g.ConceptOf(arg1->target).full;
    out.Add(entry_id, category,
            {EdgeSpec(inst.label.full, "ARG1", tgt, MetricRole::kMain),
             NodeSpec({inst.label.full, tgt}, MetricRole::kPrerequisite)});
  }
}

void ExtractImperatives(const AmrGraph &g, const std::string &entry_id,
                        const std::string &category, Collector &out) {
  for (const Instance &inst : g.instances()) {
    bool imperative = false;
    for (const Attribute &a : g.attributes()) {
      if (a.source == inst.var && a.role == "mode" &&
          a.value.text == "imperative") {
        imperative = true;
      }
    }
    if (!imperative) continue;
    std::string subject, note;
    for (const Relation &r : g.relations()) {
      if (r.source == inst.var && r.role == "ARG0") {
        subject = g.ConceptOf(r.target).full;
        break;
      }
    }
    if (subject.empty()) {
      subject = "you";
      note = "no ARG0; subject proposed";
    } else if (subject != "you" && subject != "we") {
      note = "subject is neither you nor we";
    }
    MetricSpec main;
    main.kind = MetricKind::kImperativeRecall;
    main.labels = {inst.label.full, subject};
    out.Add(entry_id, category,
            {main, NodeSpec({inst.label.full}, MetricRole::kPrerequisite)},
            note);
  }
}

// Extraction id -> (registry id or pool name, extractor variant).
struct ExtractionRule {
  const char *id;
  const char *category;
};

constexpr ExtractionRule kRules[] = {
    {"rare_node_labels", "rare_node_labels"},
    {"unseen_node_labels", "unseen_node_labels"},
    {"frequent_senses", "frequent_predicate_senses"},
    {"rare_senses", "rare_predicate_senses"},
    {"unseen_senses", "unseen_predicate_senses"},
    {"rare_edge_labels", "rare_edge_labels"},
    {"unseen_edge_labels", "unseen_edge_labels"},
    {"seen_names", "seen_names"},
    {"unseen_names", "unseen_names"},
    {"seen_dates", "seen_dates"},
    {"unseen_dates", "unseen_dates"},
    {"other_seen_entities", "other_seen_entities"},
    {"other_unseen_entities", "other_unseen_entities"},
    {"ne_types_seen", "types_of_seen_named_entities"},
    {"ne_types_unseen", "types_of_unseen_named_entities"},
    {"wiki_easy", "seen_and_easy_wiki_links"},
    {"wiki_hard", "hard_unseen_wiki_links"},
    {"reentrancy_candidates", "reentrancy_candidates"},
    {"no_arg0_predicates", "no_arg0_predicates"},
    {"imperatives", "imperatives"},
};

const ExtractionRule *FindRule(std::string_view category) {
  for (const ExtractionRule &rule : kRules) {
    if (category == rule.id || category == rule.category) return &rule;
  }
  return nullptr;
}

const std::vector<std::string> kOtherEntityTypes = {
    "data-entity",
    "percentage-entity",
    "phone-number-entity",
    "email-address-entity",
    "url-entity",
    "byline-91",
    "correlate-91",
    "course-91",
    "have-degree-of-resemblance-91",
    "hyperlink-91",
    "instead-of-91",
    "publication-91",
    "request-confirmation-91",
    "score-entity",
    "score-on-scale-91",
    "statistical-test-91",
    "street-address-91",
    "string-entity",
    "value-interval",
    "variable",
};

std::string EscapeNote(std::string_view note) {
  std::string out;
  for (char c : note) {
    if (c == '\t' || c == '\n' || c == '\r') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view StatusName(CandidateStatus status) {
  switch (status) {
    case CandidateStatus::kUnreviewed:
      return "unreviewed";
    case CandidateStatus::kAccepted:
      return "accepted";
    case CandidateStatus::kRejected:
      return "rejected";
  }
  return "";
}

std::optional<CandidateStatus> ParseStatus(std::string_view name) {
  for (CandidateStatus s :
       {CandidateStatus::kUnreviewed, CandidateStatus::kAccepted,
        CandidateStatus::kRejected}) {
    if (StatusName(s) == name) return s;
  }
  return std::nullopt;
}

const std::vector<std::string> &ExtractionIds() {
  static const std::vector<std::string> *ids = [] {
    auto *v = new std::vector<std::string>;
    for (const ExtractionRule &rule : kRules) v->push_back(rule.id);
    return v;
  }();
  return *ids;
}

const std::vector<std::string> &DefaultOtherEntityTypes() {
  return kOtherEntityTypes;
}

std::vector<std::string> ParseTypeList(std::string_view text) {
  std::vector<std::string> out;
  for (const std::string &raw : Split(text, '\n')) {
    std::string line = Trim(raw.substr(0, raw.find('#')));
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::map<std::string, bool> ParseFrames(std::string_view text) {
  std::map<std::string, bool> out;
  int line_no = 0;
  for (const std::string &raw : Split(text, '\n')) {
    ++line_no;
    std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f = Split(line, '\t');
    if (f.size() != 2 || (f[1] != "0" && f[1] != "1")) {
      throw CorpusError("frames line " + std::to_string(line_no) +
                        ": expected predicate<TAB>0|1");
    }
    out[f[0]] = f[1] == "1";
  }
  return out;
}

std::vector<CandidateRecord> ExtractCategory(
    const std::vector<CorpusEntry> &test, const FrequencyIndex &index,
    std::string_view category, const ExtractOptions &options,
    std::vector<std::string> *warnings) {
  std::string_view only;
  if (category == "passives" || category == "unaccusatives") {
    if (!options.frames.has_value()) {
      throw CorpusError(std::string(category) + " extraction needs a frames "
                        "list; use no_arg0_predicates without one");
    }
    only = category;
    category = "no_arg0_predicates";
  }
  const ExtractionRule *rule = FindRule(category);
  if (rule == nullptr) {
    throw CorpusError("unsupported extraction category '" +
                      std::string(category) + "'");
  }
  std::string id = rule->id;
  std::string target = rule->category;
  std::set<std::string> entity_types(
      options.other_entity_types.empty() ? kOtherEntityTypes.begin()
                                         : options.other_entity_types.begin(),
      options.other_entity_types.empty() ? kOtherEntityTypes.end()
                                         : options.other_entity_types.end());

  std::vector<CandidateRecord> out;
  Collector collect(&out);
  for (const PreparedEntry &p : Prepare(test, &index, warnings)) {
    const AmrGraph &g = p.graph;
    const std::string &eid = p.entry->id;
    if (id == "rare_node_labels" || id == "unseen_node_labels") {
      ExtractNodeLabels(g, index, id[0] == 'r' ? Band::kRare : Band::kUnseen,
                        eid, target, collect);
    } else if (id == "frequent_senses" || id == "rare_senses" ||
               id == "unseen_senses") {
      ExtractSenses(g, index, id.substr(0, id.find('_')), options, eid, target,
                    collect);
    } else if (id == "rare_edge_labels" || id == "unseen_edge_labels") {
      ExtractEdges(g, index, id[0] == 'r' ? Band::kRare : Band::kUnseen, eid,
                   target, collect);
    } else if (id == "seen_names" || id == "unseen_names") {
      ExtractNames(g, index, id[0] == 's', eid, target, collect);
    } else if (id == "seen_dates" || id == "unseen_dates") {
      ExtractDates(g, index, id[0] == 's', eid, target, collect);
    } else if (id == "other_seen_entities" || id == "other_unseen_entities") {
      ExtractOtherEntities(g, index, id == "other_seen_entities", entity_types,
                           eid, target, collect);
    } else if (id == "ne_types_seen" || id == "ne_types_unseen") {
      ExtractNeTypes(g, index, id == "ne_types_seen", eid, target, collect);
    } else if (id == "wiki_easy" || id == "wiki_hard") {
      ExtractWiki(g, index, id == "wiki_easy", eid, target, collect);
    } else if (id == "reentrancy_candidates") {
      ExtractReentrancies(g, options.reentrancy_per_edge, eid, target,
                          collect);
    } else if (id == "no_arg0_predicates") {
      ExtractNoArg0(g, options, only, eid, collect);
    } else {
      ExtractImperatives(g, eid, target, collect);
    }
  }
  return out;
}

std::vector<AlignmentRecord> ParseAlignments(std::string_view text) {
  std::vector<AlignmentRecord> out;
  int line_no = 0;
  for (const std::string &raw : Split(text, '\n')) {
    ++line_no;
    std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::string where = "alignment line " + std::to_string(line_no);
    std::vector<std::string> f = Split(line, '\t');
    if (f.size() != 4) throw CorpusError(where + ": expected 4 fields");
    AlignmentRecord rec;
    rec.entry_id = f[0];
    rec.token_start = ParseInt(f[1], where);
    rec.token_end = ParseInt(f[2], where);
    if (rec.token_start < 0 || rec.token_end < rec.token_start) {
      throw CorpusError(where + ": bad token span");
    }
    for (const std::string &var : Split(f[3], ';')) {
      if (!var.empty()) rec.vars.push_back(var);
    }
    if (rec.vars.empty()) throw CorpusError(where + ": no variables");
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<CandidateRecord> ExtractAligned(
    const std::vector<CorpusEntry> &test,
    const std::vector<AlignmentRecord> &alignments, AlignMode mode,
    std::vector<std::string> *warnings) {
  std::vector<PreparedEntry> prepared = Prepare(test, nullptr, warnings);
  std::map<std::string, const PreparedEntry *> by_id;
  for (const PreparedEntry &p : prepared) by_id[p.entry->id] = &p;
  for (const CorpusEntry &e : test) {
    if (!by_id.count(e.id)) by_id[e.id] = nullptr;
  }

  std::vector<const AlignmentRecord *> ordered;
  for (const AlignmentRecord &rec : alignments) {
    auto it = by_id.find(rec.entry_id);
    if (it == by_id.end()) {
      throw CorpusError("alignment references unknown entry " + rec.entry_id);
    }
    if (it->second == nullptr) continue;
    for (const std::string &var : rec.vars) {
      if (!it->second->graph.HasVariable(var)) {
        throw CorpusError("alignment for " + rec.entry_id +
                          " references unknown variable " + var);
      }
    }
    ordered.push_back(&rec);
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const AlignmentRecord *a, const AlignmentRecord *b) {
                     return std::tie(a->entry_id, a->token_start) <
                            std::tie(b->entry_id, b->token_start);
                   });

  std::vector<CandidateRecord> out;
  Collector collect(&out);
  for (const AlignmentRecord *rec : ordered) {
    const AmrGraph &g = by_id[rec->entry_id]->graph;
    std::vector<std::string> vars = rec->vars;
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::string span = "tokens " + std::to_string(rec->token_start) + "-" +
                       std::to_string(rec->token_end);
    // Labels in first-aligned order with their node counts.
    std::vector<std::pair<std::string, int>> labels;
    for (const std::string &var : rec->vars) {
      if (std::find(vars.begin(), vars.end(), var) == vars.end()) continue;
      const std::string &label = g.ConceptOf(var).full;
      auto it = std::find_if(labels.begin(), labels.end(),
                             [&](const auto &l) { return l.first == label; });
      if (it == labels.end()) {
        labels.push_back({label, 0});
        it = labels.end() - 1;
      }
      ++it->second;
      vars.erase(std::find(vars.begin(), vars.end(), var));
    }

    if (mode == AlignMode::kEllipsis) {
      for (const auto &[label, count] : labels) {
        if (count < 2) continue;
        collect.Add(rec->entry_id, "ellipsis",
                    {NodeSpec({label}, MetricRole::kMain, true, count),
                     NodeSpec({label}, MetricRole::kPrerequisite)},
                    span);
      }
      continue;
    }
    if (labels.size() < 2) continue;

    std::set<std::string> chosen(rec->vars.begin(), rec->vars.end());
    std::vector<Instance> instances;
    for (const Instance &inst : g.instances()) {
      if (chosen.count(inst.var)) instances.push_back(inst);
    }
    std::vector<Relation> relations;
    std::set<std::string> has_parent;
    for (const Relation &r : g.relations()) {
      if (chosen.count(r.source) && chosen.count(r.target)) {
        relations.push_back(r);
        has_parent.insert(r.target);
      }
    }
    std::vector<std::string> roots;
    for (const Instance &inst : instances) {
      if (!has_parent.count(inst.var)) roots.push_back(inst.var);
    }
    std::optional<AmrGraph> fragment;
    if (roots.size() == 1) {
      try {
        fragment = CanonicalizeVariables(
            AmrGraph(roots[0], instances, relations, {}));
      } catch (const AmrError &) {
      }
    }
    if (!fragment.has_value()) {
      if (warnings) {
        warnings->push_back("skipping " + rec->entry_id + " " + span +
                            ": aligned nodes do not form a rooted fragment");
      }
      continue;
    }
    collect.Add(rec->entry_id, "multinode_word_meanings",
                {GraphSpec(MetricKind::kSubgraphRecall, *fragment,
                           MetricRole::kMain)},
                span);
  }
  return out;
}

std::string_view AdviceName(ReviewAdvice advice) {
  return advice == ReviewAdvice::kHandFilter ? "hand-filter required"
                                             : "accept remainder";
}

ReviewAdvice ReviewSummary(const std::vector<CandidateRecord> &candidates,
                           size_t sample_size, double error_rate) {
  if (sample_size == 0) throw CorpusError("review sample is empty");
  if (sample_size > candidates.size()) {
    throw CorpusError("review sample is larger than the candidate list");
  }
  if (!(error_rate >= 0.0 && error_rate <= 1.0)) {
    throw CorpusError("error rate must lie in [0, 1]");
  }
  return error_rate > kHandFilterThreshold ? ReviewAdvice::kHandFilter
                                           : ReviewAdvice::kAcceptRemainder;
}

std::vector<size_t> SampleForReview(
    const std::vector<CandidateRecord> &candidates, size_t n, uint64_t seed) {
  std::vector<size_t> all(candidates.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  Rng rng(seed);
  rng.Shuffle(all);
  all.resize(std::min(n, all.size()));
  std::sort(all.begin(), all.end());
  return all;
}

std::string WriteReviewSheet(const std::vector<CandidateRecord> &candidates,
                             const std::vector<CorpusEntry> &test) {
  std::map<std::string, const CorpusEntry *> by_id;
  for (const CorpusEntry &e : test) by_id[e.id] = &e;
  std::string out =
      "# candidate_id\tstatus\tentry_id\tcategory_id\trole\tkind\tpayload\t"
      "note\n";
  std::set<std::string> ids;
  for (const CandidateRecord &c : candidates) {
    if (!ids.insert(c.candidate_id).second) {
      throw CorpusError("duplicate candidate id " + c.candidate_id);
    }
    if (c.checks.empty()) {
      throw CorpusError("candidate " + c.candidate_id + " has no checks");
    }
    auto it = by_id.find(c.entry_id);
    if (it != by_id.end()) {
      out += "#\n# ::snt " + EscapeNote(it->second->sentence) + "\n";
      if (it->second->graph.has_value()) {
        out += "# " + SerializePenman(*it->second->graph,
                                      PenmanStyle::kCompact) +
               "\n";
      }
    }
    std::string note = EscapeNote(c.note);
    for (const MetricSpec &spec : c.checks) {
      ValidatePayload(spec);
      out += c.candidate_id + "\t" + std::string(StatusName(c.status)) + "\t" +
             c.entry_id + "\t" + c.category_id + "\t" +
             std::string(RoleName(spec.role)) + "\t" +
             std::string(KindName(spec.kind)) + "\t" + FormatPayload(spec) +
             "\t" + note + "\n";
      for (const AmrGraph &f : spec.fragments) {
        out += "  " + SerializePenman(f, PenmanStyle::kCompact) + "\n";
      }
    }
  }
  return out;
}

std::vector<CandidateRecord> ReadReviewSheet(std::string_view text) {
  struct Row {
    int line_no;
    std::vector<std::string> fields;
    std::vector<std::string> fragments;
  };
  std::vector<Row> rows;
  int line_no = 0;
  for (const std::string &raw : Split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    if (line[0] == ' ' || line[0] == '\t') {
      if (rows.empty()) {
        throw CorpusError("review line " + std::to_string(line_no) +
                          ": fragment without a row");
      }
      rows.back().fragments.push_back(Trim(line));
      continue;
    }
    std::vector<std::string> f = Split(line, '\t');
    if (f.size() == 7) f.emplace_back();
    if (f.size() != 8) {
      throw CorpusError("review line " + std::to_string(line_no) +
                        ": expected 8 fields");
    }
    rows.push_back({line_no, std::move(f), {}});
  }

  std::vector<CandidateRecord> out;
  std::map<std::string, size_t> index;
  for (const Row &row : rows) {
    const std::vector<std::string> &f = row.fields;
    std::string where = "review line " + std::to_string(row.line_no);
    std::optional<CandidateStatus> status = ParseStatus(Trim(f[1]));
    if (!status) throw CorpusError(where + ": bad status '" + f[1] + "'");
    MetricSpec spec;
    try {
      spec = ParseCheck(f[4], f[5], f[6], row.fragments);
    } catch (const std::exception &e) {
      throw CorpusError(where + ": " + e.what());
    }
    auto it = index.find(f[0]);
    if (it == index.end()) {
      index[f[0]] = out.size();
      CandidateRecord c;
      c.candidate_id = f[0];
      c.status = *status;
      c.entry_id = f[2];
      c.category_id = f[3];
      c.note = f[7];
      c.checks.push_back(std::move(spec));
      out.push_back(std::move(c));
      continue;
    }
    CandidateRecord &c = out[it->second];
    if (&c != &out.back()) {
      throw CorpusError(where + ": rows of candidate " + f[0] +
                        " are not contiguous");
    }
    if (c.status != *status || c.entry_id != f[2] || c.category_id != f[3]) {
      throw CorpusError(where + ": candidate " + f[0] +
                        " has conflicting status, entry or category");
    }
    c.checks.push_back(std::move(spec));
  }
  return out;
}

std::vector<CategoryInstance> ToAnnotations(
    const std::vector<CandidateRecord> &candidates, bool include_unreviewed) {
  std::vector<CategoryInstance> out;
  for (const CandidateRecord &c : candidates) {
    bool keep = c.status == CandidateStatus::kAccepted ||
                (include_unreviewed &&
                 c.status == CandidateStatus::kUnreviewed);
    if (!keep) continue;
    if (FindCategory(c.category_id) == nullptr) {
      throw CorpusError("candidate " + c.candidate_id + " has category '" +
                        c.category_id + "', which must be retyped to a " +
                        "registry category before evaluation");
    }
    out.push_back({c.entry_id, c.category_id, c.checks});
  }
  return out;
}

}  // namespace amrprobe

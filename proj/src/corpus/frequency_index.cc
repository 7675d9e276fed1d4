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


#include "amrprobe/corpus/frequency_index.h"

#include <algorithm>
#include <sstream>

#include "amrprobe/metrics/check.h"

namespace amrprobe {
namespace {

constexpr std::string_view kMagic = "# amrprobe frequency index v1";

bool IsArgRole(std::string_view role) {
  return role == "ARG2" || role == "ARG3" || role == "ARG4" || role == "ARG5";
}

std::string Escape(std::string_view token) {
  std::string out;
  for (char c : token) {
    switch (c) {
      case '\t':
        out += "\\t";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\\':
        out += "\\\\";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::vector<std::string> SplitRow(const std::string &line) {
  std::vector<std::string> out(1);
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (c == '\\' && i + 1 < line.size()) {
      char next = line[++i];
      out.back() += next == 't' ? '\t' : next == 'n' ? '\n' : next;
    } else if (c == '\t') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::string JoinRow(const std::vector<std::string> &fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out += '\t';
    out += Escape(fields[i]);
  }
  return out + "\n";
}

int ParseCount(const std::string &text) {
  try {
    size_t used = 0;
    int n = std::stoi(text, &used);
    if (used == text.size() && n >= 1) return n;
  } catch (const std::exception &) {
  }
  throw CorpusError("index snapshot: bad count '" + text + "'");
}

}  // namespace

int FrequencyIndex::LabelCount(std::string_view label) const {
  auto it = label_counts.find(std::string(label));
  return it == label_counts.end() ? 0 : it->second;
}

int FrequencyIndex::SenseCount(std::string_view label) const {
  ConceptLabel c = ConceptLabel::Parse(label);
  if (!c.has_sense()) return 0;
  auto it = lemma_sense_counts.find(c.lemma);
  if (it == lemma_sense_counts.end()) return 0;
  auto s = it->second.find(c.sense);
  return s == it->second.end() ? 0 : s->second;
}

int FrequencyIndex::CompetingSenseCount(std::string_view label) const {
  ConceptLabel c = ConceptLabel::Parse(label);
  auto it = lemma_sense_counts.find(c.lemma);
  if (it == lemma_sense_counts.end()) return 0;
  int total = 0;
  for (const auto &[sense, count] : it->second) {
    if (sense != c.sense) total += count;
  }
  return total;
}

int FrequencyIndex::PredicateRoleCount(std::string_view predicate,
                                       std::string_view role) const {
  auto it = predicate_role_counts.find(
      {std::string(predicate), std::string(role)});
  return it == predicate_role_counts.end() ? 0 : it->second;
}

DateSignature DateSignatureOf(const AmrGraph &graph, std::string_view var) {
  DateSignature out;
  for (const Attribute &a : graph.attributes()) {
    if (a.source == var) out.push_back({a.role, a.value.text});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

FrequencyIndex BuildIndex(const std::vector<CorpusEntry> &training) {
  if (training.empty()) throw CorpusError("empty training corpus");
  FrequencyIndex index;
  for (const CorpusEntry &entry : training) {
    if (!entry.graph.has_value() || entry.graph->empty()) {
      throw CorpusError("training entry " + entry.id + " has no graph");
    }
    if (!entry.id.empty()) index.training_ids.insert(entry.id);
    AmrGraph g = Normalize(*entry.graph);
    for (const Instance &inst : g.instances()) {
      ++index.label_counts[inst.label.full];
      if (inst.label.has_sense()) {
        ++index.lemma_sense_counts[inst.label.lemma][inst.label.sense];
      }
      if (inst.label.full == "name") {
        index.name_sequences.insert(NameSequence(g, inst.var));
      } else if (inst.label.full == "date-entity") {
        DateSignature sig = DateSignatureOf(g, inst.var);
        if (!sig.empty()) index.date_signatures.insert(sig);
      }
    }
    for (const Relation &r : g.relations()) {
      if (IsArgRole(r.role)) {
        ++index.predicate_role_counts[{g.ConceptOf(r.source).full, r.role}];
      }
      if (r.role == "name" && g.ConceptOf(r.target).full == "name") {
        index.ne_type_pairs.insert(
            {g.ConceptOf(r.source).full, NameSequence(g, r.target)});
      }
    }
    for (const Attribute &a : g.attributes()) {
      if (a.role == "wiki") {
        index.wiki_values.insert(a.value.text);
      } else {
        index.entity_values.insert({g.ConceptOf(a.source).full, a.value.text});
      }
    }
  }
  return index;
}

std::string SaveIndex(const FrequencyIndex &index) {
  std::string out = std::string(kMagic) + "\n";
  out += "## labels\tlabel\tcount\n";
  for (const auto &[label, count] : index.label_counts) {
    out += JoinRow({label, std::to_string(count)});
  }
  out += "## senses\tlemma\tsense\tcount\n";
  for (const auto &[lemma, senses] : index.lemma_sense_counts) {
    for (const auto &[sense, count] : senses) {
      out += JoinRow({lemma, sense, std::to_string(count)});
    }
  }
  out += "## predicate_roles\tpredicate\trole\tcount\n";
  for (const auto &[key, count] : index.predicate_role_counts) {
    out += JoinRow({key.first, key.second, std::to_string(count)});
  }
  out += "## names\ttoken...\n";
  for (const NameSequenceKey &seq : index.name_sequences) out += JoinRow(seq);
  out += "## dates\trole=value...\n";
  for (const DateSignature &sig : index.date_signatures) {
    std::vector<std::string> row;
    for (const auto &[role, value] : sig) row.push_back(role + "=" + value);
    out += JoinRow(row);
  }
  out += "## entity_values\ttype\tvalue\n";
  for (const auto &[type, value] : index.entity_values) {
    out += JoinRow({type, value});
  }
  out += "## wiki_values\tvalue\n";
  for (const std::string &value : index.wiki_values) out += JoinRow({value});
  out += "## ne_types\ttype\ttoken...\n";
  for (const auto &[type, seq] : index.ne_type_pairs) {
    std::vector<std::string> row = {type};
    row.insert(row.end(), seq.begin(), seq.end());
    out += JoinRow(row);
  }
  out += "## training_ids\tid\n";
  for (const std::string &id : index.training_ids) out += JoinRow({id});
  return out;
}

FrequencyIndex LoadIndex(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kMagic) {
    throw CorpusError("not a frequency index snapshot");
  }
  FrequencyIndex index;
  std::string section;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("## ", 0) == 0) {
      section = line.substr(3, line.find('\t') - 3);
      continue;
    }
    std::vector<std::string> f = SplitRow(line);
    auto need = [&](size_t n) {
      if (f.size() != n) {
        throw CorpusError("index snapshot line " + std::to_string(line_no) +
                          ": expected " + std::to_string(n) + " fields");
      }
    };
    if (section == "labels") {
      need(2);
      index.label_counts[f[0]] = ParseCount(f[1]);
    } else if (section == "senses") {
      need(3);
      index.lemma_sense_counts[f[0]][f[1]] = ParseCount(f[2]);
    } else if (section == "predicate_roles") {
      need(3);
      index.predicate_role_counts[{f[0], f[1]}] = ParseCount(f[2]);
    } else if (section == "names") {
      index.name_sequences.insert(line.empty() ? NameSequenceKey() : f);
    } else if (section == "dates") {
      DateSignature sig;
      for (const std::string &item : f) {
        size_t eq = item.find('=');
        if (eq == std::string::npos) {
          throw CorpusError("index snapshot line " + std::to_string(line_no) +
                            ": bad date item");
        }
        sig.push_back({item.substr(0, eq), item.substr(eq + 1)});
      }
      index.date_signatures.insert(sig);
    } else if (section == "entity_values") {
      need(2);
      index.entity_values.insert({f[0], f[1]});
    } else if (section == "wiki_values") {
      need(1);
      index.wiki_values.insert(f[0]);
    } else if (section == "ne_types") {
      index.ne_type_pairs.insert(
          {f[0], NameSequenceKey(f.begin() + 1, f.end())});
    } else if (section == "training_ids") {
      need(1);
      index.training_ids.insert(f[0]);
    } else {
      throw CorpusError("index snapshot line " + std::to_string(line_no) +
                        ": row outside a known section");
    }
  }
  return index;
}

Band BandOf(int count) {
  if (count <= 0) return Band::kUnseen;
  if (count <= kRareMax) return Band::kRare;
  if (count < kFrequentMin) return Band::kMid;
  return Band::kFrequent;
}

std::string_view BandName(Band band) {
  switch (band) {
    case Band::kUnseen:
      return "unseen";
    case Band::kRare:
      return "rare";
    case Band::kMid:
      return "mid";
    case Band::kFrequent:
      return "frequent";
  }
  return "";
}

}  // namespace amrprobe

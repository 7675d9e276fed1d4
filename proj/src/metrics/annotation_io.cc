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


#include "amrprobe/metrics/annotation_io.h"

#include <charconv>
#include <sstream>

#include "amrprobe/amr/corpus.h"
#include "amrprobe/amr/penman.h"

namespace amrprobe {
namespace {

[[noreturn]] void Fail(int line_no, const std::string &what) {
  throw MetricError("annotation line " + std::to_string(line_no) + ": " +
                    what);
}

// Splits on `sep`, honouring backslash escapes.
std::vector<std::string> SplitEscaped(std::string_view text, char sep) {
  std::vector<std::string> out(1);
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\\' && i + 1 < text.size()) {
      out.back() += text[++i];
    } else if (c == sep) {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

std::string Escape(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (c == '\t' || c == '\n' || c == '\r') {
      throw MetricError("annotation token contains a tab or newline");
    }
    if (c == '|' || c == ';' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string JoinEscaped(const std::vector<std::string> &tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ';';
    out += Escape(tokens[i]);
  }
  return out;
}

int ParseCount(std::string_view text, int line_no) {
  int n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(line_no, "expected a number, got '" + std::string(text) + "'");
  }
  return n;
}

ConstantValue ParseConstant(std::string_view text, int line_no) {
  if (text.empty()) Fail(line_no, "empty value");
  if (text.front() != '"') return ConstantValue::FromBareToken(text);
  if (text.size() < 2 || text.back() != '"') {
    Fail(line_no, "unterminated string value");
  }
  std::string out;
  for (size_t i = 1; i + 1 < text.size(); ++i) {
    if (text[i] == '\\' && i + 2 < text.size()) ++i;
    out += text[i];
  }
  return ConstantValue::String(out);
}

// Number of fragment lines the row expects.
size_t FragmentCount(MetricKind kind, std::string_view payload, int line_no) {
  switch (kind) {
    case MetricKind::kExactMatch:
    case MetricKind::kSubgraphRecall:
    case MetricKind::kConjunctRecall:
    case MetricKind::kUnseenOpiRecall:
      return 1;
    case MetricKind::kConjunctPrecision:
      return ParseCount(payload, line_no);
    default:
      return 0;
  }
}

void ParsePayload(MetricSpec &spec, std::string_view payload, int line_no) {
  std::vector<std::string> fields = SplitEscaped(payload, '|');
  auto flags_from = [&](size_t first, bool allow_min, bool allow_reif) {
    for (size_t i = first; i < fields.size(); ++i) {
      const std::string &f = fields[i];
      if (f == "nosense") {
        spec.sense_sensitive = false;
      } else if (allow_min && f.rfind("min=", 0) == 0) {
        spec.min_occurrences =
            ParseCount(std::string_view(f).substr(4), line_no);
      } else if (allow_reif && !f.empty()) {
        spec.reifications = SplitEscaped(f, ';');
      } else {
        Fail(line_no, "unexpected payload field '" + f + "'");
      }
    }
  };
  switch (spec.kind) {
    case MetricKind::kNodeLabelRecall:
      spec.labels = SplitEscaped(fields[0], ';');
      flags_from(1, true, false);
      break;
    case MetricKind::kEdgeRecall:
      if (fields.size() < 3) Fail(line_no, "edge payload needs src|role|tgt");
      spec.labels = {fields[0], fields[2]};
      spec.edge_role = fields[1];
      flags_from(3, false, true);
      break;
    case MetricKind::kSubgraphRecall:
      if (fields[0] == "nosense") spec.sense_sensitive = false;
      break;
    case MetricKind::kNameSequenceRecall:
      spec.tokens = SplitEscaped(payload, ';');
      break;
    case MetricKind::kDateAttributeRecall:
      for (const std::string &item : SplitEscaped(payload, ';')) {
        size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
          Fail(line_no, "date item needs role=value");
        }
        spec.date.push_back({item.substr(0, eq), item.substr(eq + 1)});
      }
      break;
    case MetricKind::kEntityValueRecall:
    case MetricKind::kWikiRecall:
      spec.value = ParseConstant(payload, line_no);
      break;
    case MetricKind::kNeTypeRecall:
      if (fields.size() != 2) Fail(line_no, "ne_type payload needs type|names");
      spec.labels = {fields[0]};
      spec.tokens = SplitEscaped(fields[1], ';');
      break;
    case MetricKind::kUnseenOpiRecall:
      spec.index = ParseCount(payload, line_no);
      break;
    case MetricKind::kImperativeRecall:
      if (fields.size() < 2) Fail(line_no, "imperative payload needs pred|subj");
      spec.labels = {fields[0], fields[1]};
      flags_from(2, false, false);
      break;
    case MetricKind::kExactMatch:
    case MetricKind::kConjunctRecall:
    case MetricKind::kConjunctPrecision:
      break;
  }
}

}  // namespace

std::string FormatPayload(const MetricSpec &spec) {
  std::string out;
  auto flag = [&](bool on, std::string_view text) {
    if (on) out += "|" + std::string(text);
  };
  switch (spec.kind) {
    case MetricKind::kNodeLabelRecall:
      out = JoinEscaped(spec.labels);
      flag(!spec.sense_sensitive, "nosense");
      flag(spec.min_occurrences != 1,
           "min=" + std::to_string(spec.min_occurrences));
      break;
    case MetricKind::kEdgeRecall:
      out = Escape(spec.labels[0]) + "|" + Escape(spec.edge_role) + "|" +
            Escape(spec.labels[1]);
      flag(!spec.reifications.empty(), JoinEscaped(spec.reifications));
      flag(!spec.sense_sensitive, "nosense");
      break;
    case MetricKind::kSubgraphRecall:
      out = spec.sense_sensitive ? "-" : "nosense";
      break;
    case MetricKind::kNameSequenceRecall:
      out = JoinEscaped(spec.tokens);
      break;
    case MetricKind::kDateAttributeRecall: {
      std::vector<std::string> items;
      for (const auto &[role, value] : spec.date) {
        items.push_back(role + "=" + value);
      }
      out = JoinEscaped(items);
      break;
    }
    case MetricKind::kEntityValueRecall:
    case MetricKind::kWikiRecall:
      out = spec.value->ToPenman();
      if (out.find_first_of("\t\n") != std::string::npos) {
        throw MetricError("value contains a tab or newline");
      }
      break;
    case MetricKind::kNeTypeRecall:
      out = Escape(spec.labels[0]) + "|" + JoinEscaped(spec.tokens);
      break;
    case MetricKind::kUnseenOpiRecall:
      out = std::to_string(spec.index);
      break;
    case MetricKind::kConjunctPrecision:
      out = std::to_string(spec.fragments.size());
      break;
    case MetricKind::kImperativeRecall:
      out = Escape(spec.labels[0]) + "|" + Escape(spec.labels[1]);
      flag(!spec.sense_sensitive, "nosense");
      break;
    case MetricKind::kExactMatch:
    case MetricKind::kConjunctRecall:
      out = "-";
      break;
  }
  return out;
}

size_t PayloadFragmentCount(MetricKind kind, std::string_view payload) {
  return FragmentCount(kind, payload, 0);
}

MetricSpec ParseCheck(std::string_view role, std::string_view kind,
                      std::string_view payload,
                      const std::vector<std::string> &fragment_lines) {
  MetricSpec spec;
  std::optional<MetricRole> r = ParseRole(role);
  if (!r) throw MetricError("unknown role '" + std::string(role) + "'");
  std::optional<MetricKind> k = ParseKind(kind);
  if (!k) throw MetricError("unknown kind '" + std::string(kind) + "'");
  spec.role = *r;
  spec.kind = *k;
  ParsePayload(spec, payload, 0);
  if (fragment_lines.size() != FragmentCount(spec.kind, payload, 0)) {
    throw MetricError("wrong number of fragment lines");
  }
  for (const std::string &line : fragment_lines) {
    spec.fragments.push_back(ParsePenman(line));
  }
  ValidatePayload(spec);
  return spec;
}

std::vector<CategoryInstance> ReadAnnotations(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
    }
  }
  std::vector<CategoryInstance> out;
  size_t i = 0;
  while (i < lines.size()) {
    const std::string &line = lines[i];
    int line_no = static_cast<int>(i) + 1;
    ++i;
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == ' ' || line[0] == '\t') {
      Fail(line_no, "fragment line without a row");
    }
    std::vector<std::string> fields;
    {
      std::istringstream row(line);
      std::string field;
      while (std::getline(row, field, '\t')) fields.push_back(field);
      if (!line.empty() && line.back() == '\t') fields.emplace_back();
    }
    if (fields.size() != 5) Fail(line_no, "expected 5 tab-separated fields");
    MetricSpec spec;
    std::optional<MetricRole> role = ParseRole(fields[2]);
    if (!role) Fail(line_no, "unknown role '" + fields[2] + "'");
    std::optional<MetricKind> kind = ParseKind(fields[3]);
    if (!kind) Fail(line_no, "unknown kind '" + fields[3] + "'");
    spec.role = *role;
    spec.kind = *kind;
    ParsePayload(spec, fields[4], line_no);
    size_t want = FragmentCount(spec.kind, fields[4], line_no);
    for (size_t f = 0; f < want; ++f) {
      if (i >= lines.size() || lines[i].empty() ||
          (lines[i][0] != ' ' && lines[i][0] != '\t')) {
        Fail(line_no, "expected " + std::to_string(want) +
                          " indented fragment line(s)");
      }
      try {
        spec.fragments.push_back(ParsePenman(lines[i]));
      } catch (const AmrError &e) {
        Fail(static_cast<int>(i) + 1, e.what());
      }
      ++i;
    }
    try {
      ValidatePayload(spec);
    } catch (const MetricError &e) {
      Fail(line_no, e.what());
    }
    if (out.empty() || out.back().entry_id != fields[0] ||
        out.back().category_id != fields[1]) {
      out.push_back({fields[0], fields[1], {}});
    }
    out.back().checks.push_back(std::move(spec));
  }
  return out;
}

std::vector<CategoryInstance> ReadAnnotationsFile(const std::string &path) {
  return ReadAnnotations(ReadFile(path));
}

std::string WriteAnnotations(const std::vector<CategoryInstance> &instances) {
  std::string out =
      "# entry_id\tcategory_id\trole\tkind\tpayload\n";
  for (const CategoryInstance &inst : instances) {
    for (const MetricSpec &spec : inst.checks) {
      ValidatePayload(spec);
      out += inst.entry_id + "\t" + inst.category_id + "\t" +
             std::string(RoleName(spec.role)) + "\t" +
             std::string(KindName(spec.kind)) + "\t" + FormatPayload(spec) +
             "\n";
      for (const AmrGraph &g : spec.fragments) {
        out += "\t" + SerializePenman(g) + "\n";
      }
    }
  }
  return out;
}

}  // namespace amrprobe

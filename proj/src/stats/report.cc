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


#include "amrprobe/stats/report.h"

#include <algorithm>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "amrprobe/metrics/categories.h"
#include "amrprobe/stats/stats.h"

namespace amrprobe {
namespace {

constexpr std::string_view kResultsHeader =
    "category_id\tmetric_name\tnumerator\tdenominator\tscore_percent\t"
    "ci_low\tci_high";

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, '\t')) out.push_back(field);
  return out;
}

double ParseDouble(const std::string &text, int line_no) {
  try {
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception &) {
  }
  throw StatsError("results line " + std::to_string(line_no) +
                   ": bad number '" + text + "'");
}

int CategoryRank(const std::string &id) {
  const std::vector<CategoryInfo> &all = Categories();
  for (size_t i = 0; i < all.size(); ++i) {
    if (all[i].id == id) return static_cast<int>(i);
  }
  return static_cast<int>(all.size());
}

struct RowKey {
  std::string category;
  std::string metric;
};

// Union of (category, metric) rows across parsers, categories in registry
// order and metrics in first-appearance order.
std::vector<RowKey> CollectRows(const std::vector<ParserResults> &parsers) {
  std::vector<RowKey> rows;
  for (const ParserResults &p : parsers) {
    for (const EvaluationResult &r : p.results) {
      bool seen = false;
      for (const RowKey &k : rows) {
        seen |= k.category == r.category_id && k.metric == r.metric_name;
      }
      if (!seen) rows.push_back({r.category_id, r.metric_name});
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const RowKey &a, const RowKey &b) {
                     return CategoryRank(a.category) < CategoryRank(b.category);
                   });
  return rows;
}

const EvaluationResult *Find(const ParserResults &p, const RowKey &key) {
  for (const EvaluationResult &r : p.results) {
    if (r.category_id == key.category && r.metric_name == key.metric) {
      return &r;
    }
  }
  return nullptr;
}

std::string Cell(const EvaluationResult *r) {
  if (r == nullptr || r->denominator == 0) return "-";
  WilsonInterval ci = Wilson(r->numerator, r->denominator);
  return fmt::format("{} [{},{}]", FormatPercent(r->score()),
                     FormatPercent(100 * ci.low), FormatPercent(100 * ci.high));
}

std::string LatexEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
      case '%':
      case '_':
      case '#':
      case '$':
        out += '\\';
        out += c;
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string Emit(const std::vector<std::vector<std::string>> &table,
                 TableFormat format, std::string_view latex_columns) {
  std::string out;
  switch (format) {
    case TableFormat::kTsv:
      for (const auto &row : table) {
        for (size_t i = 0; i < row.size(); ++i) {
          out += (i ? "\t" : "") + row[i];
        }
        out += "\n";
      }
      break;
    case TableFormat::kMarkdown:
      for (size_t r = 0; r < table.size(); ++r) {
        out += "|";
        for (const std::string &cell : table[r]) out += " " + cell + " |";
        out += "\n";
        if (r == 0) {
          out += "|";
          for (size_t i = 0; i < table[r].size(); ++i) out += " --- |";
          out += "\n";
        }
      }
      break;
    case TableFormat::kLatex:
      out += "\\begin{tabular}{" + std::string(latex_columns) + "}\n";
      for (size_t r = 0; r < table.size(); ++r) {
        out += "  ";
        for (size_t i = 0; i < table[r].size(); ++i) {
          out += (i ? " & " : "") + LatexEscape(table[r][i]);
        }
        out += r == 0 ? " \\\\\\hline\n" : " \\\\\n";
      }
      out += "\\end{tabular}\n";
      break;
  }
  return out;
}

}  // namespace

std::string WriteResults(const std::vector<EvaluationResult> &results) {
  std::string out = std::string(kResultsHeader) + "\n";
  for (const EvaluationResult &r : results) {
    if (r.denominator <= 0) {
      throw StatsError("result " + r.category_id + "/" + r.metric_name +
                       " has no datapoints");
    }
    WilsonInterval ci = Wilson(r.numerator, r.denominator);
    out += fmt::format("{}\t{}\t{}\t{}\t{:.2f}\t{:.2f}\t{:.2f}\n",
                       r.category_id, r.metric_name, r.numerator,
                       r.denominator, r.score(), 100 * ci.low, 100 * ci.high);
  }
  return out;
}

std::vector<EvaluationResult> ReadResults(std::string_view text) {
  std::vector<EvaluationResult> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == kResultsHeader || line[0] == '#') continue;
    std::vector<std::string> f = SplitTabs(line);
    if (f.size() != 7) {
      throw StatsError("results line " + std::to_string(line_no) +
                       ": expected 7 fields");
    }
    EvaluationResult r;
    r.category_id = f[0];
    r.metric_name = f[1];
    r.role = RoleForMetricName(f[1]);
    r.numerator = ParseDouble(f[2], line_no);
    r.denominator = static_cast<int>(ParseDouble(f[3], line_no));
    if (r.denominator <= 0 || r.numerator < 0 || r.numerator > r.denominator) {
      throw StatsError("results line " + std::to_string(line_no) +
                       ": inconsistent counts");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SetSummary> CompactSummary(
    const std::vector<ParserResults> &parsers) {
  std::map<int, std::vector<std::vector<double>>> scores;  // set -> parser
  std::map<int, bool> has_any;
  for (size_t p = 0; p < parsers.size(); ++p) {
    for (const EvaluationResult &r : parsers[p].results) {
      const CategoryInfo *info = FindCategory(r.category_id);
      if (info == nullptr) {
        throw StatsError("unknown category id: " + r.category_id);
      }
      has_any[info->set] = true;
      auto &per_parser = scores[info->set];
      per_parser.resize(parsers.size());
      if (r.role == MetricRole::kMain && r.denominator > 0) {
        per_parser[p].push_back(r.score());
      }
    }
  }
  std::vector<SetSummary> out;
  for (const auto &[set, any] : has_any) {
    SetSummary summary;
    summary.set = set;
    summary.set_name = SetName(set);
    for (size_t p = 0; p < parsers.size(); ++p) {
      const std::vector<double> &v = scores[set][p];
      if (v.empty()) {
        throw StatsError("set " + std::to_string(set) +
                         " has no main metrics for " + parsers[p].parser);
      }
      double sum = 0;
      for (double s : v) sum += s;
      summary.averages.push_back(sum / v.size());
    }
    out.push_back(std::move(summary));
  }
  return out;
}

std::optional<TableFormat> ParseTableFormat(std::string_view name) {
  if (name == "tsv") return TableFormat::kTsv;
  if (name == "markdown" || name == "md") return TableFormat::kMarkdown;
  if (name == "latex") return TableFormat::kLatex;
  return std::nullopt;
}

std::string RenderTables(const std::vector<ParserResults> &parsers,
                         TableFormat format, TableStyle style) {
  std::vector<std::vector<std::string>> table;
  std::string columns;
  if (style == TableStyle::kCompact) {
    std::vector<std::string> header = {"Set"};
    columns = "l";
    for (const ParserResults &p : parsers) {
      header.push_back(p.parser);
      columns += "|c";
    }
    table.push_back(header);
    for (const SetSummary &s : CompactSummary(parsers)) {
      std::vector<std::string> row = {std::to_string(s.set) + ". " +
                                      s.set_name};
      for (double avg : s.averages) row.push_back(FormatPercent(avg));
      table.push_back(row);
    }
    return Emit(table, format, columns);
  }

  std::vector<std::string> header = {"Set", "Category", "Metric"};
  columns = "l|l|l";
  for (const ParserResults &p : parsers) {
    header.push_back(p.parser);
    columns += "|c";
  }
  header.push_back("#");
  columns += "|r";
  table.push_back(header);
  int last_set = 0;
  std::string last_category;
  for (const RowKey &key : CollectRows(parsers)) {
    const CategoryInfo *info = FindCategory(key.category);
    int set = info ? info->set : 0;
    std::string name = info ? info->display_name : key.category;
    std::vector<std::string> row;
    row.push_back(set != last_set ? std::to_string(set) : "");
    row.push_back(key.category != last_category ? name : "");
    row.push_back(key.metric);
    int count = 0;
    for (const ParserResults &p : parsers) {
      const EvaluationResult *r = Find(p, key);
      row.push_back(Cell(r));
      if (r != nullptr && count == 0) count = r->denominator;
    }
    row.push_back(std::to_string(count));
    table.push_back(row);
    last_set = set;
    last_category = key.category;
  }
  return Emit(table, format, columns);
}

}  // namespace amrprobe

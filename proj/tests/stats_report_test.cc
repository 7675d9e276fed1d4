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


#include <cmath>
#include <regex>

#include "amrprobe/amr/corpus.h"
#include "amrprobe/amr/penman.h"
#include "amrprobe/stats/dot.h"
#include "amrprobe/stats/report.h"
#include "amrprobe/stats/stats.h"
#include "dot_checker.h"
#include "gtest/gtest.h"

namespace amrprobe {
namespace {

std::string Rendered(double k, double n) {
  WilsonInterval ci = Wilson(k, n);
  return "[" + FormatPercent(100 * ci.low) + "," + FormatPercent(100 * ci.high) +
         "]";
}

TEST(WilsonTest, Fixtures) {
  EXPECT_EQ(Rendered(14, 36), "[25,55]");
  EXPECT_EQ(Rendered(18, 36), "[34,66]");
  EXPECT_EQ(Rendered(13, 13), "[77,100]");
  EXPECT_EQ(Rendered(0, 70), "[00,05]");
  WilsonInterval ci = Wilson(14, 36);
  EXPECT_NEAR(ci.low, 0.248, 5e-4);
  EXPECT_NEAR(ci.high, 0.551, 5e-4);
  EXPECT_EQ(Wilson(0, 5).low, 0.0);
  EXPECT_EQ(Wilson(5, 5).high, 1.0);
}

TEST(WilsonTest, Errors) {
  EXPECT_THROW(Wilson(0, 0), StatsError);
  EXPECT_THROW(Wilson(3, 2), StatsError);
  EXPECT_THROW(Wilson(1, 2, 1.0), StatsError);
}

TEST(WilsonTest, Properties) {
  for (int n = 1; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) {
      WilsonInterval ci = Wilson(k, n);
      double p = static_cast<double>(k) / n;
      EXPECT_LE(ci.low, p + 1e-12);
      EXPECT_GE(ci.high, p - 1e-12);
      EXPECT_GE(ci.low, 0.0);
      EXPECT_LE(ci.high, 1.0);
      WilsonInterval mirror = Wilson(n - k, n);
      EXPECT_NEAR(ci.low, 1 - mirror.high, 1e-12);
      EXPECT_NEAR(ci.high, 1 - mirror.low, 1e-12);
      // Same proportion, ten times the sample: strictly narrower.
      WilsonInterval wide = Wilson(10 * k, 10 * n);
      EXPECT_LT(wide.high - wide.low, ci.high - ci.low);
    }
  }
}

TEST(NormalTest, KnownValues) {
  EXPECT_NEAR(NormalQuantile(0.975), 1.959964, 1e-6);
  EXPECT_NEAR(NormalCdf(0), 0.5, 1e-15);
  EXPECT_NEAR(NormalCdf(-1.959964), 0.025, 1e-7);
}

TEST(ZTest, Fixtures) {
  ZTestResult r = TwoProportionZ(14, 15, 7, 15);
  EXPECT_GE(r.p_two_tailed, 0.004);
  EXPECT_LE(r.p_two_tailed, 0.006);
  EXPECT_NEAR(r.z, 2.7889, 1e-3);
  ZTestResult same = TwoProportionZ(6, 15, 6, 15);
  EXPECT_EQ(same.z, 0);
  EXPECT_EQ(same.p_two_tailed, 1);
  EXPECT_THROW(TwoProportionZ(15, 15, 15, 15), StatsError);
  EXPECT_THROW(TwoProportionZ(0, 15, 0, 15), StatsError);
  EXPECT_THROW(TwoProportionZ(1, 0, 1, 2), StatsError);
}

TEST(ZTest, Antisymmetry) {
  for (int k1 = 0; k1 <= 10; ++k1) {
    for (int k2 = 0; k2 <= 12; ++k2) {
      if (k1 + k2 == 0 || k1 + k2 == 22) continue;
      ZTestResult a = TwoProportionZ(k1, 10, k2, 12);
      ZTestResult b = TwoProportionZ(k2, 12, k1, 10);
      EXPECT_NEAR(a.z, -b.z, 1e-12);
      EXPECT_NEAR(a.p_two_tailed, b.p_two_tailed, 1e-12);
    }
  }
}

TEST(RoundingTest, HalfUpAndPadding) {
  EXPECT_EQ(RoundHalfUp(35.5), 36);
  EXPECT_EQ(RoundHalfUp(59.5), 60);
  EXPECT_EQ(RoundHalfUp(37.8333), 38);
  EXPECT_EQ(FormatPercent(3.2), "03");
  EXPECT_EQ(FormatPercent(100), "100");
  EXPECT_EQ(FormatPercent(0), "00");
}

EvaluationResult Result(const std::string &category, const std::string &metric,
                        double k, int n) {
  EvaluationResult r;
  r.category_id = category;
  r.metric_name = metric;
  r.role = RoleForMetricName(metric);
  r.numerator = k;
  r.denominator = n;
  return r;
}

TEST(CompactSummaryTest, AveragesMainScoresOnly) {
  ParserResults p{"p",
                  {Result("pragmatic_coreference_testset", "Edge recall", 39, 100),
                   Result("pragmatic_coreference_testset", "Prerequisites", 50,
                          100),
                   Result("pragmatic_coreference_winograd", "Edge recall", 32,
                          100)}};
  std::vector<SetSummary> s = CompactSummary({p});
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].set, 1);
  EXPECT_DOUBLE_EQ(s[0].averages[0], 35.5);
  EXPECT_EQ(RoundHalfUp(s[0].averages[0]), 36);

  ParserResults set4{"p", {}};
  for (double v : {69.0, 45.0, 45.0, 0.0, 35.0, 33.0}) {
    set4.results.push_back(Result("rare_node_labels", "Label recall", v, 100));
  }
  EXPECT_EQ(RoundHalfUp(CompactSummary({set4})[0].averages[0]), 38);
}

TEST(CompactSummaryTest, ExtremesAndErrors) {
  ParserResults all{"p", {}};
  ParserResults none{"q", {}};
  for (const char *c : {"seen_names", "unseen_names", "seen_dates"}) {
    all.results.push_back(Result(c, "Name recall", 20, 20));
    none.results.push_back(Result(c, "Name recall", 0, 20));
  }
  std::vector<SetSummary> s = CompactSummary({all, none});
  EXPECT_EQ(s[0].averages[0], 100);
  EXPECT_EQ(s[0].averages[1], 0);
  ParserResults only_prereq{"p", {Result("passives", "Prerequisites", 1, 2)}};
  EXPECT_THROW(CompactSummary({only_prereq}), StatsError);
}

TEST(ResultsFileTest, RoundTrip) {
  std::vector<EvaluationResult> results = {
      Result("pragmatic_coreference_testset", "Edge recall", 14, 36),
      Result("pragmatic_coreference_testset", "Prerequisites", 18, 36),
      Result("long_lists", "Conjunct precision", 41.75, 45)};
  std::string text = WriteResults(results);
  EXPECT_NE(text.find("Edge recall\t14\t36\t38.89\t24.78\t55.14"),
            std::string::npos);
  std::vector<EvaluationResult> back = ReadResults(text);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[1].role, MetricRole::kPrerequisite);
  EXPECT_EQ(back[2].numerator, 41.75);
  EXPECT_EQ(WriteResults(back), text);
  EXPECT_THROW(ReadResults("a\tb\t3\t2\t1\t1\t1\n"), StatsError);
  EXPECT_THROW(ReadResults("a\tb\n"), StatsError);
}

TEST(RenderTest, FullRowFormatting) {
  ParserResults p{"parser",
                  {Result("pragmatic_coreference_testset", "Edge recall", 14,
                          36)}};
  std::string tsv = RenderTables({p}, TableFormat::kTsv, TableStyle::kFull);
  EXPECT_NE(tsv.find("39 [25,55]\t36"), std::string::npos);
  EXPECT_EQ(tsv.substr(0, tsv.find('\n')),
            "Set\tCategory\tMetric\tparser\t#");
  std::string md =
      RenderTables({p}, TableFormat::kMarkdown, TableStyle::kFull);
  EXPECT_NE(md.find("| 39 [25,55] | 36 |"), std::string::npos);
}

TEST(RenderTest, EmptyIsHeaderOnly) {
  ParserResults p{"parser", {}};
  std::string tsv = RenderTables({p}, TableFormat::kTsv, TableStyle::kFull);
  EXPECT_EQ(tsv, "Set\tCategory\tMetric\tparser\t#\n");
}

std::vector<ParserResults> ReferenceParsers() {
  std::vector<ParserResults> out;
  for (const char *name : {"parser_a", "parser_b", "parser_c"}) {
    out.push_back(
        {name, ReadResults(ReadFile(std::string(AMRPROBE_FIXTURE_DIR) +
                                    "/reference_results/" + name + ".tsv"))});
  }
  return out;
}

TEST(RenderTest, LatexGolden) {
  std::string latex = RenderTables(ReferenceParsers(), TableFormat::kLatex,
                                   TableStyle::kFull);
  std::string golden =
      ReadFile(std::string(AMRPROBE_FIXTURE_DIR) + "/golden_full_table.tex");
  EXPECT_EQ(latex, golden);
  std::string compact = RenderTables(ReferenceParsers(), TableFormat::kLatex,
                                     TableStyle::kCompact);
  EXPECT_NE(compact.find("3. Structural generalization & 32 & 18 & 59 \\\\"),
            std::string::npos)
      << compact;
}

TEST(RenderTest, Deterministic) {
  auto parsers = ReferenceParsers();
  EXPECT_EQ(RenderTables(parsers, TableFormat::kMarkdown, TableStyle::kFull),
            RenderTables(parsers, TableFormat::kMarkdown, TableStyle::kFull));
  EXPECT_FALSE(ParseTableFormat("html").has_value());
}

int CountHighlights(const std::string &dot, const std::string &color) {
  // Each highlighted element carries exactly one "color=<c>," attribute.
  std::regex re("[^t]color=" + color + ",");
  return std::distance(
      std::sregex_iterator(dot.begin(), dot.end(), re), std::sregex_iterator());
}

TEST(DotTest, IdenticalGraphsHaveNoHighlights) {
  AmrGraph g = ParsePenman(
      "(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b :polarity -))");
  std::string dot = ToDot(g, g);
  EXPECT_EQ(testing::DotChecker::Check(dot), "") << dot;
  EXPECT_EQ(CountHighlights(dot, "red"), 0);
  EXPECT_EQ(CountHighlights(dot, "blue"), 0);
}

TEST(DotTest, ExtraGoldRelationIsTheOnlyHighlight) {
  AmrGraph gold =
      ParsePenman("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02 :ARG0 b))");
  AmrGraph predicted =
      ParsePenman("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02))");
  GraphDiff diff = DiffGraphs(gold, predicted);
  EXPECT_EQ(diff.unmatched_gold(), 1);
  EXPECT_EQ(diff.unmatched_predicted(), 0);
  std::string dot = ToDot(gold, predicted);
  EXPECT_EQ(testing::DotChecker::Check(dot), "") << dot;
  EXPECT_EQ(CountHighlights(dot, "red"), 1);
  EXPECT_EQ(CountHighlights(dot, "blue"), 0);
}

TEST(DotTest, ExtraPredictedMaterialIsBlue) {
  AmrGraph gold = ParsePenman("(r / run-02 :ARG0 (m / mechanic))");
  AmrGraph predicted = ParsePenman(
      "(r / run-02 :ARG0 (m / mechanic) :ARG1 (c / centrifuge :quant 2))");
  GraphDiff diff = DiffGraphs(gold, predicted);
  EXPECT_EQ(diff.unmatched_gold(), 0);
  EXPECT_EQ(diff.unmatched_predicted(), 3);
  std::string dot = ToDot(gold, predicted);
  EXPECT_EQ(testing::DotChecker::Check(dot), "");
  // The attribute is drawn as a box node plus an edge.
  EXPECT_EQ(CountHighlights(dot, "blue"), 4);
}

TEST(DotTest, QuotingAndCheckerRejectsBadInput) {
  AmrGraph g = ParsePenman("(n / name :op1 \"say \\\"hi\\\"\")");
  EXPECT_EQ(testing::DotChecker::Check(ToDot(g, g)), "");
  EXPECT_NE(testing::DotChecker::Check("digraph { a -> }"), "");
  EXPECT_NE(testing::DotChecker::Check("digraph { a [label=\"x] }"), "");
  EXPECT_NE(testing::DotChecker::Check("digraph { a [label] }"), "");
  EXPECT_EQ(testing::DotChecker::Check("strict digraph g { a -> b -> c; }"),
            "");
}

}  // namespace
}  // namespace amrprobe

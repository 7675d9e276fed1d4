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


#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "amrprobe/amr/penman.h"
#include "amrprobe/generation/grammar.h"
#include "amrprobe/generation/sampler.h"
#include "amrprobe/generation/suite.h"
#include "amrprobe/metrics/evaluator.h"
#include "amrprobe/metrics/reification.h"
#include "generation_schema.h"
#include "gtest/gtest.h"

namespace amrprobe {
namespace {

using testing::SchemaViolation;

constexpr char kToy[] = R"(
# toy grammar
start S
S -> NP VI . => (<2> :ARG0 <1>)
S -> NP VT NP .
    => (<2> :ARG0 <1> :ARG1 <3>)
NP -> the N => <1>
N -> dog => (x / dog) ; class noun
N -> cat => (x / cat) ; class noun
N -> owl => (x / owl) ; class noun
VI -> slept => (x / sleep-01)
VT -> saw => (x / see-01)
VT -> chased => (x / chase-01) ; weight 2
)";

std::string Fails(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const GenerationError &e) {
    return e.what();
  }
  return "";
}

TEST(GrammarTest, ParsesRulesAndContinuations) {
  Grammar g = Grammar::Parse(kToy);
  EXPECT_EQ(g.start(), "S");
  EXPECT_EQ(g.rules().size(), 9u);
  EXPECT_TRUE(g.HasNonterminal("NP"));
  EXPECT_FALSE(g.HasNonterminal("dog"));
  const SyncRule &s2 = g.rules()[g.RulesFor("S")[1]];
  EXPECT_EQ(s2.slot_count, 3);
  ASSERT_EQ(s2.rhs.size(), 4u);
  EXPECT_EQ(s2.rhs[3].kind, Symbol::Kind::kTerminal);
  EXPECT_EQ(s2.graph.nodes.size(), 1u);
  EXPECT_EQ(s2.graph.nodes[0].edges.size(), 2u);
  EXPECT_DOUBLE_EQ(g.rules().back().weight, 2.0);
  EXPECT_EQ(g.rules()[g.RulesFor("N")[0]].LexicalKey(), "dog");
  EXPECT_TRUE(g.rules()[g.RulesFor("N")[0]].lexical());
}

TEST(GrammarTest, Features) {
  Grammar g = Grammar::Parse(
      "X[d>0,n] -> Y[d=d-1,n=n,k=?r] Y[k!=r] => (<1> :op1 <2>)\n"
      "Y[k=a] -> y => (y / y)\n");
  const SyncRule &r = g.rules()[0];
  ASSERT_EQ(r.lhs_features.size(), 2u);
  EXPECT_EQ(r.lhs_features[0].op, FeatureOp::kGt);
  EXPECT_EQ(r.lhs_features[1].value.kind, FeatureExpr::Kind::kBind);
  EXPECT_EQ(r.lhs_features[1].value.text, "n");
  const auto &f = r.rhs[0].features;
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0].value.kind, FeatureExpr::Kind::kVariable);
  EXPECT_EQ(f[0].value.text, "d");
  EXPECT_EQ(f[0].value.offset, -1);
  EXPECT_EQ(f[2].value.kind, FeatureExpr::Kind::kBind);
  EXPECT_EQ(r.rhs[1].features[0].op, FeatureOp::kNe);
  EXPECT_EQ(r.rhs[1].features[0].value.kind, FeatureExpr::Kind::kVariable);
}

TEST(GrammarTest, Includes) {
  std::map<std::string, std::string> files = {
      {"nouns.sg", "N -> dog => (d / dog)\n"},
      {"top.sg", "include nouns.sg\nS -> N => <1>\n"}};
  Grammar g = Grammar::Parse(files["top.sg"], "top.sg",
                             [&](const std::string &p) { return files.at(p); });
  EXPECT_EQ(g.rules().size(), 2u);
  EXPECT_EQ(g.start(), "N");  // first rule read
}

TEST(GrammarTest, Errors) {
  EXPECT_NE(Fails([] { Grammar::Parse("S -> X =>"); }), "");
  EXPECT_NE(Fails([] { Grammar::Parse("S -> x => (a / b"); }), "");
  EXPECT_NE(Fails([] { Grammar::Parse("S -> x"); }), "");
  EXPECT_NE(Fails([] { Grammar::Parse("S -> A => <2>\nA -> a => (a / a)"); }),
            "");
  EXPECT_NE(Fails([] { Grammar::Parse("S -> x => (a / b) ; weight 0"); }),
            "");
  EXPECT_NE(Fails([] { Grammar::Parse("S -> x => (a / b) ; frobnicate"); }),
            "");
  EXPECT_NE(Fails([] { Grammar::Parse("S[d~1] -> x => (a / b)"); }), "");
  EXPECT_NE(
      Fails([] { Grammar::Parse("S -> x => (a / b :ARG0-of \"c\")"); }), "");
  EXPECT_NE(Fails([] { Grammar::Parse("include x.sg\n"); }), "");
}

TEST(GrammarTest, Templates) {
  GraphTemplate t =
      ParseTemplate("(a / and :op1 <1> :op+ (n / new) :ARG1-of! @X)", 1);
  ASSERT_EQ(t.nodes.size(), 2u);
  const auto &e = t.nodes[0].edges;
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(e[0].value.kind, TemplateValue::Kind::kSlot);
  EXPECT_TRUE(e[1].next_op);
  EXPECT_EQ(e[2].role, "ARG1");
  EXPECT_TRUE(e[2].inverse);
  EXPECT_TRUE(e[2].marked);
  EXPECT_EQ(e[2].value.kind, TemplateValue::Kind::kBinding);
  GraphTemplate keep = ParseTemplate("(a / a :consist-of (b / b))", 0);
  EXPECT_FALSE(keep.nodes[0].edges[0].inverse);
  EXPECT_EQ(keep.nodes[0].edges[0].role, "consist-of");
  EXPECT_NE(Fails([] { ParseTemplate("<3>", 2); }), "");
}

TEST(RealizeTest, Punctuation) {
  EXPECT_EQ(Realize({"a", "owl", "saw", "a", "dog", ",", "me", "."}),
            "An owl saw a dog, me.");
  EXPECT_EQ(Realize({}), "");
}

TEST(SamplerTest, DeterministicUnderSeed) {
  Grammar g = Grammar::Parse(kToy);
  Sampler s(g);
  for (uint64_t seed = 1; seed < 20; ++seed) {
    Rng a(seed), b(seed);
    Derivation x = s.Sample("S", {}, a);
    Derivation y = s.Sample("S", {}, b);
    EXPECT_EQ(x.sentence, y.sentence);
    EXPECT_EQ(SerializePenman(x.graph), SerializePenman(y.graph));
  }
}

TEST(SamplerTest, EnumerateMatchesBruteForce) {
  Grammar g = Grammar::Parse(kToy);
  std::vector<std::string> nouns = {"dog", "cat", "owl"};
  std::set<std::string> expected;
  for (const auto &a : nouns) {
    expected.insert("The " + a + " slept.");
    for (const auto &v : {"saw", "chased"}) {
      for (const auto &b : nouns) {
        if (a != b) expected.insert("The " + a + " " + v + " the " + b + ".");
      }
    }
  }
  std::set<std::string> got;
  for (const Derivation &d : Sampler(g).Enumerate("S", {})) {
    EXPECT_TRUE(got.insert(d.sentence).second) << d.sentence;
  }
  EXPECT_EQ(got, expected);

  // Without the no-repeat class the reflexive pairs appear too.
  EXPECT_EQ(Sampler(g, {}).Enumerate("S", {}).size(), 3u + 2 * 9);
  EXPECT_EQ(Sampler(g).Enumerate("S", {}, 4).size(), 4u);
}

TEST(SamplerTest, GraphsFollowTheTemplates) {
  Grammar g = Grammar::Parse(kToy);
  for (const Derivation &d : Sampler(g).Enumerate("S", {})) {
    AmrGraph want = ParsePenman(d.sentence.find("slept") != std::string::npos
                                    ? "(s / sleep-01 :ARG0 (x / dog))"
                                    : "(s / see-01 :ARG0 (x / dog) :ARG1 "
                                      "(y / cat))");
    EXPECT_EQ(d.graph.size(), want.size()) << d.sentence;
    EXPECT_EQ(d.graph.relations().size(), want.relations().size());
    EXPECT_EQ(d.lexical_rules.size(), want.size());
  }
}

TEST(SamplerTest, Agreement) {
  Grammar g = Grammar::Parse(R"(
S[d] -> NP[n=?n] V[n=n] LIST[k=d] => (<2> :ARG0 <1> :ARG1 <3>)
NP[n=sg] -> he => (h / he)
NP[n=pl] -> they => (t / they)
V[n=sg] -> runs => (r / run-01)
V[n=pl] -> run => (r / run-01)
LIST[k=1] -> x => (x / x)
LIST[k>1] -> x LIST[k=k-1] => (<1> :op+ (x / x))
)");
  Sampler s(g, {});
  std::vector<Derivation> all = s.Enumerate("S", {{"d", "3"}});
  ASSERT_EQ(all.size(), 2u);
  std::set<std::string> sentences;
  for (const auto &d : all) sentences.insert(d.sentence);
  EXPECT_EQ(sentences, (std::set<std::string>{"He runs x x x", "They run x x x"}));
  AmrGraph list = all[0].graph;
  int ops = 0;
  for (const Relation &r : list.relations()) ops += r.role.rfind("op", 0) == 0;
  EXPECT_EQ(ops, 2);
  EXPECT_TRUE(s.Enumerate("S", {{"d", "0"}}).empty());
}

TEST(SamplerTest, UnsatisfiableRequests) {
  Grammar g = Grammar::Parse("S[d>0] -> x => (x / x)\n");
  Sampler s(g);
  Rng rng(1);
  EXPECT_NE(Fails([&] { s.Sample("S", {{"d", "0"}}, rng); }).find(
                "constraint-unsatisfiable"),
            std::string::npos);
  Grammar two = Grammar::Parse(
      "S -> N N N N => (a / and :op1 <1> :op2 <2> :op3 <3> :op4 <4>)\n"
      "N -> a => (a / a) ; class noun\nN -> b => (b / b) ; class noun\n"
      "N -> c => (c / c) ; class noun\n");
  EXPECT_NE(Fails([&] { Sampler(two).Sample("S", {}, rng); })
                .find("constraint-unsatisfiable"),
            std::string::npos);
  EXPECT_NE(Fails([&] { Sampler(two, {"noun"}, 10).Sample("S", {}, rng); })
                .find("constraint-unsatisfiable"),
            std::string::npos);
}

TEST(SamplerTest, LetAndBindScopes) {
  Grammar g = Grammar::Parse(R"(
S -> NP A B => (<2> :ARG1 <3>) ; let X=<1>
A -> NP2 E => (<2> :ARG0 @X :ARG2 <1>) ; bind Y=<1>
B -> dances => (d / dance-01 :ARG0 @Y)
E -> runs => (r / run-01)
NP -> kim => (k / kim)
NP2 -> lee => (l / lee)
)");
  std::vector<Derivation> all = Sampler(g).Enumerate("S", {});
  ASSERT_EQ(all.size(), 1u);
  const Derivation &d = all[0];
  AmrGraph want = ParsePenman(
      "(r / run-01 :ARG0 (k / kim) :ARG2 (l / lee) :ARG1 (d / dance-01 "
      ":ARG0 l))");
  EXPECT_TRUE(IsExactMatch(Normalize(d.graph), want))
      << SerializePenman(d.graph);
  EXPECT_EQ(d.bindings.count("Y"), 1u);
  EXPECT_EQ(d.bindings.count("X"), 0u);

  // A let made inside one slot is invisible to its siblings.
  Grammar bad = Grammar::Parse(
      "S -> A B => (<1> :ARG1 <2>)\nA -> N => <1> ; let X=<1>\n"
      "N -> n => (n / n)\nB -> b => (b / b :ARG0 @X)\n");
  EXPECT_TRUE(Sampler(bad).Enumerate("S", {}).empty());

  // Dropping a slot's graph leaves it disconnected.
  Grammar loose = Grammar::Parse(
      "S -> A B => <1>\nA -> a => (a / a)\nB -> b => (b / b)\n");
  EXPECT_NE(Fails([&] { Sampler(loose).Enumerate("S", {}); })
                .find("invalid graph"),
            std::string::npos);
}

TEST(SamplerTest, WhenConditions) {
  Grammar g = Grammar::Parse(R"(
S -> N V REF => (<2> :ARG0 <1> :ARG1 <3>) ; bind A=<1>
N[g=m] -> john => (j / john)
N[g=f] -> mary => (m / mary)
V -> saw => (s / see-01)
REF -> him => @A ; when A.g=m
REF -> her => @A ; when A.g=f
)");
  std::set<std::string> got;
  for (const Derivation &d : Sampler(g).Enumerate("S", {})) {
    got.insert(d.sentence);
    EXPECT_EQ(d.graph.size(), 2u);
  }
  EXPECT_EQ(got, (std::set<std::string>{"John saw him", "Mary saw her"}));
}

TEST(SamplerTest, MarkedEdges) {
  Grammar g = Grammar::Parse(
      "S -> saw N with N => (s / see-01 :ARG1 <1> :instrument! <2>)\n"
      "N -> it => (i / it) ; class noun\nN -> glass => (g / glass) ; class noun\n");
  for (const Derivation &d : Sampler(g).Enumerate("S", {})) {
    ASSERT_EQ(d.marked.size(), 1u);
    EXPECT_EQ(d.marked[0].source, d.graph.root());
    EXPECT_EQ(d.marked[0].role, "instrument");
  }
}

TEST(SamplerTest, CoveringReachesEveryKey) {
  Grammar g = Grammar::Parse(kToy);
  Sampler s(g);
  std::set<std::string> keys = s.ReachableKeys("S");
  EXPECT_EQ(keys, (std::set<std::string>{"cat", "chase-01", "dog", "owl",
                                         "see-01", "sleep-01"}));
  std::set<std::string> covered;
  Rng rng(7);
  for (int i = 0; i < 10 && covered != keys; ++i) {
    Derivation d = s.SampleCovering("S", {}, covered, rng);
    for (int r : d.lexical_rules) covered.insert(g.rules()[r].LexicalKey());
  }
  EXPECT_EQ(covered, keys);
}

TEST(SuiteTest, ParsesConfig) {
  GenerationSuite suite = ParseGenerationSuite(R"({
    "seed": 5,
    "categories": [
      {"category": "a", "grammar": "a.sg", "depths": [{"depth": 1, "count": 3},
       {"depth": 2, "count": 4, "features": {"v": "x"}}],
       "sanity": {"start": "SANITY", "count": 2}},
      {"category": "b", "kind": "attachment", "grammar": "b.sg", "seed": 9,
       "quotas": [{"start": "R", "count": 2}]}
    ]})");
  ASSERT_EQ(suite.categories.size(), 2u);
  const GenerationConfig *a = suite.Find("a");
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->MainCount(), 7);
  EXPECT_EQ(a->sanity_count, 2);
  EXPECT_EQ(a->depths[1].features,
            (FeatureRequest{{"v", "x"}}));
  EXPECT_NE(a->seed, 5u);
  EXPECT_EQ(suite.Find("b")->seed, 9u);
  EXPECT_EQ(suite.Find("b")->kind, CorpusKind::kAttachment);
  EXPECT_EQ(suite.Find("c"), nullptr);
  EXPECT_NE(Fails([] { ParseGenerationSuite("{"); }), "");
  EXPECT_NE(Fails([] {
              ParseGenerationSuite(
                  R"({"categories": [{"category": "a", "kind": "zz"}]})");
            }),
            "");
}

// Shipped corpora, generated once.
class ShippedTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    suite_ = new GenerationSuite(
        LoadGenerationSuite(DefaultDataDir() + "/generation.json"));
    corpora_ = new std::map<std::string, GeneratedCorpus>;
    for (const GenerationConfig &c : suite_->categories) {
      (*corpora_)[c.category_id] = GenerateCategory(c, DefaultDataDir());
    }
  }
  static void TearDownTestSuite() {
    delete corpora_;
    delete suite_;
  }

  static GenerationSuite *suite_;
  static std::map<std::string, GeneratedCorpus> *corpora_;
};

GenerationSuite *ShippedTest::suite_ = nullptr;
std::map<std::string, GeneratedCorpus> *ShippedTest::corpora_ = nullptr;

TEST_F(ShippedTest, Counts) {
  std::map<std::string, std::pair<int, int>> want = {
      {"nested_control_and_coordination", {50, 13}},
      {"multiple_adjectives", {40, 11}},
      {"centre_embedding", {30, 13}},
      {"long_lists", {101, 111}},
      {"cp_recursion", {100, 6}},
      {"cp_recursion_plus_coreference", {182, 24}},
      {"cp_recursion_plus_rc", {60, 4}},
      {"cp_recursion_plus_rc_plus_coreference", {70, 5}},
      {"pp_attachment", {325, 0}}};
  for (const auto &[id, counts] : want) {
    int main = 0, sanity = 0;
    for (const auto &e : corpora_->at(id).entries) (e.sanity ? sanity : main)++;
    EXPECT_EQ(main, counts.first) << id;
    EXPECT_EQ(sanity, counts.second) << id;
  }
}

TEST_F(ShippedTest, ListDatapoints) {
  int recall = 0, unseen = 0, precision = 0;
  for (const CategoryInstance &i : corpora_->at("long_lists").annotations) {
    for (const MetricSpec &m : i.checks) {
      recall += m.kind == MetricKind::kConjunctRecall;
      unseen += m.kind == MetricKind::kUnseenOpiRecall;
      precision += m.kind == MetricKind::kConjunctPrecision;
    }
  }
  EXPECT_EQ(recall, 1872);
  EXPECT_EQ(precision, 101);
  // Lists of n >= 20 contribute n - 19 unseen indices each.
  int expect_unseen = 0;
  for (const auto &e : corpora_->at("long_lists").entries) {
    if (!e.sanity && e.depth >= 20) expect_unseen += e.depth - 19;
  }
  EXPECT_EQ(unseen, expect_unseen);
}

TEST_F(ShippedTest, EntriesMatchTheirSchema) {
  for (const auto &[id, corpus] : *corpora_) {
    std::set<std::string> ids, sentences;
    for (const GeneratedEntry &e : corpus.entries) {
      EXPECT_TRUE(ids.insert(e.entry.id).second) << e.entry.id;
      if (e.sanity) {
        EXPECT_TRUE(sentences.insert(e.entry.sentence).second) << e.entry.id;
        continue;
      }
      if (corpus.entries.front().depth > 0 && id != "pp_attachment") {
        EXPECT_TRUE(sentences.insert(e.entry.sentence).second) << e.entry.id;
      }
      EXPECT_EQ(SchemaViolation(id, e), "") << e.entry.id;
    }
  }
}

TEST_F(ShippedTest, SanityCoversVocabulary) {
  for (const GenerationConfig &c : suite_->categories) {
    if (c.sanity_start.empty()) continue;
    Grammar g = LoadGrammar(DefaultDataDir() + "/" + c.grammar);
    Sampler s(g, c.no_repeat);
    std::set<std::string> keys = s.ReachableKeys(c.sanity_start);
    // Every key reachable from the sanity start shows up in some sanity
    // sentence or graph.
    std::string all;
    for (const GeneratedEntry &e : corpora_->at(c.category_id).entries) {
      if (e.sanity) all += " " + e.entry.sentence + " " +
                           SerializePenman(*e.entry.graph) + " ";
    }
    for (const std::string &k : keys) {
      std::string word = k.substr(0, k.find_first_of("- "));
      EXPECT_NE(all.find(word), std::string::npos) << c.category_id << " " << k;
    }
  }
}

TEST_F(ShippedTest, GoldIsPerfect) {
  for (const auto &[id, corpus] : *corpora_) {
    std::map<std::string, AmrGraph> gold;
    for (const GeneratedEntry &e : corpus.entries) {
      gold[e.entry.id] = *e.entry.graph;
    }
    std::vector<std::string> warnings;
    for (const EvaluationResult &r :
         EvaluateCategory(corpus.annotations, gold, &warnings)) {
      EXPECT_EQ(r.numerator, r.denominator) << id << " " << r.metric_name;
      EXPECT_GT(r.denominator, 0);
    }
    EXPECT_TRUE(warnings.empty());
  }
}

TEST_F(ShippedTest, Deterministic) {
  const GenerationConfig &c = *suite_->Find("cp_recursion_plus_coreference");
  GeneratedCorpus again = GenerateCategory(c, DefaultDataDir());
  const GeneratedCorpus &first = corpora_->at(c.category_id);
  ASSERT_EQ(again.entries.size(), first.entries.size());
  std::vector<CorpusEntry> a, b;
  for (const auto &e : first.entries) a.push_back(e.entry);
  for (const auto &e : again.entries) b.push_back(e.entry);
  EXPECT_EQ(WriteCorpus(a), WriteCorpus(b));

  GenerationConfig other = c;
  other.seed ^= 1;
  std::vector<CorpusEntry> d;
  for (const auto &e : GenerateCategory(other, DefaultDataDir()).entries) {
    d.push_back(e.entry);
  }
  EXPECT_NE(WriteCorpus(a), WriteCorpus(d));
}

TEST_F(ShippedTest, CorpusFilesRoundTrip) {
  for (const auto &[id, corpus] : *corpora_) {
    std::vector<CorpusEntry> entries;
    for (const auto &e : corpus.entries) entries.push_back(e.entry);
    std::vector<CorpusEntry> back = ReadCorpus(WriteCorpus(entries));
    ASSERT_EQ(back.size(), entries.size()) << id;
    for (size_t i = 0; i < back.size(); ++i) {
      EXPECT_EQ(back[i].id, entries[i].id);
      EXPECT_EQ(back[i].sentence, entries[i].sentence);
      ASSERT_TRUE(back[i].graph.has_value());
      EXPECT_TRUE(IsExactMatch(*back[i].graph, *entries[i].graph));
    }
  }
}

TEST_F(ShippedTest, AttachmentTargets) {
  const GeneratedCorpus &pp = corpora_->at("pp_attachment");
  bool found = false;
  for (const CategoryInstance &i : pp.annotations) {
    ASSERT_EQ(i.checks.size(), 2u);
    const MetricSpec &edge = i.checks[0];
    EXPECT_EQ(edge.kind, MetricKind::kEdgeRecall);
    EXPECT_EQ(i.checks[1].kind, MetricKind::kNodeLabelRecall);
    EXPECT_EQ(i.checks[1].role, MetricRole::kPrerequisite);
    EXPECT_EQ(i.checks[1].labels, edge.labels);
    if (edge.labels == std::vector<std::string>{"telescope", "journalist"} &&
        edge.edge_role == "poss") {
      found = true;
      EXPECT_FALSE(edge.reifications.empty());
    }
  }
  EXPECT_TRUE(found);
}

TEST_F(ShippedTest, Errors) {
  EXPECT_NE(Fails([&] { GenerateCategory(*suite_, "nope", DefaultDataDir()); }),
            "");
  // Only 121 distinct sentences exist at depth 1.
  GenerationConfig c = *suite_->Find("multiple_adjectives");
  c.depths = {{1, 200, {}}};
  EXPECT_NE(Fails([&] { GenerateCategory(c, DefaultDataDir()); }), "");
}

}  // namespace
}  // namespace amrprobe

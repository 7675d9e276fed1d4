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


#include "amrprobe/generation/suite.h"

#include <algorithm>
#include <cstdio>
#include <set>

#include "amrprobe/metrics/check.h"
#include "amrprobe/metrics/reification.h"
#include "json.hpp"

#ifndef AMRPROBE_DATA_DIR
#define AMRPROBE_DATA_DIR "data"
#endif

namespace amrprobe {
namespace {

using nlohmann::json;

// Attempts per entry before a depth is declared unsatisfiable.
constexpr int kMaxDraws = 2000;
// Sanity draws without new coverage before a pass gives up.
constexpr int kMaxStall = 500;
constexpr int kCoverPasses = 64;

uint64_t Fnv1a(const std::string &s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Padded(int value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%0*d", width, value);
  return buf;
}

FeatureRequest ParseFeatureObject(const json &j) {
  FeatureRequest out;
  for (const auto &[key, value] : j.items()) {
    out.emplace_back(key, value.is_string() ? value.get<std::string>()
                                            : value.dump());
  }
  return out;
}

CorpusKind ParseKindName(const std::string &name) {
  if (name == "exact_match") return CorpusKind::kExactMatch;
  if (name == "list") return CorpusKind::kList;
  if (name == "attachment") return CorpusKind::kAttachment;
  throw GenerationError("unknown corpus kind '" + name + "'");
}

GenerationConfig ParseCategory(const json &j, uint64_t suite_seed) {
  GenerationConfig c;
  c.category_id = j.at("category").get<std::string>();
  c.kind = ParseKindName(j.value("kind", "exact_match"));
  c.grammar = j.at("grammar").get<std::string>();
  c.start = j.value("start", "S");
  c.depth_feature = j.value("depth_feature", "d");
  c.seed = j.contains("seed") ? j.at("seed").get<uint64_t>()
                              : CategorySeed(suite_seed, c.category_id);
  if (j.contains("no_repeat")) {
    c.no_repeat = j.at("no_repeat").get<std::vector<std::string>>();
  }
  for (const json &d : j.value("depths", json::array())) {
    DepthAllocation a;
    a.depth = d.at("depth").get<int>();
    a.count = d.at("count").get<int>();
    if (d.contains("features")) a.features = ParseFeatureObject(d["features"]);
    if (a.count < 0) throw GenerationError("negative count");
    c.depths.push_back(std::move(a));
  }
  for (const json &q : j.value("quotas", json::array())) {
    c.quotas.push_back({q.at("start").get<std::string>(),
                        q.at("count").get<int>()});
  }
  if (j.contains("sanity")) {
    const json &s = j["sanity"];
    c.sanity_start = s.at("start").get<std::string>();
    c.sanity_count = s.value("count", 0);
    if (s.contains("features")) {
      c.sanity_features = ParseFeatureObject(s["features"]);
    }
  }
  return c;
}

GeneratedEntry MakeEntry(const Derivation &d, std::string id, int depth,
                         bool sanity) {
  GeneratedEntry e;
  e.entry.id = std::move(id);
  e.entry.sentence = d.sentence;
  e.entry.graph = d.graph;
  e.entry.metadata.emplace_back("depth", std::to_string(depth));
  if (sanity) e.entry.metadata.emplace_back("sanity", "1");
  if (!d.bindings.empty()) {
    std::string text;
    for (const auto &[name, var] : d.bindings) {
      text += (text.empty() ? "" : " ") + name + "=" + var;
    }
    e.entry.metadata.emplace_back("bindings", text);
  }
  e.depth = depth;
  e.sanity = sanity;
  e.bindings = d.bindings;
  e.marked = d.marked;
  return e;
}

std::vector<std::string> Reifications(const std::string &role) {
  std::vector<std::string> out;
  for (const Reification &r : ReificationTable::Default().rows()) {
    if (r.role == role) out.push_back(r.concept_label);
  }
  return out;
}

}  // namespace

int GenerationConfig::MainCount() const {
  int n = 0;
  for (const DepthAllocation &d : depths) n += d.count;
  for (const Quota &q : quotas) n += q.count;
  return n;
}

const GenerationConfig *GenerationSuite::Find(
    const std::string &category_id) const {
  for (const GenerationConfig &c : categories) {
    if (c.category_id == category_id) return &c;
  }
  return nullptr;
}

GenerationSuite ParseGenerationSuite(const std::string &json_text) {
  GenerationSuite suite;
  try {
    json j = json::parse(json_text);
    suite.seed = j.value("seed", uint64_t{0});
    for (const json &c : j.at("categories")) {
      suite.categories.push_back(ParseCategory(c, suite.seed));
    }
  } catch (const json::exception &e) {
    throw GenerationError(std::string("bad generation config: ") + e.what());
  }
  return suite;
}

GenerationSuite LoadGenerationSuite(const std::string &path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const std::exception &e) {
    throw GenerationError(e.what());
  }
  return ParseGenerationSuite(text);
}

std::string DefaultDataDir() { return AMRPROBE_DATA_DIR; }

uint64_t CategorySeed(uint64_t suite_seed, const std::string &category_id) {
  return suite_seed ^ Fnv1a(category_id);
}

std::vector<GeneratedEntry> Sample(const Grammar &grammar,
                                   const GenerationConfig &config) {
  Sampler sampler(grammar, config.no_repeat);
  Rng rng(config.seed);
  std::set<std::string> seen;
  std::map<int, int> per_depth;
  std::vector<GeneratedEntry> out;
  for (const DepthAllocation &alloc : config.depths) {
    FeatureRequest request = {
        {config.depth_feature, std::to_string(alloc.depth)}};
    request.insert(request.end(), alloc.features.begin(),
                   alloc.features.end());
    for (int i = 0; i < alloc.count; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < kMaxDraws && !placed; ++attempt) {
        Derivation d = sampler.Sample(config.start, request, rng);
        if (!seen.insert(d.sentence).second) continue;
        std::string id = config.category_id + "_d" + Padded(alloc.depth, 2) +
                         "_" + Padded(++per_depth[alloc.depth], 2);
        out.push_back(MakeEntry(d, id, alloc.depth, false));
        placed = true;
      }
      if (!placed) {
        throw GenerationError(
            "constraint-unsatisfiable: too few distinct sentences for " +
            config.category_id + " at depth " + std::to_string(alloc.depth));
      }
    }
  }
  return out;
}

std::vector<GeneratedEntry> SanitySplit(const Grammar &grammar,
                                        const GenerationConfig &config) {
  if (config.sanity_start.empty()) {
    throw GenerationError("no sanity split for " + config.category_id);
  }
  Sampler sampler(grammar, config.no_repeat);
  const std::set<std::string> wanted =
      sampler.ReachableKeys(config.sanity_start);

  // One greedy covering pass; empty when it stalls.
  auto cover = [&](Rng &rng) {
    std::set<std::string> covered, seen;
    std::vector<Derivation> out;
    int stall = 0;
    while (covered.size() < wanted.size()) {
      Derivation d = sampler.SampleCovering(
          config.sanity_start, config.sanity_features, covered, rng);
      size_t before = covered.size();
      if (seen.insert(d.sentence).second) {
        for (int r : d.lexical_rules) {
          const std::string key = grammar.rules()[r].LexicalKey();
          if (wanted.count(key)) covered.insert(key);
        }
      }
      if (covered.size() > before) {
        stall = 0;
        out.push_back(std::move(d));
      } else if (++stall > kMaxStall) {
        return std::vector<Derivation>();
      }
    }
    return out;
  };

  // Keep the smallest cover over a few seeded passes.
  std::vector<Derivation> best;
  bool found = false;
  for (int pass = 0; pass < kCoverPasses; ++pass) {
    Rng rng(config.seed ^ Fnv1a("sanity/" + std::to_string(pass)));
    std::vector<Derivation> cand = cover(rng);
    if (cand.empty() && !wanted.empty()) continue;
    if (!found || cand.size() < best.size()) best = std::move(cand);
    found = true;
    if (static_cast<int>(best.size()) <= config.sanity_count) break;
  }
  if (!found) {
    throw GenerationError("sanity split for " + config.category_id +
                          " cannot cover its vocabulary");
  }
  std::set<std::string> seen;
  for (const Derivation &d : best) seen.insert(d.sentence);
  Rng rng(config.seed ^ Fnv1a("sanity/pad"));
  for (int attempt = 0; static_cast<int>(best.size()) < config.sanity_count;
       ++attempt) {
    if (attempt > kMaxDraws * config.sanity_count) {
      throw GenerationError("too few distinct sanity sentences for " +
                            config.category_id);
    }
    Derivation d =
        sampler.Sample(config.sanity_start, config.sanity_features, rng);
    if (seen.insert(d.sentence).second) best.push_back(std::move(d));
  }

  int depth = 1;
  for (const auto &[f, v] : config.sanity_features) {
    if (f == config.depth_feature) depth = std::stoi(v);
  }
  std::vector<GeneratedEntry> out;
  for (const Derivation &d : best) {
    out.push_back(MakeEntry(
        d, config.category_id + "_sanity_" + Padded(out.size() + 1, 3), depth,
        true));
  }
  return out;
}

std::vector<GeneratedEntry> AttachmentCorpus(const Grammar &grammar,
                                             const GenerationConfig &config) {
  Sampler sampler(grammar, config.no_repeat);
  Rng rng(config.seed);
  std::vector<GeneratedEntry> out;
  for (const Quota &q : config.quotas) {
    std::vector<Derivation> all = sampler.Enumerate(q.start, {});
    if (static_cast<int>(all.size()) < q.count) {
      throw GenerationError("template " + q.start + " yields " +
                            std::to_string(all.size()) + " sentences, " +
                            std::to_string(q.count) + " requested");
    }
    std::vector<size_t> order(all.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.Shuffle(order);
    order.resize(q.count);
    std::sort(order.begin(), order.end());
    for (size_t i : order) {
      if (all[i].marked.size() != 1) {
        throw GenerationError("template " + q.start +
                              " must mark exactly one target edge");
      }
      GeneratedEntry e =
          MakeEntry(all[i],
                    config.category_id + "_" + Padded(out.size() + 1, 3), 1,
                    false);
      e.entry.metadata.emplace_back("template", q.start);
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::vector<CategoryInstance> BuildAnnotations(
    const GenerationConfig &config,
    const std::vector<GeneratedEntry> &entries) {
  std::vector<CategoryInstance> out;
  for (const GeneratedEntry &e : entries) {
    if (!e.entry.graph) {
      throw GenerationError("entry " + e.entry.id + " has no graph");
    }
    const AmrGraph &gold = *e.entry.graph;
    CategoryInstance inst{e.entry.id, config.category_id, {}};
    if (e.sanity || config.kind == CorpusKind::kExactMatch) {
      inst.checks.push_back(GraphSpec(
          MetricKind::kExactMatch, gold,
          e.sanity ? MetricRole::kSanityCheck : MetricRole::kMain));
    } else if (config.kind == CorpusKind::kList) {
      std::vector<AmrGraph> conjuncts = GoldConjuncts(gold);
      for (const AmrGraph &c : conjuncts) {
        MetricSpec spec =
            GraphSpec(MetricKind::kConjunctRecall, c, MetricRole::kMain);
        spec.sense_sensitive = false;
        inst.checks.push_back(std::move(spec));
      }
      for (size_t i = 20; i <= conjuncts.size(); ++i) {
        MetricSpec spec = GraphSpec(MetricKind::kUnseenOpiRecall,
                                    conjuncts[i - 1], MetricRole::kMain);
        spec.index = i;
        spec.sense_sensitive = false;
        inst.checks.push_back(std::move(spec));
      }
      MetricSpec precision;
      precision.kind = MetricKind::kConjunctPrecision;
      precision.sense_sensitive = false;
      precision.fragments = conjuncts;
      inst.checks.push_back(std::move(precision));
    } else {
      if (e.marked.size() != 1) {
        throw GenerationError("entry " + e.entry.id +
                              " needs exactly one target edge");
      }
      const Relation &r = e.marked[0];
      const std::string &source = gold.ConceptOf(r.source).full;
      const std::string &target = gold.ConceptOf(r.target).full;
      inst.checks.push_back(EdgeSpec(source, r.role, target, MetricRole::kMain,
                                     false, Reifications(r.role)));
      inst.checks.push_back(
          NodeSpec({source, target}, MetricRole::kPrerequisite, false));
    }
    out.push_back(std::move(inst));
  }
  return out;
}

GeneratedCorpus GenerateCategory(const GenerationConfig &config,
                                 const std::string &data_dir) {
  Grammar grammar = LoadGrammar(data_dir + "/" + config.grammar);
  GeneratedCorpus corpus;
  corpus.category_id = config.category_id;
  if (config.kind == CorpusKind::kAttachment) {
    corpus.entries = AttachmentCorpus(grammar, config);
  } else {
    corpus.entries = Sample(grammar, config);
  }
  if (config.sanity && !config.sanity_start.empty()) {
    std::vector<GeneratedEntry> sanity = SanitySplit(grammar, config);
    corpus.entries.insert(corpus.entries.end(), sanity.begin(), sanity.end());
  }
  corpus.annotations = BuildAnnotations(config, corpus.entries);
  return corpus;
}

GeneratedCorpus GenerateCategory(const GenerationSuite &suite,
                                 const std::string &category_id,
                                 const std::string &data_dir) {
  const GenerationConfig *config = suite.Find(category_id);
  if (!config) {
    throw GenerationError("unknown generated category '" + category_id + "'");
  }
  return GenerateCategory(*config, data_dir);
}

}  // namespace amrprobe

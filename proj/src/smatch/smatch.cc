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


#include "amrprobe/smatch/smatch.h"

#include <algorithm>
#include <map>
#include <set>

#include "amrprobe/util/random.h"

namespace amrprobe {

int TripleSet::size() const {
  int n = instances.size() + relations.size();
  for (const auto &a : attributes) n += a.size();
  return n + (root >= 0 ? 1 : 0);
}

TripleSet ExtractTriples(const AmrGraph &g) {
  TripleSet t;
  if (g.empty()) return t;
  for (const Instance &inst : g.instances()) {
    t.instances.push_back(inst.label.full);
  }
  std::vector<std::set<std::string>> attrs(g.size());
  for (const Attribute &a : g.attributes()) {
    attrs[g.IndexOf(a.source)].insert(a.role + "=" + a.value.ToPenman());
  }
  for (auto &s : attrs) t.attributes.emplace_back(s.begin(), s.end());
  std::set<std::tuple<int, std::string, int>> rels;
  for (const Relation &r : g.relations()) {
    rels.insert({g.IndexOf(r.source), r.role, g.IndexOf(r.target)});
  }
  t.relations.assign(rels.begin(), rels.end());
  t.root = g.IndexOf(g.root());
  return t;
}

SmatchScore SmatchScore::FromCounts(int matched, int gold_total,
                                    int predicted_total) {
  SmatchScore s;
  s.matched = matched;
  s.gold_total = gold_total;
  s.predicted_total = predicted_total;
  s.precision = predicted_total > 0 ? double(matched) / predicted_total : 0;
  s.recall = gold_total > 0 ? double(matched) / gold_total : 0;
  double sum = s.precision + s.recall;
  s.f1 = sum > 0 ? 2 * s.precision * s.recall / sum : 0;
  return s;
}

namespace {

// Scoring tables for one (predicted, gold) pair.
class Problem {
 public:
  Problem(const TripleSet &pred, const TripleSet &gold)
      : np_(pred.instances.size()), ng_(gold.instances.size()) {
    unary_.assign(np_ * ng_, 0);
    for (int p = 0; p < np_; ++p) {
      for (int g = 0; g < ng_; ++g) {
        int score = pred.instances[p] == gold.instances[g] ? 1 : 0;
        const auto &pa = pred.attributes[p];
        const auto &ga = gold.attributes[g];
        std::vector<std::string> common;
        std::set_intersection(pa.begin(), pa.end(), ga.begin(), ga.end(),
                              std::back_inserter(common));
        score += common.size();
        // TOP triple: the root marker carries the root concept.
        if (p == pred.root && g == gold.root &&
            pred.instances[p] == gold.instances[g]) {
          ++score;
        }
        unary_[p * ng_ + g] = score;
      }
    }
    std::map<std::string, int> role_ids;
    for (const auto &[s, role, t] : gold.relations) {
      int id = role_ids.emplace(role, role_ids.size()).first->second;
      gold_rels_.insert({s, id, t});
    }
    incident_.resize(np_);
    for (const auto &[s, role, t] : pred.relations) {
      auto it = role_ids.find(role);
      int id = it == role_ids.end() ? -1 : it->second;
      int index = pred_rels_.size();
      pred_rels_.push_back({s, id, t});
      incident_[s].push_back(index);
      if (t != s) incident_[t].push_back(index);
    }
  }

  int np() const { return np_; }
  int ng() const { return ng_; }

  int Unary(int p, int g) const { return g < 0 ? 0 : unary_[p * ng_ + g]; }

  int RelationScore(int index, const std::vector<int> &map) const {
    const auto &[s, role, t] = pred_rels_[index];
    if (role < 0 || map[s] < 0 || map[t] < 0) return 0;
    return gold_rels_.count({map[s], role, map[t]}) ? 1 : 0;
  }

  int Score(const std::vector<int> &map) const {
    int total = 0;
    for (int p = 0; p < np_; ++p) total += Unary(p, map[p]);
    for (size_t i = 0; i < pred_rels_.size(); ++i) {
      total += RelationScore(i, map);
    }
    return total;
  }

  // Score change from reassigning the variables in `vars` to `targets`.
  int Delta(std::vector<int> &map, const int *vars, const int *targets,
            int count) const {
    std::vector<int> touched;
    for (int k = 0; k < count; ++k) {
      for (int r : incident_[vars[k]]) touched.push_back(r);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    int before = 0, after = 0;
    int saved[2];
    for (int k = 0; k < count; ++k) {
      saved[k] = map[vars[k]];
      before += Unary(vars[k], saved[k]);
    }
    for (int r : touched) before += RelationScore(r, map);
    for (int k = 0; k < count; ++k) map[vars[k]] = targets[k];
    for (int k = 0; k < count; ++k) after += Unary(vars[k], targets[k]);
    for (int r : touched) after += RelationScore(r, map);
    for (int k = 0; k < count; ++k) map[vars[k]] = saved[k];
    return after - before;
  }

  const std::vector<std::tuple<int, int, int>> &pred_rels() const {
    return pred_rels_;
  }

 private:
  int np_, ng_;
  std::vector<int> unary_;
  std::set<std::tuple<int, int, int>> gold_rels_;
  std::vector<std::tuple<int, int, int>> pred_rels_;
  std::vector<std::vector<int>> incident_;
};

// Steepest-ascent hill climbing over single moves and swaps.
int Climb(const Problem &problem, std::vector<int> &map) {
  int np = problem.np(), ng = problem.ng();
  std::vector<bool> used(ng, false);
  for (int g : map) {
    if (g >= 0) used[g] = true;
  }
  int score = problem.Score(map);
  while (true) {
    int best = 0;
    int best_vars[2], best_targets[2], best_count = 0;
    for (int p = 0; p < np; ++p) {
      for (int g = -1; g < ng; ++g) {
        if (g == map[p] || (g >= 0 && used[g])) continue;
        int d = problem.Delta(map, &p, &g, 1);
        if (d > best) {
          best = d;
          best_vars[0] = p;
          best_targets[0] = g;
          best_count = 1;
        }
      }
    }
    for (int p = 0; p < np; ++p) {
      for (int q = p + 1; q < np; ++q) {
        if (map[p] == map[q]) continue;
        int vars[2] = {p, q};
        int targets[2] = {map[q], map[p]};
        int d = problem.Delta(map, vars, targets, 2);
        if (d > best) {
          best = d;
          best_vars[0] = p;
          best_vars[1] = q;
          best_targets[0] = targets[0];
          best_targets[1] = targets[1];
          best_count = 2;
        }
      }
    }
    if (best <= 0) return score;
    for (int k = 0; k < best_count; ++k) {
      if (map[best_vars[k]] >= 0) used[map[best_vars[k]]] = false;
    }
    for (int k = 0; k < best_count; ++k) {
      map[best_vars[k]] = best_targets[k];
    }
    for (int k = 0; k < best_count; ++k) {
      if (best_targets[k] >= 0) used[best_targets[k]] = true;
    }
    score += best;
  }
}

std::vector<int> ConceptSeededStart(const TripleSet &pred,
                                    const TripleSet &gold) {
  std::vector<int> map(pred.instances.size(), -1);
  std::vector<bool> used(gold.instances.size(), false);
  for (size_t p = 0; p < map.size(); ++p) {
    for (size_t g = 0; g < used.size(); ++g) {
      if (!used[g] && pred.instances[p] == gold.instances[g]) {
        map[p] = g;
        used[g] = true;
        break;
      }
    }
  }
  return map;
}

std::vector<int> RandomStart(int np, int ng, Rng &rng) {
  std::vector<int> golds(ng);
  for (int g = 0; g < ng; ++g) golds[g] = g;
  rng.Shuffle(golds);
  std::vector<int> map(np, -1);
  for (int p = 0; p < np && p < ng; ++p) map[p] = golds[p];
  rng.Shuffle(map);
  return map;
}

struct Prepared {
  TripleSet pred, gold;
};

Prepared Prepare(const AmrGraph &predicted, const AmrGraph &gold) {
  Prepared out;
  if (!predicted.empty()) out.pred = ExtractTriples(Normalize(predicted));
  if (!gold.empty()) out.gold = ExtractTriples(Normalize(gold));
  return out;
}

}  // namespace

SmatchAlignment AlignSmatch(const AmrGraph &predicted, const AmrGraph &gold,
                            const SmatchOptions &options) {
  if (options.restarts < 1) throw SmatchError("restarts must be at least 1");
  Prepared prep = Prepare(predicted, gold);
  Problem problem(prep.pred, prep.gold);
  Rng rng(options.seed);
  SmatchAlignment result;
  int best = -1;
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<int> map =
        r == 0 ? ConceptSeededStart(prep.pred, prep.gold)
               : RandomStart(problem.np(), problem.ng(), rng);
    int score = Climb(problem, map);
    if (score > best) {
      best = score;
      result.mapping = map;
    }
  }
  result.score = SmatchScore::FromCounts(best, prep.gold.size(),
                                         prep.pred.size());
  return result;
}

SmatchScore ComputeSmatch(const AmrGraph &predicted, const AmrGraph &gold,
                          const SmatchOptions &options) {
  return AlignSmatch(predicted, gold, options).score;
}

namespace {

class OracleSearch {
 public:
  explicit OracleSearch(const Problem &problem)
      : problem_(problem),
        map_(problem.np(), -1),
        used_(problem.ng(), false),
        spare_(std::max(0, problem.np() - problem.ng())) {
    int np = problem.np();
    best_unary_.assign(np + 1, 0);
    for (int p = np - 1; p >= 0; --p) {
      int m = 0;
      for (int g = 0; g < problem.ng(); ++g) {
        m = std::max(m, problem.Unary(p, g));
      }
      best_unary_[p] = best_unary_[p + 1] + m;
    }
    // Relations are scored when their later endpoint is assigned.
    closing_.resize(np);
    const auto &rels = problem.pred_rels();
    for (size_t i = 0; i < rels.size(); ++i) {
      int last = std::max(std::get<0>(rels[i]), std::get<2>(rels[i]));
      closing_[last].push_back(i);
    }
    open_after_.assign(np + 1, 0);
    for (int p = np - 1; p >= 0; --p) {
      open_after_[p] = open_after_[p + 1] + closing_[p].size();
    }
  }

  void Run() { Visit(0, 0); }

  int best() const { return best_; }
  const std::vector<int> &best_map() const { return best_map_; }

 private:
  void Visit(int p, int score) {
    if (score + best_unary_[p] + open_after_[p] <= best_) return;
    if (p == problem_.np()) {
      best_ = score;
      best_map_ = map_;
      return;
    }
    for (int g = 0; g < problem_.ng(); ++g) {
      if (used_[g]) continue;
      Assign(p, g, score);
    }
    if (spare_ > 0) {
      --spare_;
      Assign(p, -1, score);
      ++spare_;
    }
  }

  void Assign(int p, int g, int score) {
    map_[p] = g;
    if (g >= 0) used_[g] = true;
    score += problem_.Unary(p, g);
    for (int r : closing_[p]) score += problem_.RelationScore(r, map_);
    Visit(p + 1, score);
    if (g >= 0) used_[g] = false;
    map_[p] = -1;
  }

  const Problem &problem_;
  std::vector<int> map_;
  std::vector<bool> used_;
  int spare_;
  std::vector<int> best_unary_;
  std::vector<std::vector<int>> closing_;
  std::vector<int> open_after_;
  int best_ = -1;
  std::vector<int> best_map_;
};

}  // namespace

SmatchAlignment SmatchOracle(const AmrGraph &predicted, const AmrGraph &gold) {
  if (predicted.size() > kOracleMaxVariables ||
      gold.size() > kOracleMaxVariables) {
    throw SmatchError("oracle size limit exceeded");
  }
  Prepared prep = Prepare(predicted, gold);
  Problem problem(prep.pred, prep.gold);
  OracleSearch search(problem);
  search.Run();
  SmatchAlignment result;
  result.mapping = search.best_map();
  result.score = SmatchScore::FromCounts(search.best(), prep.gold.size(),
                                         prep.pred.size());
  return result;
}

SmatchScore CorpusSmatch(
    const std::vector<std::pair<const AmrGraph *, const AmrGraph *>> &pairs,
    const SmatchOptions &options) {
  int matched = 0, gold_total = 0, predicted_total = 0;
  for (const auto &[pred, gold] : pairs) {
    SmatchScore s = ComputeSmatch(*pred, *gold, options);
    matched += s.matched;
    gold_total += s.gold_total;
    predicted_total += s.predicted_total;
  }
  return SmatchScore::FromCounts(matched, gold_total, predicted_total);
}

}  // namespace amrprobe

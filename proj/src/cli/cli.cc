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


#include "amrprobe/cli/cli.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "amrprobe/amr/corpus.h"
#include "amrprobe/amr/penman.h"
#include "amrprobe/corpus/extraction.h"
#include "amrprobe/corpus/frequency_index.h"
#include "amrprobe/generation/suite.h"
#include "amrprobe/metrics/annotation_io.h"
#include "amrprobe/metrics/evaluator.h"
#include "amrprobe/smatch/smatch.h"
#include "amrprobe/stats/dot.h"
#include "amrprobe/stats/report.h"
#include "json.hpp"

namespace amrprobe {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string Join(const std::vector<std::string> &items,
                 const std::string &sep) {
  std::string out;
  for (const std::string &s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

std::string UtcNow() {
  std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// Flags every subcommand understands.
struct Common {
  uint64_t seed = 0;
  std::string out = "out";
  std::string format = "tsv";
  std::vector<std::string> categories;
  std::string data_dir;
};

// State of one command run.
class Run {
 public:
  Run(const Common &common, std::ostream &out, std::ostream &err)
      : common_(common), out_(out), err_(err) {}

  std::ostream &out() { return out_; }
  RunManifest &manifest() { return manifest_; }
  int warnings() const { return warnings_; }

  void Warn(const std::string &message) {
    err_ << "warning: " << message << "\n";
    ++warnings_;
  }

  std::string Input(const std::string &path) {
    manifest_.inputs.push_back(path);
    return ReadFile(path);
  }

  std::vector<CorpusEntry> Corpus(const std::string &path,
                                  const ReadCorpusOptions &options = {}) {
    return ReadCorpus(Input(path), options);
  }

  void Output(const std::string &name, const std::string &contents) {
    fs::create_directories(common_.out);
    WriteFileAtomic((fs::path(common_.out) / name).string(), contents);
  }

  int Finish() {
    manifest_.timestamp = UtcNow();
    Output("manifest.json", manifest_.ToJson());
    return warnings_ > 0 ? kExitPartial : kExitOk;
  }

 private:
  const Common &common_;
  std::ostream &out_;
  std::ostream &err_;
  RunManifest manifest_;
  int warnings_ = 0;
};

TableFormat Format(const Common &common) {
  std::optional<TableFormat> f = ParseTableFormat(common.format);
  if (!f) throw CliError("unknown format " + common.format);
  return *f;
}

std::string Extension(TableFormat format) {
  switch (format) {
    case TableFormat::kTsv:
      return ".tsv";
    case TableFormat::kMarkdown:
      return ".md";
    case TableFormat::kLatex:
      return ".tex";
  }
  return "";
}

std::string DataDir(const Common &common) {
  return common.data_dir.empty() ? DefaultDataDir() : common.data_dir;
}

// Pairs predictions with gold entries by ::id, or by position.
std::map<std::string, AmrGraph> MatchPredictions(
    const std::vector<CorpusEntry> &gold,
    const std::vector<CorpusEntry> &predicted, bool positional, Run &run) {
  std::set<std::string> gold_ids;
  for (const CorpusEntry &e : gold) gold_ids.insert(e.id);
  if (positional && predicted.size() != gold.size()) {
    run.Warn("positional matching: " + std::to_string(predicted.size()) +
             " predictions for " + std::to_string(gold.size()) +
             " gold entries");
  }
  std::map<std::string, AmrGraph> out;
  for (size_t i = 0; i < predicted.size(); ++i) {
    const CorpusEntry &p = predicted[i];
    std::string id = p.id;
    if (positional) {
      if (i >= gold.size()) break;
      id = gold[i].id;
    } else if (!gold_ids.count(id)) {
      run.Warn("prediction " + id + " matches no gold entry");
      continue;
    }
    if (!p.parse_error.empty()) {
      run.Warn("prediction for " + id + " does not parse: " + p.parse_error);
      continue;
    }
    if (!p.graph) {
      run.Warn("prediction for " + id + " has no graph");
      continue;
    }
    if (!out.emplace(id, *p.graph).second) {
      run.Warn("duplicate prediction for " + id);
    }
  }
  return out;
}

std::vector<CorpusEntry> ReadPredictions(Run &run, const std::string &path,
                                         bool positional) {
  ReadCorpusOptions options;
  options.lenient = true;
  options.require_id = !positional;
  return run.Corpus(path, options);
}

struct EvaluateFlags {
  std::string gold, annotations, predictions, name = "parser";
  bool positional = false;
};

int Evaluate(const Common &common, const EvaluateFlags &flags, Run &run) {
  std::vector<CorpusEntry> gold = run.Corpus(flags.gold);
  std::vector<CategoryInstance> all =
      ReadAnnotations(run.Input(flags.annotations));
  std::set<std::string> ids;
  for (const CorpusEntry &e : gold) ids.insert(e.id);
  std::set<std::string> wanted(common.categories.begin(),
                               common.categories.end());
  std::set<std::string> present;
  std::vector<CategoryInstance> instances;
  for (const CategoryInstance &i : all) {
    if (!ids.count(i.entry_id)) {
      throw CliError("annotation references unknown entry " + i.entry_id);
    }
    present.insert(i.category_id);
    if (wanted.empty() || wanted.count(i.category_id)) instances.push_back(i);
  }
  for (const std::string &c : wanted) {
    if (!present.count(c)) run.Warn("no annotations for category " + c);
  }
  std::map<std::string, AmrGraph> predictions = MatchPredictions(
      gold, ReadPredictions(run, flags.predictions, flags.positional),
      flags.positional, run);
  std::vector<std::string> warnings;
  std::vector<EvaluationResult> results =
      EvaluateCategory(instances, predictions, &warnings);
  for (const std::string &w : warnings) run.Warn(w);

  TableFormat format = Format(common);
  std::string table =
      RenderTables({{flags.name, results}}, format, TableStyle::kFull);
  run.Output("results.tsv", WriteResults(results));
  run.Output("table" + Extension(format), table);
  run.out() << table;
  return run.Finish();
}

struct GenerateFlags {
  std::vector<std::string> categories;
  std::string config;
  bool seeded = false;
};

int Generate(const Common &common, const GenerateFlags &flags, Run &run) {
  std::string data_dir = DataDir(common);
  std::string config =
      flags.config.empty() ? data_dir + "/generation.json" : flags.config;
  GenerationSuite suite = ParseGenerationSuite(run.Input(config));
  std::vector<std::string> known;
  for (const GenerationConfig &c : suite.categories) {
    known.push_back(c.category_id);
  }
  std::vector<std::string> ids = flags.categories;
  ids.insert(ids.end(), common.categories.begin(), common.categories.end());
  if (std::find(ids.begin(), ids.end(), "all") != ids.end()) ids = known;
  if (ids.empty()) {
    throw CliError("no category given; known: " + Join(known, ", "));
  }
  for (const std::string &id : ids) {
    if (!suite.Find(id)) {
      throw CliError("unknown category " + id + "; known: " +
                     Join(known, ", "));
    }
  }
  run.manifest().seed = flags.seeded ? common.seed : suite.seed;
  for (const std::string &id : ids) {
    GenerationConfig c = *suite.Find(id);
    if (flags.seeded) c.seed = CategorySeed(common.seed, id);
    GeneratedCorpus corpus = GenerateCategory(c, data_dir);
    std::vector<CorpusEntry> entries;
    int sanity = 0;
    for (const GeneratedEntry &e : corpus.entries) {
      entries.push_back(e.entry);
      sanity += e.sanity;
    }
    size_t checks = 0;
    for (const CategoryInstance &i : corpus.annotations) {
      checks += i.checks.size();
    }
    run.Output(id + ".amr", WriteCorpus(entries));
    run.Output(id + ".annotations.tsv", WriteAnnotations(corpus.annotations));
    run.out() << id << "\t" << entries.size() - sanity << " entries\t"
              << sanity << " sanity\t" << checks << " checks\n";
  }
  return run.Finish();
}

struct ExtractFlags {
  std::string test, train, index, frames, types, alignments;
  std::string align_mode = "multinode";
  bool subgraph_reentrancy = false;
  bool save_index = false;
  size_t sample = 0;
  std::optional<double> error_rate;
};

int Extract(const Common &common, const ExtractFlags &flags, Run &run) {
  std::vector<CorpusEntry> test = run.Corpus(flags.test);
  std::vector<std::string> categories = common.categories;
  if (categories.empty() && flags.alignments.empty()) {
    categories = ExtractionIds();
  }
  std::optional<FrequencyIndex> index;
  if (!flags.train.empty()) {
    index = BuildIndex(run.Corpus(flags.train));
  } else if (!flags.index.empty()) {
    index = LoadIndex(run.Input(flags.index));
  }
  if (!categories.empty() && !index) {
    throw CliError("extract needs --train or --index");
  }
  ExtractOptions options;
  options.reentrancy_per_edge = !flags.subgraph_reentrancy;
  if (!flags.frames.empty()) options.frames = ParseFrames(run.Input(flags.frames));
  if (!flags.types.empty()) {
    options.other_entity_types = ParseTypeList(run.Input(flags.types));
  }

  std::vector<std::string> warnings;
  std::vector<CandidateRecord> candidates;
  for (const std::string &c : categories) {
    std::vector<CandidateRecord> found =
        ExtractCategory(test, *index, c, options, &warnings);
    run.out() << c << "\t" << found.size() << "\n";
    candidates.insert(candidates.end(), found.begin(), found.end());
  }
  if (!flags.alignments.empty()) {
    AlignMode mode;
    if (flags.align_mode == "ellipsis") {
      mode = AlignMode::kEllipsis;
    } else if (flags.align_mode == "multinode") {
      mode = AlignMode::kMultinode;
    } else {
      throw CliError("unknown alignment mode " + flags.align_mode);
    }
    std::vector<CandidateRecord> found = ExtractAligned(
        test, ParseAlignments(run.Input(flags.alignments)), mode, &warnings);
    run.out() << flags.align_mode << "\t" << found.size() << "\n";
    candidates.insert(candidates.end(), found.begin(), found.end());
  }
  for (const std::string &w : warnings) run.Warn(w);

  run.Output("candidates.tsv", WriteReviewSheet(candidates, test));
  if (flags.save_index && index) run.Output("index.txt", SaveIndex(*index));
  if (flags.sample > 0) {
    std::vector<CandidateRecord> sample;
    for (size_t i : SampleForReview(candidates, flags.sample, common.seed)) {
      sample.push_back(candidates[i]);
    }
    run.Output("review_sample.tsv", WriteReviewSheet(sample, test));
  }
  if (flags.error_rate) {
    run.out() << "advice\t"
              << AdviceName(ReviewSummary(candidates, flags.sample,
                                          *flags.error_rate))
              << "\n";
  }
  return run.Finish();
}

struct ReportFlags {
  std::vector<std::string> results;  // NAME=PATH or PATH
  bool compact = false;
};

int Report(const Common &common, const ReportFlags &flags, Run &run) {
  std::set<std::string> wanted(common.categories.begin(),
                               common.categories.end());
  std::vector<ParserResults> parsers;
  for (const std::string &spec : flags.results) {
    size_t eq = spec.find('=');
    std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
    ParserResults p;
    p.parser = eq == std::string::npos ? fs::path(path).stem().string()
                                       : spec.substr(0, eq);
    for (EvaluationResult &r : ReadResults(run.Input(path))) {
      if (wanted.empty() || wanted.count(r.category_id)) {
        p.results.push_back(std::move(r));
      }
    }
    parsers.push_back(std::move(p));
  }
  TableFormat format = Format(common);
  std::string table = RenderTables(
      parsers, format, flags.compact ? TableStyle::kCompact : TableStyle::kFull);
  run.Output("report" + Extension(format), table);
  run.out() << table;
  return run.Finish();
}

struct PairFlags {
  std::string gold, predicted;
  std::vector<std::string> ids;
  bool positional = false;
  int restarts = 5;
};

std::string FileName(const std::string &id) {
  std::string out = id;
  for (char &c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') {
      c = '_';
    }
  }
  return out;
}

int Visualize(const Common &common, const PairFlags &flags, Run &run) {
  std::vector<CorpusEntry> gold = run.Corpus(flags.gold);
  std::map<std::string, AmrGraph> predictions = MatchPredictions(
      gold, ReadPredictions(run, flags.predicted, flags.positional),
      flags.positional, run);
  std::set<std::string> wanted(flags.ids.begin(), flags.ids.end());
  SmatchOptions options{flags.restarts, common.seed};
  for (const CorpusEntry &e : gold) {
    if (!wanted.empty() && !wanted.count(e.id)) continue;
    auto it = predictions.find(e.id);
    if (it == predictions.end() || !e.graph) {
      run.Warn("nothing to draw for " + e.id);
      continue;
    }
    GraphDiff diff = DiffGraphs(*e.graph, it->second, options);
    run.Output(FileName(e.id) + ".dot", ToDot(*e.graph, it->second, options));
    run.out() << e.id << "\t" << diff.unmatched_gold() << " missing\t"
              << diff.unmatched_predicted() << " extra\n";
  }
  return run.Finish();
}

int Smatch(const Common &common, const PairFlags &flags, Run &run) {
  std::vector<CorpusEntry> gold = run.Corpus(flags.gold);
  std::map<std::string, AmrGraph> predictions = MatchPredictions(
      gold, ReadPredictions(run, flags.predicted, flags.positional),
      flags.positional, run);
  SmatchOptions options{flags.restarts, common.seed};
  static const AmrGraph kEmpty;
  std::ostringstream rows;
  rows << std::fixed << std::setprecision(4)
       << "id\tprecision\trecall\tf1\tmatched\tgold\tpredicted\n";
  std::vector<std::pair<const AmrGraph *, const AmrGraph *>> pairs;
  for (const CorpusEntry &e : gold) {
    if (!e.graph) continue;
    auto it = predictions.find(e.id);
    if (it == predictions.end()) run.Warn("no prediction for " + e.id);
    const AmrGraph *p = it == predictions.end() ? &kEmpty : &it->second;
    pairs.push_back({p, &*e.graph});
    SmatchScore s = ComputeSmatch(*p, *e.graph, options);
    rows << e.id << "\t" << s.precision << "\t" << s.recall << "\t" << s.f1
         << "\t" << s.matched << "\t" << s.gold_total << "\t"
         << s.predicted_total << "\n";
  }
  SmatchScore total = CorpusSmatch(pairs, options);
  rows << "all\t" << total.precision << "\t" << total.recall << "\t"
       << total.f1 << "\t" << total.matched << "\t" << total.gold_total
       << "\t" << total.predicted_total << "\n";
  run.Output("smatch.tsv", rows.str());
  run.out() << std::fixed << std::setprecision(4) << "precision "
            << total.precision << "\nrecall " << total.recall << "\nf1 "
            << total.f1 << "\n";
  return run.Finish();
}

void AddCommon(CLI::App *app, Common &common, bool format, bool categories) {
  app->add_option("--seed", common.seed, "Seed for all randomness");
  app->add_option("--out", common.out, "Output directory")
      ->capture_default_str();
  if (format) {
    app->add_option("--format", common.format, "tsv, markdown or latex")
        ->check(CLI::IsMember({"tsv", "markdown", "latex"}))
        ->capture_default_str();
  }
  if (categories) {
    app->add_option("--categories", common.categories,
                    "Comma-separated category ids")
        ->delimiter(',');
  }
  app->add_option("--data-dir", common.data_dir,
                  "Grammar and config directory");
}

std::map<std::string, std::string> Overrides(const CLI::App *app) {
  std::map<std::string, std::string> out;
  for (const CLI::Option *o : app->get_options()) {
    if (o->count() == 0 || o->get_name() == "--help") continue;
    std::string name = o->get_name();
    if (name.empty()) continue;
    out[name] = o->get_type_size() == 0 ? "true" : Join(o->results(), ",");
  }
  return out;
}

}  // namespace

std::string RunManifest::ToJson() const {
  json j;
  j["command"] = command;
  j["args"] = args;
  j["inputs"] = inputs;
  j["seed"] = seed;
  j["overrides"] = overrides;
  j["version"] = version;
  j["timestamp"] = timestamp;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::FromJson(const std::string &text) {
  RunManifest m;
  try {
    json j = json::parse(text);
    m.command = j.at("command").get<std::string>();
    m.args = j.at("args").get<std::vector<std::string>>();
    m.inputs = j.value("inputs", std::vector<std::string>{});
    m.seed = j.value("seed", uint64_t{0});
    m.overrides =
        j.value("overrides", std::map<std::string, std::string>{});
    m.version = j.value("version", "");
    m.timestamp = j.value("timestamp", "");
  } catch (const json::exception &e) {
    throw std::runtime_error(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err) {
  CLI::App app{"Fine-grained AMR parser evaluation toolkit", "amrprobe"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Common common;

  EvaluateFlags ev;
  CLI::App *evaluate =
      app.add_subcommand("evaluate", "Score predictions on annotated entries");
  evaluate->add_option("--gold", ev.gold, "Gold corpus")->required();
  evaluate->add_option("--annotations", ev.annotations, "Annotation file")
      ->required();
  evaluate->add_option("--predictions", ev.predictions, "Predicted corpus")
      ->required();
  evaluate->add_option("--name", ev.name, "Parser name in tables");
  evaluate->add_flag("--positional", ev.positional,
                     "Match predictions to gold by position, not ::id");
  AddCommon(evaluate, common, true, true);

  GenerateFlags gen;
  CLI::App *generate =
      app.add_subcommand("generate", "Generate grammar-based corpora");
  generate->add_option("category", gen.categories, "Category ids, or all");
  generate->add_option("--config", gen.config, "Generation suite JSON");
  AddCommon(generate, common, false, true);

  ExtractFlags ex;
  CLI::App *extract =
      app.add_subcommand("extract", "Propose candidates from a test corpus");
  extract->add_option("--test", ex.test, "Test corpus")->required();
  extract->add_option("--train", ex.train, "Training corpus");
  extract->add_option("--index", ex.index, "Frequency index snapshot");
  extract->add_option("--frames", ex.frames, "predicate<TAB>0|1 list");
  extract->add_option("--types", ex.types, "Other-entity concept list");
  extract->add_option("--alignments", ex.alignments, "Span alignments");
  extract->add_option("--align-mode", ex.align_mode, "ellipsis or multinode")
      ->capture_default_str();
  extract->add_flag("--subgraph-reentrancy", ex.subgraph_reentrancy,
                    "One subgraph check per reentrancy");
  extract->add_flag("--save-index", ex.save_index,
                    "Also write the frequency index");
  extract->add_option("--sample", ex.sample, "Review sample size");
  extract->add_option("--error-rate", ex.error_rate,
                      "Error rate found in the review sample")
      ->check(CLI::Range(0.0, 1.0));
  AddCommon(extract, common, false, true);

  ReportFlags rep;
  CLI::App *report = app.add_subcommand("report", "Render results tables");
  report->add_option("results", rep.results, "Results files, NAME=PATH")
      ->required();
  report->add_flag("--compact", rep.compact, "One averaged row per set");
  AddCommon(report, common, true, true);

  PairFlags vis;
  CLI::App *visualize =
      app.add_subcommand("visualize", "Draw gold/predicted diffs as DOT");
  PairFlags sm;
  CLI::App *smatch = app.add_subcommand("smatch", "Smatch between corpora");
  for (auto [sub, flags] : {std::pair{visualize, &vis}, {smatch, &sm}}) {
    sub->add_option("--gold", flags->gold, "Gold corpus")->required();
    sub->add_option("--predicted", flags->predicted, "Predicted corpus")
        ->required();
    sub->add_option("--restarts", flags->restarts, "Hill-climbing starts")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_flag("--positional", flags->positional,
                  "Match predictions to gold by position, not ::id");
    AddCommon(sub, common, false, false);
  }
  visualize->add_option("--ids", vis.ids, "Entries to draw")->delimiter(',');

  std::string manifest_path, replay_out;
  CLI::App *replay =
      app.add_subcommand("replay", "Rerun the command recorded in a manifest");
  replay->add_option("manifest", manifest_path, "manifest.json")->required();
  replay->add_option("--out", replay_out, "Output directory override");

  std::vector<const char *> argv = {"amrprobe"};
  for (const std::string &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitFatal;
  }

  try {
    if (replay->parsed()) {
      RunManifest m = RunManifest::FromJson(ReadFile(manifest_path));
      std::vector<std::string> again = m.args;
      if (again.empty() || again[0] == "replay") {
        throw CliError("manifest does not record a command");
      }
      if (!replay_out.empty()) {
        std::vector<std::string> kept;
        for (size_t i = 0; i < again.size(); ++i) {
          if (again[i] == "--out") {
            ++i;
          } else if (again[i].rfind("--out=", 0) != 0) {
            kept.push_back(again[i]);
          }
        }
        kept.push_back("--out");
        kept.push_back(replay_out);
        again = kept;
      }
      return RunCli(again, out, err);
    }

    CLI::App *sub = app.get_subcommands().front();
    Run run(common, out, err);
    RunManifest &m = run.manifest();
    m.command = sub->get_name();
    m.args = args;
    m.seed = common.seed;
    m.overrides = Overrides(sub);
    if (sub == evaluate) return Evaluate(common, ev, run);
    if (sub == generate) {
      gen.seeded = sub->count("--seed") > 0;
      return Generate(common, gen, run);
    }
    if (sub == extract) return Extract(common, ex, run);
    if (sub == report) return Report(common, rep, run);
    if (sub == visualize) return Visualize(common, vis, run);
    return Smatch(common, sm, run);
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitFatal;
  }
}

}  // namespace amrprobe

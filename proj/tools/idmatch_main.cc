// Copyright 2026 The idmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// idmatch: cross-platform identity resolution pipeline.
//
//   idmatch synth  --seed N --out DIR [...]       generate a synthetic dataset
//   idmatch ingest --data DIR [...]               load, filter and extract
//   idmatch match  --data DIR --model M [...]     rank candidates, score metrics
//   idmatch sweep  --data DIR --windows w:tau,... metrics per window setting
//   idmatch report --metrics FILE [--format F]    re-render a metrics file
//
// Exit codes: 0 ok, 1 runtime or data error, 2 invalid configuration,
// 3 finished but skipped some items (see warnings on stderr).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "idmatch/corpus.h"
#include "idmatch/errors.h"
#include "idmatch/eval.h"
#include "idmatch/matchers.h"
#include "idmatch/synthgen.h"
#include "idmatch/textproc.h"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace idmatch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSkipped = 3;

int WorkerCount() {
  if (const char* env = std::getenv("IDMATCH_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
    throw ConfigError("IDMATCH_WORKERS must be a positive integer");
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void WriteFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
}

// Text-processing options shared by ingest, match and sweep.
struct ExtractOptions {
  std::string stopwords;
  std::string nouns;
  std::string lexicon;
  std::string scope = "sentence";
  int min_posts = 20;

  void Register(CLI::App* app) {
    app->add_option("--min-posts", min_posts,
                    "Discard pairs with fewer posts on either side")
        ->check(CLI::PositiveNumber);
    app->add_option("--stopwords", stopwords,
                    "Stopword/blocklist file (one word per line)")
        ->check(CLI::ExistingFile);
    app->add_option("--nouns", nouns, "Noun lexicon file (one word per line)")
        ->check(CLI::ExistingFile);
    app->add_option("--lexicon", lexicon, "Sentiment lexicon (word<TAB>valence)")
        ->check(CLI::ExistingFile);
    app->add_option("--sentiment-scope", scope,
                    "Words scored for a topic: whole sentence or nearby tokens")
        ->check(CLI::IsMember({"sentence", "nearby"}));
  }

  ExtractConfig Config() const {
    ExtractConfig c;
    if (!stopwords.empty()) c.stopwords = LoadWordList(stopwords);
    if (!nouns.empty()) c.noun_lexicon = LoadWordList(nouns);
    c.scope = scope == "nearby" ? SentimentScope::kNearby
                                : SentimentScope::kSentence;
    return c;
  }

  SentimentLexicon Lexicon() const {
    return lexicon.empty() ? SentimentLexicon::Default()
                           : SentimentLexicon::Load(lexicon);
  }
};

struct LoadedData {
  std::vector<ExtractedPair> pairs;
  FilterStats filter;
  TextStats text;
};

LoadedData LoadAndExtract(const std::string& data, const ExtractOptions& opts,
                          const ExtractConfig& extract,
                          const SentimentLexicon& lexicon) {
  LoadedData out;
  auto sets = FilterProfiles(LoadDataset(data), opts.min_posts, &out.filter);
  out.pairs = ExtractDataset(sets, extract, lexicon, &out.text);
  return out;
}

// Model options shared by match and sweep.
struct ModelOptions {
  std::string model = "topic-nt";
  int w = 365;
  int tau = 365;
  double w1 = 0.0;
  double w2 = 0.0;
  std::int64_t bonus_a = DistanceWeights{}.bonus_a;
  std::int64_t bonus_b = DistanceWeights{}.bonus_b;
  int shortlist = 10;
  double epsilon = kDefaultEpsilon;
  std::string rank_key = "similarity";
  std::string direction = "a2b";
  std::vector<int> top_k = {1, 3, 5, 10};
  CLI::Option* w1_opt = nullptr;
  CLI::Option* w2_opt = nullptr;

  void Register(CLI::App* app, bool with_window) {
    std::vector<std::string> names;
    for (auto m : {Model::kTopicNT, Model::kSentimentNT, Model::kCombined,
                   Model::kTopicTemporal, Model::kSentimentTemporal,
                   Model::kTwoPhase, Model::kDistance}) {
      names.push_back(ModelName(m));
    }
    app->add_option("--model", model, "Scoring model")
        ->check(CLI::IsMember(names));
    if (with_window) {
      app->add_option("--w", w, "Window size in days");
      app->add_option("--tau", tau, "Window shift in days");
    }
    w1_opt = app->add_option(
        "--w1", w1,
        "Topic weight (combined, default 0.5) or frequency weight "
        "(distance, default 0.75)");
    w2_opt = app->add_option(
        "--w2", w2,
        "Sentiment weight (combined, default 0.5) or emotion weight "
        "(distance, default 0.5)");
    app->add_option("--bonus-a", bonus_a,
                    "Distance model bonus threshold on platform A");
    app->add_option("--bonus-b", bonus_b,
                    "Distance model bonus threshold on platform B");
    app->add_option("--shortlist", shortlist, "Two-phase shortlist size");
    app->add_option("--epsilon", epsilon, "KL smoothing constant");
    app->add_option("--rank-key", rank_key,
                    "Temporal ranking key: mean similarity or symmetric KL")
        ->check(CLI::IsMember({"similarity", "symmetric_kl"}));
    app->add_option("--direction", direction,
                    "a2b: platform-A probes vs platform-B candidates")
        ->check(CLI::IsMember({"a2b", "b2a"}));
    app->add_option("--top-k", top_k, "Top-K cutoffs")->delimiter(',');
  }

  MatchParams Params() const {
    MatchParams p;
    p.model = *ParseModel(model);
    p.window = WindowSpec{w, tau};
    if (p.model == Model::kDistance) {
      if (w1_opt->count() > 0) p.distance.w1 = w1;
      if (w2_opt->count() > 0) p.distance.w2 = w2;
    } else {
      if (w1_opt->count() > 0) p.w1 = w1;
      if (w2_opt->count() > 0) p.w2 = w2;
    }
    p.distance.bonus_a = bonus_a;
    p.distance.bonus_b = bonus_b;
    p.shortlist = shortlist;
    p.epsilon = epsilon;
    p.key = rank_key == "symmetric_kl" ? RankingKey::kSymmetricKl
                                       : RankingKey::kSimilarity;
    p.Validate();
    return p;
  }

  std::set<int> Ks() const {
    std::set<int> ks(top_k.begin(), top_k.end());
    for (int k : ks) {
      if (k < 1) throw ConfigError("--top-k values must be >= 1");
    }
    return ks;
  }

  Direction Dir() const {
    return direction == "b2a" ? Direction::kBToA : Direction::kAToB;
  }
};

bool IsTemporal(Model m) {
  return m == Model::kTopicTemporal || m == Model::kSentimentTemporal ||
         m == Model::kTwoPhase;
}

// ---------------------------------------------------------------------------

struct SynthCommand {
  GenSpec spec;
  std::string out;
  bool no_diurnal = false;

  void Register(CLI::App* app) {
    app->add_option("--seed", spec.seed, "RNG seed (required)")->required();
    app->add_option("--out", out, "Output directory")->required();
    app->add_option("--pairs", spec.n_pairs, "Number of profile pairs");
    app->add_option("--posts-min", spec.posts_min, "Minimum posts per account");
    app->add_option("--posts-max", spec.posts_max, "Maximum posts per account");
    app->add_option("--vocab", spec.vocab, "Topic vocabulary size");
    app->add_option("--interests", spec.interests,
                    "Shared interest topics per pair");
    app->add_option("--overlap", spec.overlap,
                    "Probability a post draws from the shared interests");
    app->add_option("--sentiment-corr", spec.sentiment_corr,
                    "Probability platform B keeps the shared stance");
    app->add_option("--span-days", spec.span_days, "Timespan in days");
    app->add_flag("--no-diurnal", no_diurnal,
                  "Spread post times uniformly instead of daily active hours");
  }

  int Run() {
    spec.diurnal = !no_diurnal;
    spec.Validate();
    auto sets = Generate(spec);
    WriteDataset(out, sets, spec);
    std::cerr << "wrote " << sets.size() << " pairs to " << out << "\n";
    return kExitOk;
  }
};

struct IngestCommand {
  std::string data;
  std::string out;
  ExtractOptions extract;

  void Register(CLI::App* app) {
    app->add_option("--data", data, "Directory of pair files")->required();
    app->add_option("--out", out, "Write per-user topic counter cache (JSON)");
    extract.Register(app);
  }

  int Run() {
    auto config = extract.Config();
    auto lexicon = extract.Lexicon();
    auto loaded = LoadAndExtract(data, extract, config, lexicon);

    nlohmann::ordered_json summary;
    summary["kept"] = loaded.filter.kept;
    summary["discarded"] = loaded.filter.discarded;
    summary["empty_posts_dropped"] = loaded.filter.empty_posts_dropped;
    summary["invalid_bytes_skipped"] = loaded.text.invalid_bytes;
    std::size_t observations = 0;
    for (const auto& p : loaded.pairs) {
      observations += p.a.observations.size() + p.b.observations.size();
    }
    summary["topic_observations"] = observations;
    std::cout << summary.dump(2) << "\n";

    if (!out.empty()) {
      nlohmann::ordered_json cache;
      auto counter_json = [](const UserProfile& u) {
        nlohmann::ordered_json j;
        j["total"] = u.counter.total();
        nlohmann::ordered_json topics = nlohmann::ordered_json::object();
        for (const auto& [t, n] : u.counter.counts()) topics[t] = n;
        j["topics"] = std::move(topics);
        return j;
      };
      for (const auto& p : loaded.pairs) {
        cache[p.pair_id] = {{"a", counter_json(p.a)}, {"b", counter_json(p.b)}};
      }
      WriteFile(out, cache.dump(1) + "\n");
    }
    return kExitOk;
  }
};

struct MatchCommand {
  std::string data;
  std::string out;
  std::string format = "human";
  ModelOptions model;
  ExtractOptions extract;

  void Register(CLI::App* app) {
    app->add_option("--data", data, "Directory of pair files")->required();
    app->add_option("--out", out,
                    "Directory for ranks.csv and metrics.json");
    app->add_option("--format", format, "Report printed to stdout")
        ->check(CLI::IsMember({"human", "csv", "json"}));
    model.Register(app, /*with_window=*/true);
    extract.Register(app);
  }

  int Run() {
    EvalConfig config;
    config.params = model.Params();
    auto ks = model.Ks();
    config.direction = model.Dir();
    config.extract = extract.Config();
    config.lexicon = extract.Lexicon();
    config.workers = WorkerCount();

    auto loaded = LoadAndExtract(data, extract, config.extract, config.lexicon);
    if (loaded.pairs.size() < 2) {
      throw HarnessError("need at least 2 pairs after filtering, have " +
                         std::to_string(loaded.pairs.size()));
    }
    auto results = EvaluateDataset(loaded.pairs, config);
    auto report = ComputeMetrics(results, ks);
    report.model = model.model;
    if (IsTemporal(config.params.model)) report.window = config.params.window;

    if (!out.empty()) {
      std::ostringstream csv;
      EmitReport(report, results, ReportFormat::kCsv, csv);
      WriteFile(fs::path(out) / "ranks.csv", csv.str());
      WriteFile(fs::path(out) / "metrics.json", MetricsToJson(report));
    }
    EmitReport(report, results, *ParseReportFormat(format), std::cout);
    return kExitOk;
  }
};

std::vector<WindowSpec> DefaultSweepGrid() {
  return {{365, 365}, {365, 180}, {365, 90},  {180, 90},
          {730, 365}, {730, 180}, {1460, 730}};
}

struct SweepCommand {
  std::string data;
  std::string out;
  std::vector<std::string> windows;
  ModelOptions model;
  ExtractOptions extract;

  void Register(CLI::App* app) {
    app->add_option("--data", data, "Directory of pair files")->required();
    app->add_option("--out", out, "Sweep CSV path (stdout if omitted)");
    app->add_option("--windows", windows,
                    "Comma-separated w:tau list (default: 365:365,365:180,"
                    "365:90,180:90,730:365,730:180,1460:730)")
        ->delimiter(',');
    model.model = "topic-temporal";
    model.Register(app, /*with_window=*/false);
    extract.Register(app);
  }

  std::vector<WindowSpec> Grid() const {
    if (windows.empty()) return DefaultSweepGrid();
    std::vector<WindowSpec> grid;
    for (const auto& item : windows) {
      auto colon = item.find(':');
      try {
        if (colon == std::string::npos) throw std::invalid_argument(item);
        grid.push_back({std::stoi(item.substr(0, colon)),
                        std::stoi(item.substr(colon + 1))});
      } catch (const std::exception&) {
        throw ConfigError("--windows entry '" + item + "' is not w:tau");
      }
    }
    return grid;
  }

  int Run() {
    auto grid = Grid();
    auto ks = model.Ks();
    EvalConfig config;
    config.params = model.Params();
    if (!IsTemporal(config.params.model)) {
      throw ConfigError("sweep requires a temporal model "
                        "(topic-temporal, sentiment-temporal, two-phase)");
    }
    config.direction = model.Dir();
    config.extract = extract.Config();
    config.lexicon = extract.Lexicon();
    config.workers = WorkerCount();

    std::vector<WindowSpec> valid;
    bool skipped = false;
    for (const auto& spec : grid) {
      try {
        spec.Validate();
        valid.push_back(spec);
      } catch (const ConfigError& e) {
        std::cerr << "warning: skipping window " << spec.w << ":" << spec.tau
                  << ": " << e.what() << "\n";
        skipped = true;
      }
    }

    auto loaded = LoadAndExtract(data, extract, config.extract, config.lexicon);
    if (loaded.pairs.size() < 2) {
      throw HarnessError("need at least 2 pairs after filtering, have " +
                         std::to_string(loaded.pairs.size()));
    }

    std::ostringstream csv;
    csv << "model,w,tau,n,average_rank,first,accuracy";
    for (int k : ks) csv << ",top_" << k << "_count,top_" << k;
    csv << "\n";
    for (const auto& spec : valid) {
      config.params.window = spec;
      auto report = ComputeMetrics(EvaluateDataset(loaded.pairs, config), ks);
      csv << model.model << ',' << spec.w << ',' << spec.tau << ',' << report.n
          << ',' << FormatScore(report.average_rank) << ',' << report.first
          << ',' << FormatScore(report.accuracy);
      for (int k : ks) {
        csv << ',' << report.top_k_count.at(k) << ','
            << FormatScore(report.top_k.at(k));
      }
      csv << "\n";
    }
    if (out.empty()) {
      std::cout << csv.str();
    } else {
      WriteFile(out, csv.str());
    }
    return skipped ? kExitSkipped : kExitOk;
  }
};

struct ReportCommand {
  std::string metrics;
  std::string format = "human";

  void Register(CLI::App* app) {
    app->add_option("--metrics", metrics, "metrics.json from `match --out`")
        ->required()
        ->check(CLI::ExistingFile);
    app->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"human", "json"}));
  }

  int Run() {
    std::ifstream in(metrics, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    auto report = MetricsFromJson(buf.str());
    EmitReport(report, {}, *ParseReportFormat(format), std::cout);
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-platform identity resolution by topic, sentiment and "
               "temporal profile matching"};
  app.set_config("--config", "",
                 "TOML/INI config file; command-line flags take precedence");
  app.require_subcommand(1);

  SynthCommand synth;
  IngestCommand ingest;
  MatchCommand match;
  SweepCommand sweep;
  ReportCommand report;
  auto* synth_app = app.add_subcommand("synth", "Generate a synthetic dataset");
  auto* ingest_app = app.add_subcommand("ingest", "Load, filter and extract");
  auto* match_app = app.add_subcommand("match", "Rank candidates per probe");
  auto* sweep_app = app.add_subcommand("sweep", "Metrics per window setting");
  auto* report_app = app.add_subcommand("report", "Render a metrics file");
  synth.Register(synth_app);
  ingest.Register(ingest_app);
  match.Register(match_app);
  sweep.Register(sweep_app);
  report.Register(report_app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*synth_app) return synth.Run();
    if (*ingest_app) return ingest.Run();
    if (*match_app) return match.Run();
    if (*sweep_app) return sweep.Run();
    if (*report_app) return report.Run();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

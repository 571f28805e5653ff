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

#ifndef IDMATCH_EVAL_H_
#define IDMATCH_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idmatch/corpus.h"
#include "idmatch/matchers.h"
#include "idmatch/textproc.h"

namespace idmatch {

struct RankResult {
  std::string probe_id;
  std::string true_candidate_id;
  std::int64_t rank = 0;  // 1-based
  std::int64_t n_candidates = 0;
  std::vector<CandidateScore> scores;
};

// rank = 1 + #{strictly better} + #{tied, other than the true candidate}.
// Throws HarnessError if `true_id` is not among the scores.
RankResult RankCandidates(std::vector<CandidateScore> scores,
                          std::string_view true_id,
                          std::string_view probe_id = {});

struct MetricsReport {
  double average_rank = 0.0;
  double accuracy = 0.0;
  std::int64_t first = 0;                 // probes ranked 1
  std::map<int, double> top_k;            // k -> fraction with rank <= k
  std::map<int, std::int64_t> top_k_count;
  std::int64_t n = 0;

  // Optional run labels, carried into emitted reports.
  std::string model;
  std::optional<WindowSpec> window;
};

// Throws DomainError if `results` is empty, ConfigError for k < 1.
MetricsReport ComputeMetrics(const std::vector<RankResult>& results,
                             const std::set<int>& ks);

enum class ReportFormat { kHuman, kCsv, kJson };
std::optional<ReportFormat> ParseReportFormat(std::string_view name);

// Shortest round-trip decimal; WORST renders as "WORST".
std::string FormatScore(double value);

// kHuman: a table row in the layout window size | shift | average rank |
// first | top-k...; kCsv: probe_id,rank,n_candidates,score per result;
// kJson: the MetricsReport.
void EmitReport(const MetricsReport& report,
                const std::vector<RankResult>& results, ReportFormat format,
                std::ostream& out);

std::string MetricsToJson(const MetricsReport& report);
MetricsReport MetricsFromJson(std::string_view json_text);

enum class Direction { kAToB, kBToA };

struct EvalConfig {
  MatchParams params;
  ExtractConfig extract;
  SentimentLexicon lexicon = SentimentLexicon::Default();
  Direction direction = Direction::kAToB;
  int workers = 1;
};

// Extracts observations for both accounts of every set.
struct ExtractedPair {
  std::string pair_id;
  UserProfile a;
  UserProfile b;
};
std::vector<ExtractedPair> ExtractDataset(const std::vector<ProfileSet>& sets,
                                          const ExtractConfig& extract,
                                          const SentimentLexicon& lexicon,
                                          TextStats* stats = nullptr);

// For every pair, probes with one side against all accounts of the other
// side. Candidate and probe ids are pair ids.
std::vector<RankResult> EvaluateDataset(const std::vector<ExtractedPair>& pairs,
                                        const EvalConfig& config);

}  // namespace idmatch

#endif  // IDMATCH_EVAL_H_

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

#include "idmatch/eval.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "idmatch/errors.h"
#include "json.hpp"

namespace idmatch {

RankResult RankCandidates(std::vector<CandidateScore> scores,
                          std::string_view true_id,
                          std::string_view probe_id) {
  auto it = std::find_if(scores.begin(), scores.end(),
                         [&](const CandidateScore& c) { return c.id == true_id; });
  if (it == scores.end()) {
    throw HarnessError("true candidate '" + std::string(true_id) +
                       "' missing from scores for probe '" +
                       std::string(probe_id) + "'");
  }
  const ModelScore truth = it->score;
  std::int64_t rank = 1;
  for (const auto& c : scores) {
    if (&c == &*it) continue;
    if (Outranks(c.score, truth) || RanksEqual(c.score, truth)) ++rank;
  }
  RankResult r;
  r.probe_id = std::string(probe_id);
  r.true_candidate_id = std::string(true_id);
  r.rank = rank;
  r.n_candidates = static_cast<std::int64_t>(scores.size());
  r.scores = std::move(scores);
  return r;
}

MetricsReport ComputeMetrics(const std::vector<RankResult>& results,
                             const std::set<int>& ks) {
  if (results.empty()) throw DomainError("no rank results");
  for (int k : ks) {
    if (k < 1) throw ConfigError("top-k values must be >= 1");
  }
  MetricsReport m;
  m.n = static_cast<std::int64_t>(results.size());
  std::int64_t rank_sum = 0;
  for (const auto& r : results) {
    rank_sum += r.rank;
    if (r.rank == 1) ++m.first;
    for (int k : ks) {
      if (r.rank <= k) ++m.top_k_count[k];
    }
  }
  const auto n = static_cast<double>(m.n);
  m.average_rank = static_cast<double>(rank_sum) / n;
  m.accuracy = static_cast<double>(m.first) / n;
  for (int k : ks) {
    m.top_k_count.try_emplace(k, 0);
    m.top_k[k] = static_cast<double>(m.top_k_count[k]) / n;
  }
  return m;
}

std::optional<ReportFormat> ParseReportFormat(std::string_view name) {
  if (name == "human") return ReportFormat::kHuman;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  return std::nullopt;
}

std::string FormatScore(double value) {
  if (value == kWorst) return "WORST";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string MetricsToJson(const MetricsReport& report) {
  nlohmann::ordered_json doc;
  doc["model"] = report.model;
  if (report.window) {
    doc["window"] = {{"w", report.window->w}, {"tau", report.window->tau}};
  } else {
    doc["window"] = nullptr;
  }
  doc["n"] = report.n;
  doc["average_rank"] = report.average_rank;
  doc["accuracy"] = report.accuracy;
  doc["first"] = report.first;
  nlohmann::ordered_json top = nlohmann::ordered_json::object();
  nlohmann::ordered_json top_count = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.top_k) top[std::to_string(k)] = v;
  for (const auto& [k, v] : report.top_k_count) {
    top_count[std::to_string(k)] = v;
  }
  doc["top_k"] = std::move(top);
  doc["top_k_count"] = std::move(top_count);
  return doc.dump(2) + "\n";
}

MetricsReport MetricsFromJson(std::string_view json_text) {
  try {
    auto doc = nlohmann::json::parse(json_text);
    MetricsReport m;
    m.model = doc.value("model", std::string());
    if (doc.contains("window") && !doc["window"].is_null()) {
      m.window = WindowSpec{doc["window"].at("w").get<int>(),
                            doc["window"].at("tau").get<int>()};
    }
    m.n = doc.at("n").get<std::int64_t>();
    m.average_rank = doc.at("average_rank").get<double>();
    m.accuracy = doc.at("accuracy").get<double>();
    m.first = doc.at("first").get<std::int64_t>();
    for (const auto& [k, v] : doc.at("top_k").items()) {
      m.top_k[std::stoi(k)] = v.get<double>();
    }
    if (doc.contains("top_k_count")) {
      for (const auto& [k, v] : doc["top_k_count"].items()) {
        m.top_k_count[std::stoi(k)] = v.get<std::int64_t>();
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("metrics json: ") + e.what());
  }
}

namespace {

std::string Percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", fraction * 100.0);
  return buf;
}

void EmitHuman(const MetricsReport& r, std::ostream& out) {
  std::vector<std::string> header = {"Window Size (w)", "Shifting Amount (tau)",
                                     "Average Rank", "First (Rank=1)"};
  char avg[32];
  std::snprintf(avg, sizeof(avg), "%.2f", r.average_rank);
  std::vector<std::string> row = {
      r.window ? std::to_string(r.window->w) : "-",
      r.window ? std::to_string(r.window->tau) : "-", avg,
      std::to_string(r.first) + " (" + Percent(r.accuracy) + ")"};
  for (const auto& [k, frac] : r.top_k) {
    if (k == 1) continue;
    header.push_back("Top-" + std::to_string(k));
    auto count = r.top_k_count.count(k) ? r.top_k_count.at(k) : 0;
    row.push_back(std::to_string(count) + " (" + Percent(frac) + ")");
  }
  out << "model: " << (r.model.empty() ? "-" : r.model) << "  n: " << r.n
      << "\n";
  auto print_line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i + 1 == cells.size()) {
        out << cells[i];
        break;
      }
      auto width = std::max(header[i].size(), row[i].size()) + 2;
      out << std::left << std::setw(static_cast<int>(width)) << cells[i];
    }
    out << "\n";
  };
  print_line(header);
  print_line(row);
}

void EmitCsv(const std::vector<RankResult>& results, std::ostream& out) {
  out << "probe_id,rank,n_candidates,score\n";
  for (const auto& r : results) {
    double score = kWorst;
    for (const auto& c : r.scores) {
      if (c.id == r.true_candidate_id) score = c.score.value;
    }
    out << r.probe_id << ',' << r.rank << ',' << r.n_candidates << ','
        << FormatScore(score) << '\n';
  }
}

}  // namespace

void EmitReport(const MetricsReport& report,
                const std::vector<RankResult>& results, ReportFormat format,
                std::ostream& out) {
  switch (format) {
    case ReportFormat::kHuman:
      EmitHuman(report, out);
      break;
    case ReportFormat::kCsv:
      EmitCsv(results, out);
      break;
    case ReportFormat::kJson:
      out << MetricsToJson(report);
      break;
  }
  if (!out) throw std::ios_base::failure("failed to write report");
}

std::vector<ExtractedPair> ExtractDataset(const std::vector<ProfileSet>& sets,
                                          const ExtractConfig& extract,
                                          const SentimentLexicon& lexicon,
                                          TextStats* stats) {
  std::vector<ExtractedPair> out;
  out.reserve(sets.size());
  for (const auto& set : sets) {
    ExtractedPair p;
    p.pair_id = set.pair_id;
    p.a = MakeUserProfile(set.pair_id, Platform::kA,
                          ObservePosts(set.posts_a, extract, lexicon, stats));
    p.b = MakeUserProfile(set.pair_id, Platform::kB,
                          ObservePosts(set.posts_b, extract, lexicon, stats));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<RankResult> EvaluateDataset(const std::vector<ExtractedPair>& pairs,
                                        const EvalConfig& config) {
  config.params.Validate();
  const bool a_to_b = config.direction == Direction::kAToB;
  std::vector<UserProfile> candidates;
  candidates.reserve(pairs.size());
  for (const auto& p : pairs) candidates.push_back(a_to_b ? p.b : p.a);

  std::vector<RankResult> results;
  results.reserve(pairs.size());
  for (const auto& p : pairs) {
    const UserProfile& probe = a_to_b ? p.a : p.b;
    auto scores = ScoreAll(probe, candidates, config.params, config.workers);
    results.push_back(RankCandidates(std::move(scores), p.pair_id, p.pair_id));
  }
  return results;
}

}  // namespace idmatch

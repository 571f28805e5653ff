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

#ifndef IDMATCH_MATCHERS_H_
#define IDMATCH_MATCHERS_H_

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idmatch/corpus.h"
#include "idmatch/profiles.h"
#include "idmatch/textproc.h"

namespace idmatch {

enum class Model {
  kTopicNT,
  kSentimentNT,
  kCombined,
  kTopicTemporal,
  kSentimentTemporal,
  kTwoPhase,
  kDistance,
};

// CLI spelling: "topic-nt", "sentiment-nt", "combined", "topic-temporal",
// "sentiment-temporal", "two-phase", "distance".
const char* ModelName(Model m);
std::optional<Model> ParseModel(std::string_view name);

// Ordered below every finite score.
inline constexpr double kWorst = -std::numeric_limits<double>::infinity();

// Higher is better for every model. `tier` is only used by the two-phase
// ranking, where shortlisted candidates (tier 1) outrank the rest (tier 0)
// regardless of value.
struct ModelScore {
  Model model = Model::kTopicNT;
  double value = kWorst;
  int tier = 0;
  std::map<std::string, double> diagnostics;

  bool is_worst() const { return value == kWorst; }
};

// Strict "a ranks above b".
bool Outranks(const ModelScore& a, const ModelScore& b);
bool RanksEqual(const ModelScore& a, const ModelScore& b);

// S_t = sum_t P(t|U1) P(t|U2); value = ln(S_t), WORST when S_t = 0.
// Diagnostics: "S_t" and the literal "Sim_t" = S_t ln S_t.
ModelScore TopicSimilarity(const TopicDistribution& d1,
                           const TopicDistribution& d2);

// S_s = sum over (t, s) of [P(s|U1) P(t,s|U1)] [P(s|U2) P(t,s|U2)];
// value = ln(S_s), WORST when S_s = 0. Diagnostics "S_s" and "Sim_s".
ModelScore SentimentSimilarity(const JointDistribution& j1,
                               const JointDistribution& j2);

// w1 * topic + w2 * sentiment. Throws ConfigError unless w1, w2 >= 0 and
// w1 + w2 = 1 (within 1e-9). WORST if an input with nonzero weight is
// WORST.
ModelScore CombinedSimilarity(const ModelScore& topic,
                              const ModelScore& sentiment, double w1,
                              double w2);

inline constexpr double kDefaultEpsilon = 1e-9;

// KL(P||Q) in bits after extending both to the union support with additive
// `epsilon` and renormalizing.
double KlDivergence(const TopicDistribution& p, const TopicDistribution& q,
                    double epsilon = kDefaultEpsilon);
// KL(P||Q) + KL(Q||P).
double SymmetricKl(const TopicDistribution& p, const TopicDistribution& q,
                   double epsilon = kDefaultEpsilon);

enum class TemporalMode { kTopic, kSentiment };
enum class RankingKey { kSimilarity, kSymmetricKl };

// Mean of per-window similarities over windows where both sides posted.
// Diagnostics: usable_windows, variance (population), mean_symmetric_kl.
// WORST when no window is usable, or when a usable window has no overlap.
// With RankingKey::kSymmetricKl the value is -mean_symmetric_kl instead.
// Throws std::logic_error if the two profiles' window geometry differs.
ModelScore TemporalScore(const WindowedProfile& wp1,
                         const WindowedProfile& wp2, TemporalMode mode,
                         RankingKey key = RankingKey::kSimilarity,
                         double epsilon = kDefaultEpsilon);

struct DistanceWeights {
  double w1 = 0.75;          // frequency distance weight
  double w2 = 0.5;           // emotion distance weight
  std::int64_t bonus_a = 5;  // count threshold on side A
  std::int64_t bonus_b = 3;  // count threshold on side B

  void Validate() const;
};

using TopicSentiments = std::map<std::string, SentimentScore, std::less<>>;

// Component-wise mean sentiment per topic.
TopicSentiments AverageTopicSentiment(const std::vector<TopicObservation>& obs);

// Reward/penalty distance between two topic profiles, negated so that
// higher is better:
//   * absent on one side: |a - b| of normalized frequencies
//   * present on both:    (a - b)^2
//   * both counts at their bonus thresholds: subtract a*b*(a - b)^2
//   * frequency part weighted by w1
//   * plus w2 * mean over shared topics of the mean absolute gap between
//     the two (pos, neg, neu) triples
// Either side empty scores 0.
ModelScore DistanceScore(const TopicCounter& counter_a,
                         const TopicCounter& counter_b,
                         const TopicSentiments& sent_a,
                         const TopicSentiments& sent_b,
                         const DistanceWeights& weights);

// One account's extracted observations with precomputed aggregates.
struct UserProfile {
  std::string id;
  Platform platform = Platform::kA;
  std::vector<TopicObservation> observations;
  TopicCounter counter;
  TopicSentiments sentiments;
};

UserProfile MakeUserProfile(std::string id, Platform platform,
                            std::vector<TopicObservation> observations);

struct MatchParams {
  Model model = Model::kTopicNT;
  WindowSpec window;
  double w1 = 0.5;  // combined model weights
  double w2 = 0.5;
  DistanceWeights distance;
  int shortlist = 10;
  double epsilon = kDefaultEpsilon;
  RankingKey key = RankingKey::kSimilarity;

  // Throws ConfigError on any invalid field relevant to `model`.
  void Validate() const;
};

// Scores one pair under params.model (not kTwoPhase). Profiles are oriented
// by platform, so the distance model's A/B thresholds follow the accounts.
ModelScore ScorePair(const UserProfile& probe, const UserProfile& candidate,
                     const MatchParams& params);

struct CandidateScore {
  std::string id;
  ModelScore score;
};

// Scores every candidate, in input order. `workers` > 1 fans the work out
// over a bounded thread pool; results are identical for any worker count.
std::vector<CandidateScore> ScoreAll(const UserProfile& probe,
                                     const std::vector<UserProfile>& candidates,
                                     const MatchParams& params,
                                     int workers = 1);

struct TwoPhaseEntry {
  std::string id;
  std::size_t input_index = 0;
  ModelScore phase1;          // topic temporal
  bool shortlisted = false;
  ModelScore phase2;          // sentiment temporal, set when shortlisted
};

// Ranks all candidates by topic-temporal score, re-ranks the top
// `shortlist` by sentiment-temporal score, and appends the remainder in
// phase-one order. Ties keep input order.
std::vector<TwoPhaseEntry> TwoPhaseRank(
    const UserProfile& probe, const std::vector<UserProfile>& candidates,
    const MatchParams& params, int workers = 1);

}  // namespace idmatch

#endif  // IDMATCH_MATCHERS_H_

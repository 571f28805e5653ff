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

#include "idmatch/matchers.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "idmatch/errors.h"
#include "idmatch/invariants.h"
#include "parallel.h"

namespace idmatch {
namespace {

constexpr std::pair<Model, const char*> kModelNames[] = {
    {Model::kTopicNT, "topic-nt"},
    {Model::kSentimentNT, "sentiment-nt"},
    {Model::kCombined, "combined"},
    {Model::kTopicTemporal, "topic-temporal"},
    {Model::kSentimentTemporal, "sentiment-temporal"},
    {Model::kTwoPhase, "two-phase"},
    {Model::kDistance, "distance"},
};

// ln(S) with S = 0 mapped to WORST; literal S ln S kept as a diagnostic.
ModelScore LogScore(Model model, double s, const char* s_name,
                    const char* sim_name) {
  ModelScore out;
  out.model = model;
  out.diagnostics[s_name] = s;
  if (s > 0.0) {
    out.value = std::log(s);
    out.diagnostics[sim_name] = s * out.value;
  } else {
    out.value = kWorst;
  }
  return out;
}

ModelScore Worst(Model model) {
  ModelScore out;
  out.model = model;
  out.value = kWorst;
  return out;
}

std::vector<double> Smoothed(const TopicDistribution& d,
                             const std::set<std::string_view>& support,
                             double epsilon) {
  std::vector<double> out;
  out.reserve(support.size());
  double sum = 0.0;
  for (auto topic : support) {
    auto it = d.find(topic);
    double p = (it == d.end() ? 0.0 : it->second) + epsilon;
    out.push_back(p);
    sum += p;
  }
  double total = 0.0;
  bool positive = true;
  for (auto& p : out) {
    p /= sum;
    total += p;
    positive = positive && p > 0.0;
  }
  invariants::Check(positive && std::abs(total - 1.0) <= 1e-9,
                    "smoothed distribution on the simplex");
  return out;
}

double KlBits(const std::vector<double>& p, const std::vector<double>& q) {
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) kl += p[i] * std::log2(p[i] / q[i]);
  return kl;
}

std::set<std::string_view> UnionSupport(const TopicDistribution& p,
                                        const TopicDistribution& q) {
  std::set<std::string_view> s;
  for (const auto& [t, _] : p) s.insert(t);
  for (const auto& [t, _] : q) s.insert(t);
  return s;
}

}  // namespace

const char* ModelName(Model m) {
  for (const auto& [model, name] : kModelNames) {
    if (model == m) return name;
  }
  return "?";
}

std::optional<Model> ParseModel(std::string_view name) {
  for (const auto& [model, n] : kModelNames) {
    if (name == n) return model;
  }
  return std::nullopt;
}

bool Outranks(const ModelScore& a, const ModelScore& b) {
  if (a.tier != b.tier) return a.tier > b.tier;
  return a.value > b.value;
}

bool RanksEqual(const ModelScore& a, const ModelScore& b) {
  return a.tier == b.tier && a.value == b.value;
}

ModelScore TopicSimilarity(const TopicDistribution& d1,
                           const TopicDistribution& d2) {
  double s = 0.0;
  for (const auto& [topic, p1] : d1) {
    auto it = d2.find(topic);
    if (it != d2.end()) s += p1 * it->second;
  }
  return LogScore(Model::kTopicNT, s, "S_t", "Sim_t");
}

ModelScore SentimentSimilarity(const JointDistribution& j1,
                               const JointDistribution& j2) {
  double s = 0.0;
  for (const auto& [key, p1] : j1.joint) {
    auto it = j2.joint.find(key);
    if (it == j2.joint.end()) continue;
    s += (j1.Prior(key.second) * p1) * (j2.Prior(key.second) * it->second);
  }
  return LogScore(Model::kSentimentNT, s, "S_s", "Sim_s");
}

ModelScore CombinedSimilarity(const ModelScore& topic,
                              const ModelScore& sentiment, double w1,
                              double w2) {
  if (!(w1 >= 0.0) || !(w2 >= 0.0)) {
    throw ConfigError("combined weights must be non-negative");
  }
  if (std::abs(w1 + w2 - 1.0) > 1e-9) {
    throw ConfigError("combined weights must satisfy w1 + w2 = 1 (got " +
                      std::to_string(w1) + " + " + std::to_string(w2) + ")");
  }
  ModelScore out;
  out.model = Model::kCombined;
  out.diagnostics["topic"] = topic.value;
  out.diagnostics["sentiment"] = sentiment.value;
  // A zero-weighted side takes no part, so (1, 0) is exactly the topic model.
  double value = 0.0;
  bool worst = false;
  for (const auto& [w, s] : {std::pair{w1, &topic}, std::pair{w2, &sentiment}}) {
    if (w == 0.0) continue;
    if (s->is_worst()) worst = true;
    value += w * s->value;
  }
  out.value = worst ? kWorst : value;
  return out;
}

double KlDivergence(const TopicDistribution& p, const TopicDistribution& q,
                    double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  auto support = UnionSupport(p, q);
  if (support.empty()) return 0.0;
  return KlBits(Smoothed(p, support, epsilon), Smoothed(q, support, epsilon));
}

double SymmetricKl(const TopicDistribution& p, const TopicDistribution& q,
                   double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  auto support = UnionSupport(p, q);
  if (support.empty()) return 0.0;
  auto ps = Smoothed(p, support, epsilon);
  auto qs = Smoothed(q, support, epsilon);
  return KlBits(ps, qs) + KlBits(qs, ps);
}

ModelScore TemporalScore(const WindowedProfile& wp1,
                         const WindowedProfile& wp2, TemporalMode mode,
                         RankingKey key, double epsilon) {
  if (!wp1.SameGeometry(wp2)) {
    throw std::logic_error("temporal profiles have different window geometry");
  }
  const Model model = mode == TemporalMode::kTopic ? Model::kTopicTemporal
                                                   : Model::kSentimentTemporal;
  std::vector<double> values;
  std::vector<double> kls;
  for (std::size_t k = 0; k < wp1.windows.size(); ++k) {
    const Window& a = wp1.windows[k];
    const Window& b = wp2.windows[k];
    if (a.topics.empty() || b.topics.empty()) continue;
    auto da = MakeTopicDistribution(a.topics);
    auto db = MakeTopicDistribution(b.topics);
    ModelScore s = mode == TemporalMode::kTopic
                       ? TopicSimilarity(da, db)
                       : SentimentSimilarity(MakeJointDistribution(a.joint),
                                             MakeJointDistribution(b.joint));
    values.push_back(s.value);
    kls.push_back(SymmetricKl(da, db, epsilon));
  }

  ModelScore out;
  out.model = model;
  out.diagnostics["usable_windows"] = static_cast<double>(values.size());
  out.diagnostics["total_windows"] = static_cast<double>(wp1.windows.size());
  if (values.empty()) return out;

  const double n = static_cast<double>(values.size());
  const double mean_kl = std::accumulate(kls.begin(), kls.end(), 0.0) / n;
  out.diagnostics["mean_symmetric_kl"] = mean_kl;

  const bool any_worst =
      std::any_of(values.begin(), values.end(),
                  [](double v) { return v == kWorst; });
  double mean = kWorst;
  if (!any_worst) {
    mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    out.diagnostics["variance"] = var / n;
  }
  out.value = key == RankingKey::kSymmetricKl ? -mean_kl : mean;
  return out;
}

void DistanceWeights::Validate() const {
  if (!(w1 >= 0.0) || !(w2 >= 0.0)) {
    throw ConfigError("distance weights must be non-negative");
  }
  if (bonus_a < 0 || bonus_b < 0) {
    throw ConfigError("bonus thresholds must be non-negative");
  }
}

TopicSentiments AverageTopicSentiment(
    const std::vector<TopicObservation>& obs) {
  std::map<std::string, std::pair<SentimentScore, int>, std::less<>> acc;
  for (const auto& o : obs) {
    auto& [sum, n] = acc[o.topic];
    if (n == 0) sum = SentimentScore{0.0, 0.0, 0.0};
    sum.pos += o.sentiment.pos;
    sum.neg += o.sentiment.neg;
    sum.neu += o.sentiment.neu;
    ++n;
  }
  TopicSentiments out;
  for (auto& [topic, entry] : acc) {
    const double n = entry.second;
    SentimentScore mean{entry.first.pos / n, entry.first.neg / n,
                        entry.first.neu / n};
    invariants::Check(IsOnSimplex(mean), "mean topic sentiment on the simplex");
    out.emplace(topic, mean);
  }
  return out;
}

ModelScore DistanceScore(const TopicCounter& counter_a,
                         const TopicCounter& counter_b,
                         const TopicSentiments& sent_a,
                         const TopicSentiments& sent_b,
                         const DistanceWeights& weights) {
  weights.Validate();
  ModelScore out;
  out.model = Model::kDistance;
  if (counter_a.empty() || counter_b.empty()) {
    out.value = 0.0;
    return out;
  }

  std::set<std::string_view> topics;
  for (const auto& [t, _] : counter_a.counts()) topics.insert(t);
  for (const auto& [t, _] : counter_b.counts()) topics.insert(t);

  const auto total_a = static_cast<double>(counter_a.total());
  const auto total_b = static_cast<double>(counter_b.total());
  double freq_distance = 0.0;
  int bonuses = 0;
  for (auto topic : topics) {
    const std::int64_t ca = counter_a.Count(topic);
    const std::int64_t cb = counter_b.Count(topic);
    const double a = static_cast<double>(ca) / total_a;
    const double b = static_cast<double>(cb) / total_b;
    const double gap = a - b;
    if (a == 0.0 || b == 0.0) {
      freq_distance += std::abs(gap);
    } else {
      freq_distance += gap * gap;
    }
    if (ca >= weights.bonus_a && cb >= weights.bonus_b) {
      freq_distance -= a * b * gap * gap;
      ++bonuses;
    }
  }
  double combined = weights.w1 * freq_distance;

  const SentimentScore kZero{0.0, 0.0, 0.0};
  auto lookup = [&](const TopicSentiments& m, std::string_view t) {
    auto it = m.find(t);
    return it == m.end() ? kZero : it->second;
  };
  auto is_zero = [](const SentimentScore& s) {
    return s.pos == 0.0 && s.neg == 0.0 && s.neu == 0.0;
  };
  double emotion_distance = 0.0;
  int contributing = 0;
  for (auto topic : topics) {
    const SentimentScore ea = lookup(sent_a, topic);
    const SentimentScore eb = lookup(sent_b, topic);
    if (is_zero(ea) || is_zero(eb)) continue;
    double gap = std::abs(ea.pos - eb.pos) + std::abs(ea.neg - eb.neg) +
                 std::abs(ea.neu - eb.neu);
    emotion_distance += gap / 3;
    ++contributing;
  }
  if (contributing > 0) {
    combined += weights.w2 * (emotion_distance / contributing);
  }

  out.value = -combined;
  out.diagnostics["freq_distance"] = freq_distance;
  out.diagnostics["emotion_distance"] =
      contributing > 0 ? emotion_distance / contributing : 0.0;
  out.diagnostics["emotion_topics"] = contributing;
  out.diagnostics["bonus_topics"] = bonuses;
  return out;
}

UserProfile MakeUserProfile(std::string id, Platform platform,
                            std::vector<TopicObservation> observations) {
  UserProfile p;
  p.id = std::move(id);
  p.platform = platform;
  p.counter = BuildCounter(observations);
  p.sentiments = AverageTopicSentiment(observations);
  p.observations = std::move(observations);
  return p;
}

void MatchParams::Validate() const {
  switch (model) {
    case Model::kCombined:
      if (!(w1 >= 0.0) || !(w2 >= 0.0) || std::abs(w1 + w2 - 1.0) > 1e-9) {
        throw ConfigError(
            "combined model requires non-negative weights with w1 + w2 = 1 "
            "(got w1=" + std::to_string(w1) + ", w2=" + std::to_string(w2) +
            ")");
      }
      break;
    case Model::kTopicTemporal:
    case Model::kSentimentTemporal:
    case Model::kTwoPhase:
      window.Validate();
      break;
    case Model::kDistance:
      distance.Validate();
      break;
    default:
      break;
  }
  if (model == Model::kTwoPhase && shortlist < 1) {
    throw ConfigError("shortlist must be >= 1");
  }
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
}

ModelScore ScorePair(const UserProfile& probe, const UserProfile& candidate,
                     const MatchParams& params) {
  const bool swap = probe.platform == Platform::kB &&
                    candidate.platform == Platform::kA;
  const UserProfile& a = swap ? candidate : probe;
  const UserProfile& b = swap ? probe : candidate;

  switch (params.model) {
    case Model::kTopicNT:
      if (a.counter.empty() || b.counter.empty()) return Worst(params.model);
      return TopicSimilarity(MakeTopicDistribution(a.counter),
                             MakeTopicDistribution(b.counter));
    case Model::kSentimentNT:
      if (a.observations.empty() || b.observations.empty()) {
        return Worst(params.model);
      }
      return SentimentSimilarity(MakeJointDistribution(a.observations),
                                 MakeJointDistribution(b.observations));
    case Model::kCombined: {
      if (a.observations.empty() || b.observations.empty()) {
        return CombinedSimilarity(Worst(Model::kTopicNT),
                                  Worst(Model::kSentimentNT), params.w1,
                                  params.w2);
      }
      return CombinedSimilarity(
          TopicSimilarity(MakeTopicDistribution(a.counter),
                          MakeTopicDistribution(b.counter)),
          SentimentSimilarity(MakeJointDistribution(a.observations),
                              MakeJointDistribution(b.observations)),
          params.w1, params.w2);
    }
    case Model::kTopicTemporal:
    case Model::kSentimentTemporal: {
      if (a.observations.empty() || b.observations.empty()) {
        return Worst(params.model);
      }
      auto [wa, wb] = SliceWindows(a.observations, b.observations,
                                   params.window);
      return TemporalScore(wa, wb,
                           params.model == Model::kTopicTemporal
                               ? TemporalMode::kTopic
                               : TemporalMode::kSentiment,
                           params.key, params.epsilon);
    }
    case Model::kDistance:
      return DistanceScore(a.counter, b.counter, a.sentiments, b.sentiments,
                           params.distance);
    case Model::kTwoPhase:
      throw ConfigError("two-phase ranking scores a candidate list, not a pair");
  }
  throw ConfigError("unknown model");
}

std::vector<TwoPhaseEntry> TwoPhaseRank(
    const UserProfile& probe, const std::vector<UserProfile>& candidates,
    const MatchParams& params, int workers) {
  if (params.shortlist < 1) throw ConfigError("shortlist must be >= 1");
  MatchParams topic = params;
  topic.model = Model::kTopicTemporal;
  MatchParams sentiment = params;
  sentiment.model = Model::kSentimentTemporal;

  std::vector<TwoPhaseEntry> entries(candidates.size());
  internal::ParallelFor(candidates.size(), workers, [&](std::size_t i) {
    entries[i].id = candidates[i].id;
    entries[i].input_index = i;
    entries[i].phase1 = ScorePair(probe, candidates[i], topic);
  });
  std::stable_sort(entries.begin(), entries.end(),
                   [](const TwoPhaseEntry& x, const TwoPhaseEntry& y) {
                     return Outranks(x.phase1, y.phase1);
                   });

  const std::size_t cut =
      std::min(entries.size(), static_cast<std::size_t>(params.shortlist));
  internal::ParallelFor(cut, workers, [&](std::size_t i) {
    entries[i].shortlisted = true;
    entries[i].phase2 =
        ScorePair(probe, candidates[entries[i].input_index], sentiment);
  });
  std::stable_sort(entries.begin(),
                   entries.begin() + static_cast<std::ptrdiff_t>(cut),
                   [](const TwoPhaseEntry& x, const TwoPhaseEntry& y) {
                     return Outranks(x.phase2, y.phase2);
                   });
  return entries;
}

std::vector<CandidateScore> ScoreAll(const UserProfile& probe,
                                     const std::vector<UserProfile>& candidates,
                                     const MatchParams& params, int workers) {
  params.Validate();
  std::vector<CandidateScore> out(candidates.size());
  if (params.model == Model::kTwoPhase) {
    for (auto& entry : TwoPhaseRank(probe, candidates, params, workers)) {
      CandidateScore& cs = out[entry.input_index];
      cs.id = entry.id;
      if (entry.shortlisted) {
        cs.score = entry.phase2;
        cs.score.tier = 1;
        cs.score.diagnostics["phase1"] = entry.phase1.value;
      } else {
        cs.score = entry.phase1;
      }
      cs.score.model = Model::kTwoPhase;
    }
    return out;
  }
  internal::ParallelFor(candidates.size(), workers, [&](std::size_t i) {
    out[i].id = candidates[i].id;
    out[i].score = ScorePair(probe, candidates[i], params);
  });
  return out;
}

}  // namespace idmatch

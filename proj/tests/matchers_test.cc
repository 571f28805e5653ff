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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "idmatch/errors.h"
#include "idmatch/eval.h"
#include "idmatch/synthgen.h"
#include "oracles.h"
#include "test_helpers.h"

namespace idmatch {
namespace {

using testing::Day;
using testing::Obs;

TEST(ModelNameTest, RoundTrips) {
  for (Model m : {Model::kTopicNT, Model::kSentimentNT, Model::kCombined,
                  Model::kTopicTemporal, Model::kSentimentTemporal,
                  Model::kTwoPhase, Model::kDistance}) {
    EXPECT_EQ(ParseModel(ModelName(m)), m);
  }
  EXPECT_FALSE(ParseModel("topic").has_value());
}

TEST(TopicSimilarityTest, Examples) {
  auto same = TopicSimilarity({{"a", 1.0}}, {{"a", 1.0}});
  EXPECT_EQ(same.value, 0.0);
  EXPECT_EQ(same.diagnostics.at("S_t"), 1.0);
  EXPECT_EQ(same.diagnostics.at("Sim_t"), 0.0);

  EXPECT_TRUE(TopicSimilarity({{"a", 1.0}}, {{"b", 1.0}}).is_worst());

  auto half = TopicSimilarity({{"a", 1.0}}, {{"a", 0.5}, {"b", 0.5}});
  EXPECT_DOUBLE_EQ(half.diagnostics.at("S_t"), 0.5);
  EXPECT_NEAR(half.value, -0.6931, 1e-4);
  EXPECT_NEAR(half.diagnostics.at("Sim_t"), -0.3466, 1e-4);
}

TEST(TopicSimilarityTest, LogRankingMatchesRawOverlapRanking) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_dist = [&] {
    TopicCounter c;
    for (int i = 0; i < 6; ++i) {
      if (rng() % 2) c.Add(std::string(1, static_cast<char>('a' + i)), 1 + rng() % 5);
    }
    if (c.empty()) c.Add("a");
    return MakeTopicDistribution(c);
  };
  for (int trial = 0; trial < 500; ++trial) {
    auto probe = random_dist();
    auto x = random_dist(), y = random_dist();
    auto sx = TopicSimilarity(probe, x), sy = TopicSimilarity(probe, y);
    double raw_x = sx.diagnostics.at("S_t"), raw_y = sy.diagnostics.at("S_t");
    EXPECT_EQ(Outranks(sx, sy), raw_x > raw_y);
  }
}

TEST(SentimentSimilarityTest, Examples) {
  JointDistribution one;
  one.joint[{"a", Polarity::kPositive}] = 1.0;
  one.prior = {1.0, 0.0, 0.0};
  auto same = SentimentSimilarity(one, one);
  EXPECT_EQ(same.value, 0.0);
  EXPECT_EQ(same.diagnostics.at("S_s"), 1.0);

  JointDistribution neg;
  neg.joint[{"a", Polarity::kNegative}] = 1.0;
  neg.prior = {0.0, 1.0, 0.0};
  EXPECT_TRUE(SentimentSimilarity(one, neg).is_worst());

  JointDistribution mixed;
  mixed.joint[{"a", Polarity::kPositive}] = 0.5;
  mixed.joint[{"a", Polarity::kNegative}] = 0.5;
  mixed.prior = {0.5, 0.5, 0.0};
  auto s = SentimentSimilarity(one, mixed);
  EXPECT_DOUBLE_EQ(s.diagnostics.at("S_s"), (1.0 * 1.0) * (0.5 * 0.5));
  EXPECT_DOUBLE_EQ(s.value, std::log(0.25));
}

TEST(CombinedSimilarityTest, Examples) {
  ModelScore t{Model::kTopicNT, -0.6931, 0, {}};
  ModelScore s{Model::kSentimentNT, -1.3863, 0, {}};
  EXPECT_NEAR(CombinedSimilarity(t, s, 0.5, 0.5).value, -1.0397, 1e-4);
  EXPECT_EQ(CombinedSimilarity(t, s, 1.0, 0.0).value, t.value);
  EXPECT_THROW(CombinedSimilarity(t, s, 0.75, 0.5), ConfigError);
  EXPECT_THROW(CombinedSimilarity(t, s, 1.5, -0.5), ConfigError);
  ModelScore worst{Model::kSentimentNT, kWorst, 0, {}};
  EXPECT_TRUE(CombinedSimilarity(t, worst, 0.5, 0.5).is_worst());
  EXPECT_EQ(CombinedSimilarity(t, worst, 1.0, 0.0).value, t.value);
}

TEST(CombinedSimilarityTest, TopicOnlyWeightsRankLikeTopicModel) {
  auto sets = Generate(GenSpec{.n_pairs = 12, .seed = 4});
  auto pairs = ExtractDataset(sets, ExtractConfig{}, SentimentLexicon::Default());
  std::vector<UserProfile> candidates;
  for (const auto& p : pairs) candidates.push_back(p.b);
  MatchParams topic;
  MatchParams combined;
  combined.model = Model::kCombined;
  combined.w1 = 1.0;
  combined.w2 = 0.0;
  for (const auto& p : pairs) {
    auto st = ScoreAll(p.a, candidates, topic);
    auto sc = ScoreAll(p.a, candidates, combined);
    for (std::size_t i = 0; i < st.size(); ++i) {
      for (std::size_t j = 0; j < st.size(); ++j) {
        EXPECT_EQ(Outranks(st[i].score, st[j].score),
                  Outranks(sc[i].score, sc[j].score));
      }
    }
  }
}

TEST(KlDivergenceTest, HandValue) {
  TopicDistribution p{{"x", 0.5}, {"y", 0.5}};
  TopicDistribution q{{"x", 0.25}, {"y", 0.75}};
  double exact = 0.5 * std::log2(0.5 / 0.25) + 0.5 * std::log2(0.5 / 0.75);
  EXPECT_NEAR(exact, 0.2075, 1e-4);
  EXPECT_NEAR(KlDivergence(p, q), exact, 1e-6);
  EXPECT_EQ(KlDivergence(p, p), 0.0);
  EXPECT_THROW(KlDivergence(p, q, 0.0), ConfigError);
}

TEST(KlDivergenceTest, DisjointSupportIsFiniteAfterSmoothing) {
  double kl = SymmetricKl({{"a", 1.0}}, {{"b", 1.0}});
  EXPECT_TRUE(std::isfinite(kl));
  EXPECT_GT(kl, 10.0);
}

TEST(KlDivergenceTest, RandomPairsAgainstOracle) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    TopicDistribution p, q;
    std::vector<double> pv(n, 0.0), qv(n, 0.0);
    double ps = 0, qs = 0;
    for (int i = 0; i < n; ++i) {
      if (rng() % 4) ps += pv[i] = u(rng);
      if (rng() % 4) qs += qv[i] = u(rng);
    }
    if (ps == 0) ps += pv[0] = 1;
    if (qs == 0) qs += qv[n - 1] = 1;
    // Union support is every index with mass on either side.
    std::vector<double> pu, qu;
    for (int i = 0; i < n; ++i) {
      pv[i] /= ps;
      qv[i] /= qs;
      std::string key(1, static_cast<char>('a' + i));
      if (pv[i] > 0) p[key] = pv[i];
      if (qv[i] > 0) q[key] = qv[i];
      if (pv[i] > 0 || qv[i] > 0) {
        pu.push_back(pv[i]);
        qu.push_back(qv[i]);
      }
    }
    auto sp = oracle::Smooth(pu, kDefaultEpsilon);
    auto sq = oracle::Smooth(qu, kDefaultEpsilon);
    const double expected = oracle::KlBits(sp, sq) + oracle::KlBits(sq, sp);
    const double sym = SymmetricKl(p, q);
    EXPECT_NEAR(sym, expected, 1e-9 * std::max(1.0, expected));
    EXPECT_GE(sym, 0.0);
    EXPECT_EQ(sym, SymmetricKl(q, p));
    EXPECT_GE(KlDivergence(p, q), 0.0);
    EXPECT_EQ(SymmetricKl(p, p), 0.0);
  }
}

// Per-window overlaps 1/2, 1/4, 1/8 give values -ln2, -2ln2, -3ln2.
std::pair<WindowedProfile, WindowedProfile> ThreeWindowFixture() {
  std::vector<TopicObservation> a = {Obs("x", Polarity::kNeutral, Day(1)),
                                     Obs("x", Polarity::kNeutral, Day(11)),
                                     Obs("x", Polarity::kNeutral, Day(21))};
  std::vector<TopicObservation> b = {Obs("x", Polarity::kNeutral, Day(0)),
                                     Obs("y", Polarity::kNeutral, Day(0))};
  b.push_back(Obs("x", Polarity::kNeutral, Day(12)));
  for (int i = 0; i < 3; ++i) {
    b.push_back(Obs("n" + std::to_string(i), Polarity::kNeutral, Day(12)));
  }
  b.push_back(Obs("x", Polarity::kNeutral, Day(22)));
  for (int i = 0; i < 7; ++i) {
    b.push_back(Obs("m" + std::to_string(i), Polarity::kNeutral, Day(22)));
  }
  return SliceWindows(a, b, WindowSpec{10, 10});
}

TEST(TemporalScoreTest, MeanAndPopulationVariance) {
  auto [wa, wb] = ThreeWindowFixture();
  ASSERT_EQ(wa.windows.size(), 3u);
  auto s = TemporalScore(wa, wb, TemporalMode::kTopic);
  const double l = std::log(2.0);
  std::vector<double> values = {-l, -2 * l, -3 * l};
  double mean = std::accumulate(values.begin(), values.end(), 0.0) / 3;
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean) / 3;
  EXPECT_NEAR(s.value, mean, 1e-12);
  EXPECT_NEAR(s.value, -2 * l, 1e-12);
  EXPECT_NEAR(s.diagnostics.at("variance"), var, 1e-12);
  EXPECT_NEAR(s.diagnostics.at("variance"), 2.0 / 3.0 * l * l, 1e-12);
  EXPECT_EQ(s.diagnostics.at("usable_windows"), 3.0);
  EXPECT_GT(s.diagnostics.at("mean_symmetric_kl"), 0.0);

  auto kl = TemporalScore(wa, wb, TemporalMode::kTopic, RankingKey::kSymmetricKl);
  EXPECT_EQ(kl.value, -s.diagnostics.at("mean_symmetric_kl"));
}

TEST(TemporalScoreTest, SilentUserIsWorst) {
  // B only posts in windows where A is silent.
  std::vector<TopicObservation> a = {Obs("x", Polarity::kNeutral, Day(0)),
                                     Obs("x", Polarity::kNeutral, Day(25))};
  std::vector<TopicObservation> b = {Obs("x", Polarity::kNeutral, Day(12))};
  auto [wa, wb] = SliceWindows(a, b, WindowSpec{10, 10});
  auto s = TemporalScore(wa, wb, TemporalMode::kTopic);
  EXPECT_TRUE(s.is_worst());
  EXPECT_EQ(s.diagnostics.at("usable_windows"), 0.0);
}

TEST(TemporalScoreTest, SkipsOneSidedWindows) {
  std::vector<TopicObservation> a = {Obs("x", Polarity::kNeutral, Day(0)),
                                     Obs("y", Polarity::kNeutral, Day(25))};
  std::vector<TopicObservation> b = {Obs("x", Polarity::kNeutral, Day(1))};
  auto [wa, wb] = SliceWindows(a, b, WindowSpec{10, 10});
  auto s = TemporalScore(wa, wb, TemporalMode::kTopic);
  EXPECT_EQ(s.value, 0.0);
  EXPECT_EQ(s.diagnostics.at("usable_windows"), 1.0);
  EXPECT_EQ(s.diagnostics.at("total_windows"), 3.0);
}

TEST(TemporalScoreTest, GeometryMismatchIsAnInternalError) {
  auto [wa, wb] = ThreeWindowFixture();
  wb.windows.pop_back();
  EXPECT_THROW(TemporalScore(wa, wb, TemporalMode::kTopic), std::logic_error);
}

TEST(TemporalScoreTest, SingleWindowReducesToNonTemporal) {
  auto sets = Generate(GenSpec{.n_pairs = 20, .seed = 12});
  auto pairs = ExtractDataset(sets, ExtractConfig{}, SentimentLexicon::Default());
  const WindowSpec whole{100000, 100000};
  for (const auto& p : pairs) {
    for (const auto& q : pairs) {
      auto [wa, wb] = SliceWindows(p.a.observations, q.b.observations, whole);
      ASSERT_EQ(wa.windows.size(), 1u);
      auto t = TemporalScore(wa, wb, TemporalMode::kTopic);
      auto nt = TopicSimilarity(MakeTopicDistribution(p.a.counter),
                                MakeTopicDistribution(q.b.counter));
      EXPECT_EQ(t.value, nt.value);
      auto st = TemporalScore(wa, wb, TemporalMode::kSentiment);
      auto snt = SentimentSimilarity(MakeJointDistribution(p.a.observations),
                                     MakeJointDistribution(q.b.observations));
      EXPECT_EQ(st.value, snt.value);
    }
  }
}

UserProfile Profile(std::string id, Platform platform,
                    std::vector<TopicObservation> obs) {
  return MakeUserProfile(std::move(id), platform, std::move(obs));
}

TEST(TwoPhaseTest, PhaseTwoInvertsTheTopTwo) {
  using P = Polarity;
  auto probe = Profile("probe", Platform::kA, {Obs("a", P::kPositive), Obs("b", P::kPositive)});
  std::vector<UserProfile> candidates = {
      Profile("c3", Platform::kB, {Obs("z", P::kPositive)}),
      Profile("c1", Platform::kB, {Obs("a", P::kNegative), Obs("b", P::kNegative)}),
      Profile("c2", Platform::kB, {Obs("a", P::kPositive), Obs("c", P::kPositive)}),
  };
  // Hand-computed: phase one S_t = 0 (c3), 1/2 (c1), 1/4 (c2); phase two
  // S_s(c1) = 0 since no (topic, polarity) key is shared, S_s(c2) = 1/4.
  MatchParams params;
  params.model = Model::kTwoPhase;
  params.window = WindowSpec{365, 365};
  auto ranked = TwoPhaseRank(probe, candidates, params);
  ASSERT_EQ(ranked.size(), 3u);
  std::vector<std::string> order;
  for (const auto& e : ranked) order.push_back(e.id);
  EXPECT_EQ(order, (std::vector<std::string>{"c2", "c1", "c3"}));
  EXPECT_DOUBLE_EQ(ranked[1].phase1.value, std::log(0.5));
  EXPECT_DOUBLE_EQ(ranked[0].phase1.value, std::log(0.25));
  EXPECT_DOUBLE_EQ(ranked[0].phase2.value, std::log(0.25));
  EXPECT_TRUE(ranked[1].phase2.is_worst());

  params.shortlist = 2;
  ranked = TwoPhaseRank(probe, candidates, params);
  EXPECT_TRUE(ranked[0].shortlisted && ranked[1].shortlisted);
  EXPECT_FALSE(ranked[2].shortlisted);

  // Via ScoreAll and the pessimistic ranker, c2 ranks first and c1 second.
  auto scores = ScoreAll(probe, candidates, params);
  EXPECT_EQ(RankCandidates(scores, "c2").rank, 1);
  EXPECT_EQ(RankCandidates(scores, "c1").rank, 2);
  EXPECT_EQ(RankCandidates(scores, "c3").rank, 3);

  params.shortlist = 0;
  EXPECT_THROW(TwoPhaseRank(probe, candidates, params), ConfigError);
}

TEST(TwoPhaseTest, ShortlistBoundsTheFinalTop) {
  auto sets = Generate(GenSpec{.n_pairs = 30, .overlap = 0.3, .seed = 2});
  auto pairs = ExtractDataset(sets, ExtractConfig{}, SentimentLexicon::Default());
  std::vector<UserProfile> candidates;
  for (const auto& p : pairs) candidates.push_back(p.b);
  MatchParams params;
  params.model = Model::kTwoPhase;
  params.window = WindowSpec{120, 60};
  MatchParams topic = params;
  topic.model = Model::kTopicTemporal;
  for (const auto& p : pairs) {
    auto ranked = TwoPhaseRank(p.a, candidates, params);
    auto phase1 = ScoreAll(p.a, candidates, topic);
    std::vector<std::size_t> order(phase1.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
      return Outranks(phase1[x].score, phase1[y].score);
    });
    std::set<std::string> top10;
    for (std::size_t i = 0; i < 10; ++i) top10.insert(phase1[order[i]].id);
    std::set<std::string> final10;
    for (std::size_t i = 0; i < 10; ++i) final10.insert(ranked[i].id);
    EXPECT_EQ(final10, top10);
    for (std::size_t i = 10; i < ranked.size(); ++i) {
      EXPECT_EQ(ranked[i].id, phase1[order[i]].id);
    }
  }
}

TEST(DistanceScoreTest, WorkedExample) {
  TopicCounter a, b;
  a.Add("a");
  a.Add("b");
  b.Add("a");
  TopicSentiments sa{{"a", {0.2, 0.3, 0.5}}, {"b", {1, 0, 0}}};
  TopicSentiments sb{{"a", {0.2, 0.3, 0.5}}};
  auto s = DistanceScore(a, b, sa, sb, DistanceWeights{});
  EXPECT_DOUBLE_EQ(s.diagnostics.at("freq_distance"), 0.75);
  EXPECT_DOUBLE_EQ(s.value, -0.5625);
}

TEST(DistanceScoreTest, EmptySideScoresZero) {
  TopicCounter a;
  a.Add("a");
  EXPECT_EQ(DistanceScore(a, TopicCounter{}, {}, {}, DistanceWeights{}).value, 0.0);
  EXPECT_EQ(DistanceScore(TopicCounter{}, a, {}, {}, DistanceWeights{}).value, 0.0);
}

struct RandomDistanceInstance {
  std::vector<std::string> list_a, list_b;
  TopicCounter counter_a, counter_b;
  TopicSentiments sent_a, sent_b;
  std::map<std::string, oracle::Emotion> emo_a, emo_b;
};

RandomDistanceInstance MakeInstance(std::mt19937_64& rng) {
  RandomDistanceInstance r;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n_topics = 1 + static_cast<int>(rng() % 10);
  auto fill = [&](std::vector<std::string>& list, TopicCounter& counter,
                  TopicSentiments& sent, std::map<std::string, oracle::Emotion>& emo) {
    for (int t = 0; t < n_topics; ++t) {
      int count = static_cast<int>(rng() % 9);  // 0..8
      if (rng() % 3 == 0) count = 0;
      std::string topic = "t" + std::to_string(t);
      for (int i = 0; i < count; ++i) list.push_back(topic);
      if (count > 0) {
        counter.Add(topic, count);
        double x = u(rng), y = u(rng), z = u(rng);
        double s = x + y + z;
        sent[topic] = {x / s, y / s, z / s};
        emo[topic] = {x / s, y / s, z / s};
      }
    }
    std::shuffle(list.begin(), list.end(), rng);
  };
  fill(r.list_a, r.counter_a, r.sent_a, r.emo_a);
  fill(r.list_b, r.counter_b, r.sent_b, r.emo_b);
  return r;
}

TEST(DistanceScoreTest, MatchesPseudocodeInterpreter) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    auto r = MakeInstance(rng);
    DistanceWeights w{u(rng), u(rng), 1 + static_cast<std::int64_t>(rng() % 6),
                      1 + static_cast<std::int64_t>(rng() % 6)};
    if (trial % 2 == 0) w = DistanceWeights{};
    double expected = oracle::PseudocodeDistance(
        r.list_a, r.list_b, r.emo_a, r.emo_b, w.w1, w.w2,
        static_cast<int>(w.bonus_a), static_cast<int>(w.bonus_b));
    auto got = DistanceScore(r.counter_a, r.counter_b, r.sent_a, r.sent_b, w);
    ASSERT_NEAR(got.value, expected, 1e-12) << "trial " << trial;
  }
}

TEST(DistanceScoreTest, SymmetricWithEqualThresholds) {
  std::mt19937_64 rng(32);
  DistanceWeights w{0.75, 0.5, 3, 3};
  for (int trial = 0; trial < 500; ++trial) {
    auto r = MakeInstance(rng);
    EXPECT_NEAR(DistanceScore(r.counter_a, r.counter_b, r.sent_a, r.sent_b, w).value,
                DistanceScore(r.counter_b, r.counter_a, r.sent_b, r.sent_a, w).value,
                1e-15);
  }
}

TEST(DistanceScoreTest, SelfIsZeroAndMaximalWithoutBonus) {
  std::mt19937_64 rng(33);
  DistanceWeights w{0.75, 0.5, 1000, 1000};
  for (int trial = 0; trial < 200; ++trial) {
    auto probe = MakeInstance(rng);
    if (probe.counter_a.empty()) continue;
    EXPECT_EQ(DistanceScore(probe.counter_a, probe.counter_a, probe.sent_a,
                            probe.sent_a, w).value,
              0.0);
    for (int k = 0; k < 10; ++k) {
      auto other = MakeInstance(rng);
      EXPECT_LE(DistanceScore(probe.counter_a, other.counter_b, probe.sent_a,
                              other.sent_b, w).value,
                0.0);
    }
  }
}

TEST(ScorePairTest, OrientsDistanceThresholdsByPlatform) {
  // Only side A meets 5 and only side B meets 3 in one orientation.
  std::vector<TopicObservation> many(5, Obs("t")), few(3, Obs("t"));
  few.push_back(Obs("u"));
  auto a = MakeUserProfile("a", Platform::kA, many);
  auto b = MakeUserProfile("b", Platform::kB, few);
  MatchParams params;
  params.model = Model::kDistance;
  auto forward = ScorePair(a, b, params);
  auto backward = ScorePair(b, a, params);
  EXPECT_EQ(forward.value, backward.value);
  EXPECT_EQ(forward.diagnostics.at("bonus_topics"), 1.0);
  params.model = Model::kTwoPhase;
  EXPECT_THROW(ScorePair(a, b, params), ConfigError);
}

TEST(ScorePairTest, EmptyProfilesScoreWorst) {
  auto empty = MakeUserProfile("e", Platform::kB, {});
  auto full = MakeUserProfile("f", Platform::kA, {Obs("x")});
  for (Model m : {Model::kTopicNT, Model::kSentimentNT, Model::kCombined,
                  Model::kTopicTemporal, Model::kSentimentTemporal}) {
    MatchParams params;
    params.model = m;
    EXPECT_TRUE(ScorePair(full, empty, params).is_worst()) << ModelName(m);
  }
  MatchParams distance;
  distance.model = Model::kDistance;
  EXPECT_EQ(ScorePair(full, empty, distance).value, 0.0);
}

TEST(ScoreAllTest, PermutationAndWorkerInvariance) {
  auto sets = Generate(GenSpec{.n_pairs = 50, .seed = 9});
  auto pairs = ExtractDataset(sets, ExtractConfig{}, SentimentLexicon::Default());
  std::vector<UserProfile> candidates;
  for (const auto& p : pairs) candidates.push_back(p.b);
  std::vector<UserProfile> shuffled = candidates;
  std::mt19937_64 rng(1);
  std::shuffle(shuffled.begin(), shuffled.end(), rng);

  for (Model m : {Model::kTopicNT, Model::kSentimentNT, Model::kCombined,
                  Model::kTopicTemporal, Model::kSentimentTemporal,
                  Model::kTwoPhase, Model::kDistance}) {
    MatchParams params;
    params.model = m;
    params.window = WindowSpec{90, 30};
    for (std::size_t probe = 0; probe < pairs.size(); probe += 7) {
      auto serial = ScoreAll(pairs[probe].a, candidates, params, 1);
      auto parallel = ScoreAll(pairs[probe].a, candidates, params, 4);
      auto permuted = ScoreAll(pairs[probe].a, shuffled, params, 3);
      ASSERT_EQ(serial.size(), candidates.size());
      std::map<std::string, ModelScore> by_id;
      for (std::size_t i = 0; i < serial.size(); ++i) {
        EXPECT_EQ(serial[i].id, candidates[i].id);
        EXPECT_EQ(serial[i].id, parallel[i].id);
        EXPECT_TRUE(RanksEqual(serial[i].score, parallel[i].score));
        EXPECT_TRUE(serial[i].score.is_worst() ||
                    std::isfinite(serial[i].score.value));
        by_id[serial[i].id] = serial[i].score;
      }
      // Two-phase breaks ties at the shortlist cut by input order, so only
      // the per-pair models are order independent.
      if (m == Model::kTwoPhase) continue;
      for (const auto& c : permuted) {
        EXPECT_TRUE(RanksEqual(c.score, by_id.at(c.id))) << ModelName(m);
      }
    }
  }
}

TEST(MatchParamsTest, Validation) {
  MatchParams p;
  p.model = Model::kCombined;
  p.w1 = 0.75;
  p.w2 = 0.5;
  EXPECT_THROW(p.Validate(), ConfigError);
  p.model = Model::kDistance;
  EXPECT_NO_THROW(p.Validate());
  p.model = Model::kTopicTemporal;
  p.window = WindowSpec{10, 20};
  EXPECT_THROW(p.Validate(), ConfigError);
  p.window = WindowSpec{20, 10};
  p.epsilon = 0;
  EXPECT_THROW(p.Validate(), ConfigError);
}

}  // namespace
}  // namespace idmatch

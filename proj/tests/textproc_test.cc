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

#include "idmatch/textproc.h"

#include <gtest/gtest.h>

#include <random>

#include "idmatch/errors.h"

namespace idmatch {
namespace {

ExtractConfig DefaultConfig() { return ExtractConfig{}; }

TEST(ExtractTopicsTest, TitanicSentence) {
  auto topics =
      ExtractTopics("The Titanic was interesting but lengthy", DefaultConfig());
  ASSERT_EQ(topics.size(), 1u);
  EXPECT_EQ(topics[0].topic, "titanic");
  EXPECT_EQ(topics[0].related_words, (WordSet{"interesting", "lengthy"}));
}

TEST(ExtractTopicsTest, EmptyText) {
  EXPECT_TRUE(ExtractTopics("", DefaultConfig()).empty());
  EXPECT_TRUE(ExtractTopics(" ... !? ", DefaultConfig()).empty());
}

TEST(ExtractTopicsTest, TwoTopicsInOneSentence) {
  // Hand-applied rules: "I" is sentence-initial and a stopword; "Paris" and
  // "Rome" are capitalized mid-sentence; "and" is a stopword; the remaining
  // tokens "visited" and "today" are the related words of both topics.
  auto topics = ExtractTopics("I visited Paris and Rome today", DefaultConfig());
  ASSERT_EQ(topics.size(), 2u);
  EXPECT_EQ(topics[0].topic, "paris");
  EXPECT_EQ(topics[1].topic, "rome");
  for (const auto& t : topics) {
    EXPECT_EQ(t.related_words, (WordSet{"visited", "today"}));
    EXPECT_FALSE(t.related_words.contains(t.topic));
  }
}

TEST(ExtractTopicsTest, SentenceInitialCapitalIsNotATopic) {
  auto topics = ExtractTopics("Movies are fun. Cats like the Sun!", DefaultConfig());
  ASSERT_EQ(topics.size(), 1u);
  EXPECT_EQ(topics[0].topic, "sun");
  EXPECT_EQ(topics[0].related_words, (WordSet{"cats", "like"}));
}

TEST(ExtractTopicsTest, NounLexiconAndBlocklist) {
  ExtractConfig config;
  config.noun_lexicon = {"titanic", "ship"};
  auto topics = ExtractTopics("the titanic was a big ship", config);
  ASSERT_EQ(topics.size(), 2u);
  EXPECT_EQ(topics[0].topic, "titanic");
  EXPECT_EQ(topics[1].topic, "ship");
  EXPECT_EQ(topics[0].related_words, (WordSet{"big"}));

  config.stopwords.insert("titanic");
  topics = ExtractTopics("the titanic was a big ship", config);
  ASSERT_EQ(topics.size(), 1u);
  EXPECT_EQ(topics[0].topic, "ship");
  EXPECT_EQ(topics[0].related_words, (WordSet{"big"}));
}

TEST(ExtractTopicsTest, RepeatedTopicCountsOncePerSentence) {
  auto topics = ExtractTopics("so the Cake and the Cake again", DefaultConfig());
  ASSERT_EQ(topics.size(), 1u);
  EXPECT_EQ(topics[0].topic, "cake");
}

TEST(ExtractTopicsTest, NearbyScopeLimitsRelatedWords) {
  ExtractConfig config;
  config.scope = SentimentScope::kNearby;
  config.nearby_radius = 3;
  // positions: 0 yesterday 1 Paris 2 great 3 food 4 was 5 slow 6 awful
  // 7 service 8 London 9 terrible
  auto topics = ExtractTopics(
      "yesterday Paris great food was slow awful service London terrible",
      config);
  ASSERT_EQ(topics.size(), 2u);
  EXPECT_EQ(topics[0].topic, "paris");
  EXPECT_EQ(topics[0].related_words, (WordSet{"yesterday", "great", "food"}));
  EXPECT_EQ(topics[1].topic, "london");
  EXPECT_EQ(topics[1].related_words,
            (WordSet{"slow", "awful", "service", "terrible"}));
}

TEST(ExtractTopicsTest, PunctuationApostrophesAndUnicode) {
  auto sentences = Tokenize("Don't stop, Zoë! Caf\xc3\xa9 time?");
  ASSERT_EQ(sentences.size(), 2u);
  ASSERT_EQ(sentences[0].size(), 3u);
  EXPECT_EQ(sentences[0][0].word, "dont");
  EXPECT_EQ(sentences[0][2].word, "zo\xc3\xab");
  EXPECT_TRUE(sentences[0][2].capitalized);
  EXPECT_EQ(sentences[1][0].word, "caf\xc3\xa9");
}

TEST(ExtractTopicsTest, InvalidUtf8IsSkippedAndCounted) {
  TextStats stats;
  auto topics = ExtractTopics("the Ti\xfftanic was \xc3 great", DefaultConfig(),
                              &stats);
  EXPECT_EQ(stats.invalid_bytes, 2u);
  ASSERT_EQ(topics.size(), 1u);
  EXPECT_EQ(topics[0].topic, "titanic");
}

TEST(ExtractTopicsTest, LowercasedRenderingIsStableWithNounLexicon) {
  const std::string text =
      "We saw Paris in May. The Louvre was crowded but wonderful! Rome next?";
  auto original = ExtractTopics(text, DefaultConfig());
  ExtractConfig with_nouns;
  for (const auto& t : original) with_nouns.noun_lexicon.insert(t.topic);

  std::string lower = text;
  for (auto& c : lower) c = static_cast<char>(std::tolower(c));
  EXPECT_EQ(ExtractTopics(lower, with_nouns), original);
  EXPECT_EQ(ExtractTopics(text, with_nouns), original);
}

TEST(ExtractTopicsTest, RelatedWordsAreSentenceTokensMinusStopwordsAndTopics) {
  std::mt19937 rng(99);
  const std::vector<std::string> words = {
      "The", "Movie", "was", "great", "and", "Paris", "boring", "I",
      "liked", "the", "Food", "today", "but", "bad", "very", "Cats"};
  const ExtractConfig config = DefaultConfig();
  for (int trial = 0; trial < 300; ++trial) {
    std::string sentence;
    int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) {
      sentence += words[rng() % words.size()];
      sentence += ' ';
    }
    auto topics = ExtractTopics(sentence, config);
    auto tokens = Tokenize(sentence);
    ASSERT_LE(tokens.size(), 1u);
    if (tokens.empty()) continue;
    WordSet topic_set;
    for (const auto& t : topics) topic_set.insert(t.topic);
    WordSet expected;
    for (const auto& tok : tokens[0]) {
      if (!config.stopwords.contains(tok.word) && !topic_set.contains(tok.word)) {
        expected.insert(tok.word);
      }
    }
    for (const auto& t : topics) {
      EXPECT_FALSE(t.topic.empty());
      EXPECT_FALSE(config.stopwords.contains(t.topic));
      EXPECT_EQ(t.related_words, expected) << sentence;
    }
    // Determinism.
    EXPECT_EQ(ExtractTopics(sentence, config), topics);
  }
}

// Independent normalization: each word is (polarity mass, neutral mass).
SentimentScore OracleScore(const std::vector<std::optional<double>>& bag) {
  double pos = 0, neg = 0, neu = 0;
  for (const auto& v : bag) {
    if (!v.has_value()) {
      neu += 1;
    } else if (*v > 0) {
      pos += *v;
    } else {
      neg += -*v;
    }
  }
  if (pos + neg + neu == 0) return {0, 0, 1};
  return {pos / (pos + neg + neu), neg / (pos + neg + neu),
          neu / (pos + neg + neu)};
}

TEST(ScoreSentimentTest, EmptyBagIsNeutral) {
  auto s = ScoreSentiment(WordSet{}, SentimentLexicon::Default());
  EXPECT_EQ(s, (SentimentScore{0, 0, 1}));
}

TEST(ScoreSentimentTest, SingleFullyPositiveWord) {
  SentimentLexicon lex({{"superb", 1.0}});
  EXPECT_EQ(ScoreSentiment(WordSet{"superb"}, lex), (SentimentScore{1, 0, 0}));
}

TEST(ScoreSentimentTest, MixedBag) {
  SentimentLexicon lex({{"interesting", 0.6}, {"lengthy", -0.2}});
  auto s = ScoreSentiment(WordSet{"interesting", "lengthy", "film"}, lex);
  auto oracle = OracleScore({0.6, -0.2, std::nullopt});
  EXPECT_NEAR(s.pos, oracle.pos, 1e-15);
  EXPECT_NEAR(s.neg, oracle.neg, 1e-15);
  EXPECT_NEAR(s.neu, oracle.neu, 1e-15);
  EXPECT_NEAR(s.pos, 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.neg, 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(s.neu, 5.0 / 9.0, 1e-12);
  EXPECT_GT(s.pos, s.neg);
  EXPECT_GT(s.neg, 0.0);
  EXPECT_GT(s.neu, 0.0);
}

TEST(ScoreSentimentTest, RandomBagsStayOnSimplexAndAreMonotone) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> valence(-1.0, 1.0);
  std::map<std::string, double> entries;
  for (int i = 0; i < 40; ++i) entries["w" + std::to_string(i)] = valence(rng);
  entries["up"] = 0.7;
  SentimentLexicon lex(entries);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::string> bag;
    std::vector<std::optional<double>> oracle_bag;
    int n = static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      int k = static_cast<int>(rng() % 50);  // 40..49 are out of lexicon
      std::string w = "w" + std::to_string(k);
      bag.push_back(w);
      oracle_bag.push_back(k < 40 ? std::optional<double>(entries[w])
                                  : std::nullopt);
    }
    auto s = ScoreSentiment(bag, lex);
    ASSERT_TRUE(IsOnSimplex(s)) << s.pos << " " << s.neg << " " << s.neu;
    auto o = OracleScore(oracle_bag);
    EXPECT_NEAR(s.pos, o.pos, 1e-12);
    EXPECT_NEAR(s.neg, o.neg, 1e-12);

    bag.push_back("up");
    EXPECT_GE(ScoreSentiment(bag, lex).pos, s.pos);
  }
}

TEST(DominantPolarityTest, ArgmaxWithNeutralTies) {
  EXPECT_EQ(DominantPolarity({1, 0, 0}), Polarity::kPositive);
  EXPECT_EQ(DominantPolarity({0.4, 0.4, 0.2}), Polarity::kNeutral);
  EXPECT_EQ(DominantPolarity({0.2, 0.5, 0.3}), Polarity::kNegative);
  EXPECT_EQ(DominantPolarity({0.2, 0.3, 0.5}), Polarity::kNeutral);
  EXPECT_EQ(DominantPolarity({0.5, 0.0, 0.5}), Polarity::kNeutral);
  EXPECT_EQ(DominantPolarity({1.0 / 3, 1.0 / 3, 1.0 / 3}), Polarity::kNeutral);
}

TEST(DominantPolarityTest, MatchesBruteForceArgmax) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5000; ++i) {
    // Coarse grid so ties actually happen.
    int a = static_cast<int>(rng() % 5), b = static_cast<int>(rng() % 5),
        c = static_cast<int>(rng() % 5);
    if (a + b + c == 0) continue;
    double t = a + b + c;
    SentimentScore s{a / t, b / t, c / t};
    std::array<double, 3> v{s.pos, s.neg, s.neu};
    double best = *std::max_element(v.begin(), v.end());
    int winners = static_cast<int>(std::count(v.begin(), v.end(), best));
    Polarity expected = Polarity::kNeutral;
    if (winners == 1) {
      expected = static_cast<Polarity>(std::max_element(v.begin(), v.end()) -
                                       v.begin());
    }
    EXPECT_EQ(DominantPolarity(s), expected) << a << b << c;
  }
}

TEST(LexiconTest, ParseFileFormat) {
  auto lex = SentimentLexicon::Parse(
      "# comment\nGood\t0.5\n\nbad\t-0.75  # trailing\n", "mem");
  EXPECT_EQ(lex.size(), 2u);
  ASSERT_NE(lex.Find("good"), nullptr);
  EXPECT_DOUBLE_EQ(*lex.Find("good"), 0.5);
  EXPECT_DOUBLE_EQ(*lex.Find("bad"), -0.75);
  EXPECT_EQ(lex.Find("ugly"), nullptr);

  EXPECT_THROW(SentimentLexicon::Parse("good 0.5\n", "mem"), ParseError);
  EXPECT_THROW(SentimentLexicon::Parse("good\tabc\n", "mem"), ParseError);
  EXPECT_THROW(SentimentLexicon::Parse("good\t1.5\n", "mem"), ValidationError);
  EXPECT_THROW(SentimentLexicon::Parse("good\t0.1\ngood\t0.2\n", "mem"),
               ValidationError);
}

TEST(LexiconTest, DefaultLexiconIsValid) {
  auto lex = SentimentLexicon::Default();
  EXPECT_GT(lex.size(), 40u);
  ASSERT_NE(lex.Find("interesting"), nullptr);
  EXPECT_GT(*lex.Find("interesting"), 0);
  ASSERT_NE(lex.Find("lengthy"), nullptr);
  EXPECT_LT(*lex.Find("lengthy"), 0);
}

TEST(WordListTest, CommentsAndCase) {
  auto words = ParseWordList("# header\nThe\n  was \n\nbut # inline\n");
  EXPECT_EQ(words, (WordSet{"the", "was", "but"}));
  for (const char* w : {"the", "was", "but", "i", "and"}) {
    EXPECT_TRUE(DefaultStopwords().contains(w)) << w;
  }
}

TEST(ObservePostTest, AttachesSentimentAndTime) {
  PostRecord post{Platform::kA, "u", "The Titanic was interesting but lengthy.",
                  Timestamp{2014, 8, 31, 19, 19, 35}};
  auto obs = ObservePost(post, DefaultConfig(), SentimentLexicon::Default());
  ASSERT_EQ(obs.size(), 1u);
  EXPECT_EQ(obs[0].topic, "titanic");
  EXPECT_EQ(obs[0].time, post.time);
  EXPECT_TRUE(IsOnSimplex(obs[0].sentiment));
  EXPECT_EQ(DominantPolarity(obs[0].sentiment), Polarity::kPositive);
}

}  // namespace
}  // namespace idmatch

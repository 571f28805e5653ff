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

#ifndef IDMATCH_TEXTPROC_H_
#define IDMATCH_TEXTPROC_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idmatch/corpus.h"

namespace idmatch {

enum class Polarity { kPositive = 0, kNegative = 1, kNeutral = 2 };
inline constexpr std::array<Polarity, 3> kAllPolarities = {
    Polarity::kPositive, Polarity::kNegative, Polarity::kNeutral};
const char* PolarityName(Polarity p);

// (pos, neg, neu) on the probability simplex.
struct SentimentScore {
  double pos = 0.0;
  double neg = 0.0;
  double neu = 1.0;

  friend bool operator==(const SentimentScore&, const SentimentScore&) =
      default;
};

bool IsOnSimplex(const SentimentScore& s, double tol = 1e-9);

// Argmax component; any tie for the maximum resolves to kNeutral.
Polarity DominantPolarity(const SentimentScore& s);

using WordSet = std::set<std::string>;

// word -> valence in [-1, 1]. Words are stored lowercase.
class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  explicit SentimentLexicon(std::map<std::string, double> valences);

  // Small built-in English lexicon.
  static SentimentLexicon Default();
  // "word<TAB>valence" per line; '#' starts a comment.
  static SentimentLexicon Load(const std::filesystem::path& path);
  static SentimentLexicon Parse(std::string_view text, std::string_view source);

  const double* Find(std::string_view word) const;
  bool empty() const { return valences_.empty(); }
  std::size_t size() const { return valences_.size(); }

 private:
  std::map<std::string, double, std::less<>> valences_;
};

// pos/neg take the positive/negative valence mass of in-lexicon words, neu
// takes one unit per out-of-lexicon word; the three are normalized to sum
// to one. An empty bag (or one with no mass at all) is fully neutral.
SentimentScore ScoreSentiment(const std::vector<std::string>& words,
                              const SentimentLexicon& lexicon);
SentimentScore ScoreSentiment(const WordSet& words,
                              const SentimentLexicon& lexicon);

// One word per line, '#' comments, blank lines ignored.
WordSet ParseWordList(std::string_view text);
WordSet LoadWordList(const std::filesystem::path& path);
// Pronouns, auxiliaries, articles, conjunctions, common prepositions.
const WordSet& DefaultStopwords();

enum class SentimentScope {
  kSentence,  // every topic of a sentence shares the sentence's bag
  kNearby,    // only words within `nearby_radius` tokens of the topic
};

struct ExtractConfig {
  WordSet stopwords = DefaultStopwords();
  // Lowercase nouns always accepted as topics, capitalized or not.
  WordSet noun_lexicon;
  SentimentScope scope = SentimentScope::kSentence;
  int nearby_radius = 3;
};

struct Token {
  std::string word;  // lowercased
  bool capitalized = false;
  int position = 0;  // index within the sentence
};

struct TextStats {
  std::size_t invalid_bytes = 0;
};

// Sentences split on . ! ?; words are maximal runs of letters, digits and
// non-ASCII UTF-8 sequences, with apostrophes removed. Invalid UTF-8 bytes
// are skipped and counted in `stats`.
std::vector<std::vector<Token>> Tokenize(std::string_view text,
                                         TextStats* stats = nullptr);

struct SentenceTopic {
  std::string topic;
  WordSet related_words;

  friend bool operator==(const SentenceTopic&, const SentenceTopic&) = default;
};

// Candidate topics per sentence are capitalized non-initial tokens or
// tokens in the noun lexicon, minus stopwords. Related words are the
// sentence's remaining non-stopword, non-topic tokens.
std::vector<SentenceTopic> ExtractTopics(std::string_view text,
                                         const ExtractConfig& config,
                                         TextStats* stats = nullptr);

struct TopicObservation {
  std::string topic;
  WordSet related_words;
  SentimentScore sentiment;
  Timestamp time;
};

std::vector<TopicObservation> ObservePost(const PostRecord& post,
                                          const ExtractConfig& config,
                                          const SentimentLexicon& lexicon,
                                          TextStats* stats = nullptr);

std::vector<TopicObservation> ObservePosts(const std::vector<PostRecord>& posts,
                                           const ExtractConfig& config,
                                           const SentimentLexicon& lexicon,
                                           TextStats* stats = nullptr);

}  // namespace idmatch

#endif  // IDMATCH_TEXTPROC_H_

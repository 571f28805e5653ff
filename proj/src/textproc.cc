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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "idmatch/errors.h"
#include "idmatch/invariants.h"

namespace idmatch {
namespace {

std::string_view Trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

bool IsAsciiWordChar(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

// Length of a well-formed UTF-8 multi-byte sequence at s[i], or 0.
std::size_t Utf8SequenceLength(std::string_view s, std::size_t i) {
  auto c = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  if (c >= 0xC2 && c <= 0xDF) {
    len = 2;
  } else if (c >= 0xE0 && c <= 0xEF) {
    len = 3;
  } else if (c >= 0xF0 && c <= 0xF4) {
    len = 4;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    auto cc = static_cast<unsigned char>(s[i + k]);
    if ((cc & 0xC0) != 0x80) return 0;
  }
  return len;
}

bool IsSentenceEnd(char c) { return c == '.' || c == '!' || c == '?'; }

constexpr const char* kDefaultStopwords[] = {
    // articles, determiners
    "a", "an", "the", "this", "that", "these", "those", "some", "any", "each",
    "every", "all", "both",
    // pronouns
    "i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "you",
    "your", "yours", "he", "him", "his", "she", "her", "hers", "it", "its",
    "they", "them", "their", "theirs", "who", "whom", "whose", "which", "what",
    "im", "ive", "id", "youre", "thats",
    // auxiliaries
    "am", "is", "are", "was", "were", "be", "been", "being", "have", "has",
    "had", "having", "do", "does", "did", "will", "would", "shall", "should",
    "can", "could", "may", "might", "must",
    // conjunctions
    "and", "but", "or", "nor", "so", "yet", "because", "if", "then", "than",
    "while", "as",
    // prepositions
    "in", "on", "at", "to", "of", "for", "with", "by", "from", "about",
    "into", "over", "after", "before", "up", "down", "out", "off", "through",
    // misc function words
    "there", "here", "now", "yes", "just", "also", "too", "very", "such",
    "again", "when", "where", "how", "why",
};

constexpr std::pair<const char*, double> kDefaultLexicon[] = {
    {"amazing", 0.8},      {"awesome", 0.8},     {"beautiful", 0.7},
    {"best", 0.8},         {"better", 0.5},      {"brilliant", 0.8},
    {"cool", 0.4},         {"enjoy", 0.6},       {"enjoyed", 0.6},
    {"excellent", 0.9},    {"excited", 0.6},     {"fantastic", 0.8},
    {"fine", 0.2},         {"fun", 0.6},         {"glad", 0.5},
    {"good", 0.5},         {"great", 0.7},       {"happy", 0.7},
    {"interesting", 0.6},  {"like", 0.3},        {"liked", 0.3},
    {"love", 0.8},         {"loved", 0.8},       {"nice", 0.5},
    {"perfect", 0.9},      {"pleasant", 0.5},    {"superb", 0.9},
    {"thanks", 0.4},       {"win", 0.6},         {"wonderful", 0.8},
    {"angry", -0.7},       {"annoying", -0.6},   {"awful", -0.8},
    {"bad", -0.6},         {"boring", -0.5},     {"broken", -0.5},
    {"disappointing", -0.6}, {"dislike", -0.5},  {"fail", -0.6},
    {"failed", -0.6},      {"hate", -0.8},       {"hated", -0.8},
    {"horrible", -0.9},    {"lengthy", -0.2},    {"lose", -0.5},
    {"mediocre", -0.3},    {"poor", -0.5},       {"sad", -0.6},
    {"slow", -0.3},        {"stupid", -0.7},     {"terrible", -0.9},
    {"ugly", -0.6},        {"unfair", -0.5},     {"worse", -0.6},
    {"worst", -0.9},       {"wrong", -0.5},
};

}  // namespace

const char* PolarityName(Polarity p) {
  switch (p) {
    case Polarity::kPositive:
      return "positive";
    case Polarity::kNegative:
      return "negative";
    case Polarity::kNeutral:
      return "neutral";
  }
  return "?";
}

bool IsOnSimplex(const SentimentScore& s, double tol) {
  return s.pos >= 0.0 && s.neg >= 0.0 && s.neu >= 0.0 &&
         std::abs(s.pos + s.neg + s.neu - 1.0) <= tol;
}

Polarity DominantPolarity(const SentimentScore& s) {
  if (s.pos > s.neg && s.pos > s.neu) return Polarity::kPositive;
  if (s.neg > s.pos && s.neg > s.neu) return Polarity::kNegative;
  return Polarity::kNeutral;
}

SentimentLexicon::SentimentLexicon(std::map<std::string, double> valences) {
  for (auto& [word, v] : valences) {
    if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
      throw ValidationError("lexicon valence for '" + word +
                            "' outside [-1, 1]");
    }
    valences_.emplace(ToLower(word), v);
  }
}

SentimentLexicon SentimentLexicon::Default() {
  std::map<std::string, double> m;
  for (const auto& [w, v] : kDefaultLexicon) m.emplace(w, v);
  return SentimentLexicon(std::move(m));
}

SentimentLexicon SentimentLexicon::Parse(std::string_view text,
                                         std::string_view source) {
  std::map<std::string, double> m;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    auto where = [&] {
      return std::string(source) + ":" + std::to_string(line_no);
    };
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError(where() + ": expected word<TAB>valence");
    }
    std::string word = ToLower(Trim(line.substr(0, tab)));
    std::string_view num = Trim(line.substr(tab + 1));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (word.empty() || ec != std::errc() || ptr != num.data() + num.size()) {
      throw ParseError(where() + ": malformed entry");
    }
    if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
      throw ValidationError(where() + ": valence outside [-1, 1]");
    }
    if (!m.emplace(word, v).second) {
      throw ValidationError(where() + ": duplicate word '" + word + "'");
    }
    if (nl == text.size()) break;
  }
  return SentimentLexicon(std::move(m));
}

SentimentLexicon SentimentLexicon::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path), path.string());
}

const double* SentimentLexicon::Find(std::string_view word) const {
  auto it = valences_.find(word);
  return it == valences_.end() ? nullptr : &it->second;
}

template <typename Range>
static SentimentScore ScoreBag(const Range& words,
                               const SentimentLexicon& lexicon) {
  double pos = 0.0, neg = 0.0, neu = 0.0;
  for (const auto& w : words) {
    if (const double* v = lexicon.Find(w)) {
      if (*v > 0) pos += *v;
      if (*v < 0) neg -= *v;
    } else {
      neu += 1.0;
    }
  }
  double total = pos + neg + neu;
  if (total <= 0.0) return SentimentScore{};
  SentimentScore out{pos / total, neg / total, neu / total};
  invariants::Check(IsOnSimplex(out), "sentiment score on the simplex");
  return out;
}

SentimentScore ScoreSentiment(const std::vector<std::string>& words,
                              const SentimentLexicon& lexicon) {
  return ScoreBag(words, lexicon);
}

SentimentScore ScoreSentiment(const WordSet& words,
                              const SentimentLexicon& lexicon) {
  return ScoreBag(words, lexicon);
}

WordSet ParseWordList(std::string_view text) {
  WordSet out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (!line.empty()) out.insert(ToLower(line));
  }
  return out;
}

WordSet LoadWordList(const std::filesystem::path& path) {
  return ParseWordList(ReadFile(path));
}

const WordSet& DefaultStopwords() {
  static const WordSet kWords(std::begin(kDefaultStopwords),
                              std::end(kDefaultStopwords));
  return kWords;
}

std::vector<std::vector<Token>> Tokenize(std::string_view text,
                                         TextStats* stats) {
  std::vector<std::vector<Token>> sentences;
  std::vector<Token> current;
  std::string word;
  bool capitalized = false;

  auto flush_word = [&] {
    if (word.empty()) return;
    Token t;
    t.word = ToLower(word);
    t.capitalized = capitalized;
    t.position = static_cast<int>(current.size());
    current.push_back(std::move(t));
    word.clear();
    capitalized = false;
  };
  auto flush_sentence = [&] {
    flush_word();
    if (!current.empty()) sentences.push_back(std::move(current));
    current.clear();
  };

  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    if (IsAsciiWordChar(c)) {
      if (word.empty()) capitalized = (c >= 'A' && c <= 'Z');
      word.push_back(static_cast<char>(c));
      ++i;
    } else if (c == '\'' && !word.empty()) {
      ++i;  // "don't" -> "dont"
    } else if (c >= 0x80) {
      std::size_t len = Utf8SequenceLength(text, i);
      if (len == 0) {
        if (stats) ++stats->invalid_bytes;
        ++i;
      } else {
        word.append(text.substr(i, len));
        i += len;
      }
    } else if (IsSentenceEnd(static_cast<char>(c))) {
      flush_sentence();
      ++i;
    } else {
      flush_word();
      ++i;
    }
  }
  flush_sentence();
  return sentences;
}

std::vector<SentenceTopic> ExtractTopics(std::string_view text,
                                         const ExtractConfig& config,
                                         TextStats* stats) {
  std::vector<SentenceTopic> out;
  for (const auto& sentence : Tokenize(text, stats)) {
    std::vector<const Token*> topics;
    WordSet topic_words;
    for (const auto& tok : sentence) {
      if (config.stopwords.contains(tok.word)) continue;
      bool noun = (tok.capitalized && tok.position > 0) ||
                  config.noun_lexicon.contains(tok.word);
      if (noun && topic_words.insert(tok.word).second) {
        topics.push_back(&tok);
      }
    }
    if (topics.empty()) continue;

    auto is_related = [&](const Token& tok) {
      return !config.stopwords.contains(tok.word) &&
             !topic_words.contains(tok.word);
    };
    WordSet sentence_bag;
    for (const auto& tok : sentence) {
      if (is_related(tok)) sentence_bag.insert(tok.word);
    }
    for (const Token* topic : topics) {
      SentenceTopic st;
      st.topic = topic->word;
      if (config.scope == SentimentScope::kSentence) {
        st.related_words = sentence_bag;
      } else {
        for (const auto& tok : sentence) {
          if (std::abs(tok.position - topic->position) <=
                  config.nearby_radius &&
              is_related(tok)) {
            st.related_words.insert(tok.word);
          }
        }
      }
      out.push_back(std::move(st));
    }
  }
  return out;
}

std::vector<TopicObservation> ObservePost(const PostRecord& post,
                                          const ExtractConfig& config,
                                          const SentimentLexicon& lexicon,
                                          TextStats* stats) {
  std::vector<TopicObservation> out;
  for (auto& st : ExtractTopics(post.text, config, stats)) {
    TopicObservation obs;
    obs.sentiment = ScoreSentiment(st.related_words, lexicon);
    obs.topic = std::move(st.topic);
    obs.related_words = std::move(st.related_words);
    obs.time = post.time;
    out.push_back(std::move(obs));
  }
  return out;
}

std::vector<TopicObservation> ObservePosts(const std::vector<PostRecord>& posts,
                                           const ExtractConfig& config,
                                           const SentimentLexicon& lexicon,
                                           TextStats* stats) {
  std::vector<TopicObservation> out;
  for (const auto& post : posts) {
    auto obs = ObservePost(post, config, lexicon, stats);
    std::move(obs.begin(), obs.end(), std::back_inserter(out));
  }
  return out;
}

}  // namespace idmatch

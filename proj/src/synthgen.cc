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

#include "idmatch/synthgen.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>

#include "idmatch/errors.h"
#include "json.hpp"

namespace idmatch {
namespace {

constexpr std::array<const char*, 16> kSyllables = {
    "ba", "ko", "ri", "mu", "te", "lo", "ne", "si",
    "da", "vu", "pe", "zo", "ga", "hi", "fu", "ja"};

// All of these are default stopwords, so they never become related words.
constexpr std::array<const char*, 5> kFillers = {"So the", "And the",
                                                 "Now the", "Then the",
                                                 "Yes the"};
constexpr std::array<const char*, 3> kVerbs = {"was", "is", "has been"};

// Entries of the default sentiment lexicon.
constexpr std::array<const char*, 6> kPositiveWords = {
    "great", "good", "wonderful", "love", "excellent", "amazing"};
constexpr std::array<const char*, 6> kNegativeWords = {
    "bad", "terrible", "awful", "hate", "poor", "horrible"};
// Outside the lexicon and the stopword list: pure neutral mass.
constexpr std::array<const char*, 5> kNeutralWords = {"today", "noted",
                                                      "seen", "around",
                                                      "listed"};

enum class Stance { kPositive = 0, kNegative = 1, kNeutral = 2 };

template <typename Array>
const char* Pick(SynthRng& rng, const Array& words) {
  return words[static_cast<std::size_t>(
      rng.UniformInt(0, static_cast<std::int64_t>(words.size()) - 1))];
}

Stance RandomStance(SynthRng& rng) {
  return static_cast<Stance>(rng.UniformInt(0, 2));
}

struct PairLatent {
  std::vector<int> interests;       // topic indices
  std::vector<double> cumulative;   // cumulative interest weights
  std::vector<Stance> stances;      // per interest
  int active_hour = 12;
};

PairLatent DrawLatent(SynthRng& rng, const GenSpec& spec) {
  PairLatent latent;
  // Partial Fisher-Yates over topic indices.
  std::vector<int> pool(static_cast<std::size_t>(spec.vocab));
  std::iota(pool.begin(), pool.end(), 0);
  for (int j = 0; j < spec.interests; ++j) {
    auto pick = rng.UniformInt(j, spec.vocab - 1);
    std::swap(pool[static_cast<std::size_t>(j)],
              pool[static_cast<std::size_t>(pick)]);
    latent.interests.push_back(pool[static_cast<std::size_t>(j)]);
  }
  // Zipf weights 1/(rank+1).
  double acc = 0.0;
  for (int j = 0; j < spec.interests; ++j) {
    acc += 1.0 / (j + 1);
    latent.cumulative.push_back(acc);
  }
  for (auto& c : latent.cumulative) c /= acc;
  for (int j = 0; j < spec.interests; ++j) {
    latent.stances.push_back(RandomStance(rng));
  }
  latent.active_hour = static_cast<int>(rng.UniformInt(0, 23));
  return latent;
}

std::string RenderSentence(SynthRng& rng, const std::string& topic,
                           Stance stance) {
  std::string text = Pick(rng, kFillers);
  text += ' ';
  text += topic;
  text += ' ';
  text += Pick(rng, kVerbs);
  text += ' ';
  switch (stance) {
    case Stance::kPositive:
      text += Pick(rng, kPositiveWords);
      break;
    case Stance::kNegative:
      text += Pick(rng, kNegativeWords);
      break;
    case Stance::kNeutral:
      text += Pick(rng, kNeutralWords);
      break;
  }
  text += '.';
  return text;
}

Timestamp DrawTime(SynthRng& rng, const GenSpec& spec, int active_hour) {
  const long long origin = EpochSeconds(spec.origin);
  long long offset = 0;
  if (spec.diurnal) {
    long long day = rng.UniformInt(0, spec.span_days - 1);
    long long hour = (active_hour + rng.UniformInt(-2, 2) + 24) % 24;
    long long minute = rng.UniformInt(0, 59);
    long long second = rng.UniformInt(0, 59);
    offset = day * 86400 + hour * 3600 + minute * 60 + second;
  } else {
    offset = rng.UniformInt(0, static_cast<std::int64_t>(spec.span_days) * 86400);
  }
  return TimestampFromEpochSeconds(origin + offset);
}

std::vector<PostRecord> DrawPosts(SynthRng& rng, const GenSpec& spec,
                                  const PairLatent& latent, Platform platform,
                                  const std::string& user) {
  const auto n = rng.UniformInt(spec.posts_min, spec.posts_max);
  std::vector<PostRecord> posts;
  posts.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    int topic = 0;
    Stance stance = Stance::kNeutral;
    if (rng.NextDouble() < spec.overlap) {
      double u = rng.NextDouble();
      auto it = std::upper_bound(latent.cumulative.begin(),
                                 latent.cumulative.end(), u);
      auto j = std::min<std::size_t>(
          static_cast<std::size_t>(it - latent.cumulative.begin()),
          latent.interests.size() - 1);
      topic = latent.interests[j];
      stance = latent.stances[j];
      if (platform == Platform::kB && rng.NextDouble() >= spec.sentiment_corr) {
        stance = RandomStance(rng);
      }
    } else {
      topic = static_cast<int>(rng.UniformInt(0, spec.vocab - 1));
      stance = RandomStance(rng);
    }
    PostRecord post;
    post.platform = platform;
    post.user_id = user;
    post.text = RenderSentence(rng, TopicWord(topic, spec.vocab), stance);
    post.time = DrawTime(rng, spec, latent.active_hour);
    posts.push_back(std::move(post));
  }
  std::stable_sort(posts.begin(), posts.end(),
                   [](const PostRecord& x, const PostRecord& y) {
                     return x.time < y.time;
                   });
  return posts;
}

}  // namespace

void GenSpec::Validate() const {
  auto fail = [](const std::string& what) { throw ValidationError(what); };
  if (n_pairs < 2) fail("n_pairs must be >= 2");
  if (posts_min < 1) fail("posts_min must be >= 1");
  if (posts_max < posts_min) fail("posts_max must be >= posts_min");
  if (vocab < 1) fail("vocab must be >= 1");
  if (interests < 1 || interests > vocab) {
    fail("interests must be in [1, vocab]");
  }
  if (!(overlap >= 0.0 && overlap <= 1.0)) fail("overlap must be in [0, 1]");
  if (!(sentiment_corr >= 0.0 && sentiment_corr <= 1.0)) {
    fail("sentiment_corr must be in [0, 1]");
  }
  if (span_days < 1) fail("span_days must be >= 1");
  ValidateTimestamp(origin);
}

double SynthRng::NextDouble() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::int64_t SynthRng::UniformInt(std::int64_t lo, std::int64_t hi) {
  if (hi <= lo) return lo;
  const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - (kMax % range + 1) % range;
  std::uint64_t x = engine_();
  while (x > limit) x = engine_();
  return lo + static_cast<std::int64_t>(x % range);
}

std::string TopicWord(int index, int vocab) {
  int syllables = 3;
  for (long long cap = 16 * 16 * 16; cap < vocab; cap *= 16) ++syllables;
  std::string word;
  int v = index;
  for (int s = 0; s < syllables; ++s) {
    word.insert(0, kSyllables[static_cast<std::size_t>(v % 16)]);
    v /= 16;
  }
  word[0] = static_cast<char>(word[0] - 'a' + 'A');
  return word;
}

std::vector<ProfileSet> Generate(const GenSpec& spec) {
  spec.Validate();
  SynthRng rng(spec.seed);
  std::vector<ProfileSet> sets;
  sets.reserve(static_cast<std::size_t>(spec.n_pairs));
  for (int i = 0; i < spec.n_pairs; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "%04d", i + 1);
    ProfileSet set;
    set.pair_id = std::string("pair_") + id;
    PairLatent latent = DrawLatent(rng, spec);
    set.posts_a = DrawPosts(rng, spec, latent, Platform::kA,
                            std::string("a_user_") + id);
    set.posts_b = DrawPosts(rng, spec, latent, Platform::kB,
                            std::string("b_user_") + id);
    sets.push_back(std::move(set));
  }
  return sets;
}

std::string ManifestJson(const GenSpec& spec, std::size_t n_written) {
  nlohmann::ordered_json doc;
  doc["generator"] = "idmatch-synth";
  doc["rng"] = "mt19937_64";
  doc["seed"] = spec.seed;
  doc["n_pairs"] = spec.n_pairs;
  doc["posts_min"] = spec.posts_min;
  doc["posts_max"] = spec.posts_max;
  doc["vocab"] = spec.vocab;
  doc["interests"] = spec.interests;
  doc["overlap"] = spec.overlap;
  doc["sentiment_corr"] = spec.sentiment_corr;
  doc["span_days"] = spec.span_days;
  doc["diurnal"] = spec.diurnal;
  doc["origin"] = FormatTimestamp(spec.origin);
  doc["files"] = n_written;
  return doc.dump(2) + "\n";
}

void WriteDataset(const std::filesystem::path& dir,
                  const std::vector<ProfileSet>& sets, const GenSpec& spec) {
  std::filesystem::create_directories(dir);
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
  };
  for (const auto& set : sets) {
    write(dir / (set.pair_id + ".json"), SerializePairJson(set));
  }
  write(dir / "manifest.json", ManifestJson(spec, sets.size()));
}

}  // namespace idmatch

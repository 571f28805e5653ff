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

#ifndef IDMATCH_SYNTHGEN_H_
#define IDMATCH_SYNTHGEN_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "idmatch/corpus.h"

namespace idmatch {

struct GenSpec {
  int n_pairs = 50;
  int posts_min = 25;
  int posts_max = 40;
  int vocab = 200;      // topic universe size
  int interests = 8;    // shared interest topics per pair
  double overlap = 0.8;
  double sentiment_corr = 0.8;
  int span_days = 365;
  bool diurnal = true;
  std::uint64_t seed = 0;
  Timestamp origin{2014, 1, 1, 0, 0, 0};

  // Throws ValidationError.
  void Validate() const;
};

// Deterministic random source. Only the raw 64-bit outputs of
// std::mt19937_64 (fully specified by the standard) are used; the
// conversions below are fixed here rather than left to std distributions,
// whose algorithms vary between standard libraries.
class SynthRng {
 public:
  explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double NextDouble();
  // Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

// Capitalized pseudo-word for topic `index`; distinct for distinct indices.
std::string TopicWord(int index, int vocab);

// Each pair draws a weighted set of shared interest topics and a latent
// stance per interest. Every post picks a shared interest with probability
// `overlap` (else a uniform topic from the whole vocabulary), and renders
// as one templated sentence whose valence word follows the stance. Side B
// keeps the latent stance with probability `sentiment_corr`.
std::vector<ProfileSet> Generate(const GenSpec& spec);

std::string ManifestJson(const GenSpec& spec, std::size_t n_written);

// Writes <pair_id>.json per set plus manifest.json into `dir`.
void WriteDataset(const std::filesystem::path& dir,
                  const std::vector<ProfileSet>& sets, const GenSpec& spec);

}  // namespace idmatch

#endif  // IDMATCH_SYNTHGEN_H_

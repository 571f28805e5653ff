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

#ifndef IDMATCH_PROFILES_H_
#define IDMATCH_PROFILES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "idmatch/corpus.h"
#include "idmatch/textproc.h"

namespace idmatch {

// Multiset of topics. Zero counts are never stored.
class TopicCounter {
 public:
  using Map = std::map<std::string, std::int64_t, std::less<>>;

  void Add(std::string_view topic, std::int64_t n = 1);
  std::int64_t Count(std::string_view topic) const;
  std::int64_t total() const { return total_; }
  bool empty() const { return total_ == 0; }
  const Map& counts() const { return counts_; }

  friend bool operator==(const TopicCounter&, const TopicCounter&) = default;

 private:
  Map counts_;
  std::int64_t total_ = 0;
};

TopicCounter BuildCounter(const std::vector<TopicObservation>& obs);

// topic -> probability; sums to one.
using TopicDistribution = std::map<std::string, double, std::less<>>;

// Throws DomainError("no topics") for an empty counter.
TopicDistribution MakeTopicDistribution(const TopicCounter& counter);

bool IsNormalized(const TopicDistribution& d, double tol = 1e-9);

using TopicPolarity = std::pair<std::string, Polarity>;

// Counts of (topic, dominant polarity).
class JointCounter {
 public:
  void Add(const std::string& topic, Polarity p, std::int64_t n = 1);
  std::int64_t total() const { return total_; }
  bool empty() const { return total_ == 0; }
  const std::map<TopicPolarity, std::int64_t>& counts() const {
    return counts_;
  }

 private:
  std::map<TopicPolarity, std::int64_t> counts_;
  std::int64_t total_ = 0;
};

JointCounter BuildJointCounter(const std::vector<TopicObservation>& obs);

struct JointDistribution {
  std::map<TopicPolarity, double> joint;
  std::array<double, 3> prior{};  // indexed by Polarity

  double Prior(Polarity p) const { return prior[static_cast<int>(p)]; }
};

// P(t, s) = #(t, s) / n and P(s) = #s / n. Throws DomainError when empty.
JointDistribution MakeJointDistribution(const JointCounter& counter);
JointDistribution MakeJointDistribution(
    const std::vector<TopicObservation>& obs);

// Window size and shift in days.
struct WindowSpec {
  int w = 365;
  int tau = 365;

  // Throws ConfigError unless 0 < tau <= w.
  void Validate() const;
  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

// Windows start at k * tau for k = 0, 1, ... while k * tau < span; there is
// always at least one.
std::size_t WindowCount(double span_days, const WindowSpec& spec);

struct Window {
  int index = 0;
  double start_day = 0.0;  // offset from the profile origin
  double end_day = 0.0;    // exclusive, except for the last window
  TopicCounter topics;
  JointCounter joint;
};

struct WindowedProfile {
  Timestamp origin;
  double span_days = 0.0;
  std::vector<Window> windows;

  bool SameGeometry(const WindowedProfile& other) const;
};

// Slices both observation sequences over a shared origin (the earliest time
// across both) so their windows align. An observation at floored day offset
// d belongs to window k when k*tau <= d < k*tau + w; the last window is
// closed on the right so the latest observation is always covered.
// Throws DomainError if either sequence is empty.
std::pair<WindowedProfile, WindowedProfile> SliceWindows(
    const std::vector<TopicObservation>& obs_a,
    const std::vector<TopicObservation>& obs_b, const WindowSpec& spec);

}  // namespace idmatch

#endif  // IDMATCH_PROFILES_H_

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

#include "idmatch/profiles.h"

#include <algorithm>
#include <cmath>

#include "idmatch/errors.h"
#include "idmatch/invariants.h"

namespace idmatch {

void TopicCounter::Add(std::string_view topic, std::int64_t n) {
  if (n <= 0) return;
  auto it = counts_.find(topic);
  if (it == counts_.end()) {
    counts_.emplace(std::string(topic), n);
  } else {
    it->second += n;
  }
  total_ += n;
}

std::int64_t TopicCounter::Count(std::string_view topic) const {
  auto it = counts_.find(topic);
  return it == counts_.end() ? 0 : it->second;
}

TopicCounter BuildCounter(const std::vector<TopicObservation>& obs) {
  TopicCounter c;
  for (const auto& o : obs) c.Add(o.topic);
  return c;
}

bool IsNormalized(const TopicDistribution& d, double tol) {
  double sum = 0.0;
  for (const auto& [topic, p] : d) {
    if (!(p > 0.0 && p <= 1.0)) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tol;
}

TopicDistribution MakeTopicDistribution(const TopicCounter& counter) {
  if (counter.empty()) throw DomainError("no topics");
  TopicDistribution d;
  const auto total = static_cast<double>(counter.total());
  for (const auto& [topic, n] : counter.counts()) {
    d.emplace_hint(d.end(), topic, static_cast<double>(n) / total);
  }
  invariants::Check(IsNormalized(d), "topic distribution sums to 1");
  return d;
}

void JointCounter::Add(const std::string& topic, Polarity p, std::int64_t n) {
  if (n <= 0) return;
  counts_[{topic, p}] += n;
  total_ += n;
}

JointCounter BuildJointCounter(const std::vector<TopicObservation>& obs) {
  JointCounter c;
  for (const auto& o : obs) c.Add(o.topic, DominantPolarity(o.sentiment));
  return c;
}

JointDistribution MakeJointDistribution(const JointCounter& counter) {
  if (counter.empty()) throw DomainError("no observations");
  JointDistribution d;
  const auto total = static_cast<double>(counter.total());
  std::array<std::int64_t, 3> per_polarity{};
  for (const auto& [key, n] : counter.counts()) {
    d.joint.emplace_hint(d.joint.end(), key, static_cast<double>(n) / total);
    per_polarity[static_cast<int>(key.second)] += n;
  }
  for (int s = 0; s < 3; ++s) {
    d.prior[s] = static_cast<double>(per_polarity[s]) / total;
  }

  if (invariants::Enabled()) {
    double joint_sum = 0.0;
    std::array<double, 3> marginal{};
    bool nonneg = true;
    for (const auto& [key, p] : d.joint) {
      joint_sum += p;
      marginal[static_cast<int>(key.second)] += p;
      nonneg = nonneg && p >= 0.0;
    }
    double prior_sum = d.prior[0] + d.prior[1] + d.prior[2];
    bool marginal_ok = true;
    for (int s = 0; s < 3; ++s) {
      marginal_ok = marginal_ok && std::abs(marginal[s] - d.prior[s]) <= 1e-9;
    }
    invariants::Check(nonneg && std::abs(joint_sum - 1.0) <= 1e-9,
                      "joint distribution sums to 1");
    invariants::Check(std::abs(prior_sum - 1.0) <= 1e-9,
                      "sentiment prior sums to 1");
    invariants::Check(marginal_ok, "prior equals marginal of joint");
  }
  return d;
}

JointDistribution MakeJointDistribution(
    const std::vector<TopicObservation>& obs) {
  return MakeJointDistribution(BuildJointCounter(obs));
}

void WindowSpec::Validate() const {
  if (w <= 0) throw ConfigError("window size w must be > 0");
  if (tau <= 0) throw ConfigError("window shift tau must be > 0");
  if (tau > w) {
    throw ConfigError("window shift tau (" + std::to_string(tau) +
                      ") must not exceed window size w (" +
                      std::to_string(w) + ")");
  }
}

std::size_t WindowCount(double span_days, const WindowSpec& spec) {
  spec.Validate();
  std::size_t n = 1;
  while (static_cast<double>(n) * spec.tau < span_days) ++n;
  return n;
}

bool WindowedProfile::SameGeometry(const WindowedProfile& other) const {
  if (origin != other.origin || span_days != other.span_days ||
      windows.size() != other.windows.size()) {
    return false;
  }
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (windows[i].start_day != other.windows[i].start_day ||
        windows[i].end_day != other.windows[i].end_day) {
      return false;
    }
  }
  return true;
}

namespace {

void Assign(const std::vector<TopicObservation>& obs, const Timestamp& origin,
            const WindowSpec& spec, WindowedProfile& out) {
  const auto n = static_cast<long long>(out.windows.size());
  for (const auto& o : obs) {
    const auto d =
        static_cast<long long>(std::floor(DaysBetween(origin, o.time)));
    // k*tau <= d < k*tau + w  <=>  (d - w) / tau < k <= d / tau
    long long k_hi = std::min(d / spec.tau, n - 1);
    long long k_lo = (d - spec.w) / spec.tau + 1;
    if (d - spec.w < 0) k_lo = 0;
    for (long long k = std::max(0LL, k_lo); k <= k_hi; ++k) {
      auto& win = out.windows[static_cast<std::size_t>(k)];
      win.topics.Add(o.topic);
      win.joint.Add(o.topic, DominantPolarity(o.sentiment));
    }
    // Right-closed last window.
    const long long last_start = (n - 1) * spec.tau;
    if (d == last_start + spec.w) {
      auto& win = out.windows.back();
      win.topics.Add(o.topic);
      win.joint.Add(o.topic, DominantPolarity(o.sentiment));
    }
  }
}

}  // namespace

std::pair<WindowedProfile, WindowedProfile> SliceWindows(
    const std::vector<TopicObservation>& obs_a,
    const std::vector<TopicObservation>& obs_b, const WindowSpec& spec) {
  spec.Validate();
  if (obs_a.empty() || obs_b.empty()) {
    throw DomainError("cannot slice windows over an empty observation list");
  }
  auto by_time = [](const TopicObservation& x, const TopicObservation& y) {
    return x.time < y.time;
  };
  auto [min_a, max_a] = std::minmax_element(obs_a.begin(), obs_a.end(), by_time);
  auto [min_b, max_b] = std::minmax_element(obs_b.begin(), obs_b.end(), by_time);
  const Timestamp origin = std::min(min_a->time, min_b->time);
  const Timestamp latest = std::max(max_a->time, max_b->time);

  WindowedProfile geometry;
  geometry.origin = origin;
  geometry.span_days = DaysBetween(origin, latest);
  const std::size_t count = WindowCount(geometry.span_days, spec);
  geometry.windows.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto& win = geometry.windows[k];
    win.index = static_cast<int>(k);
    win.start_day = static_cast<double>(k) * spec.tau;
    win.end_day = win.start_day + spec.w;
  }

  std::pair<WindowedProfile, WindowedProfile> out{geometry, geometry};
  Assign(obs_a, origin, spec, out.first);
  Assign(obs_b, origin, spec, out.second);
  return out;
}

}  // namespace idmatch

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

#ifndef IDMATCH_CORPUS_H_
#define IDMATCH_CORPUS_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace idmatch {

// Naive (UTC) wall-clock time with one-second resolution.
struct Timestamp {
  int year = 1970;
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;
  int second = 0;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;

  // Fractional days since 1970-01-01T00:00:00.
  double DaysSinceEpoch() const;
};

bool IsLeapYear(int year);
int DaysInMonth(int year, int month);

// Throws ValidationError if any component is out of range.
void ValidateTimestamp(const Timestamp& t);

// Accepts "YYYY-MM-DDThh:mm:ss" (a space may replace the 'T'), the
// six-component tuple "{yyyy, mm, dd, hh, mm, ss}" (braces optional), and
// the long form "hh:mm:ss AM|PM, DD Month, YYYY".
// Throws ParseError naming the offending component, or ValidationError for
// impossible dates.
Timestamp ParseTimestamp(std::string_view raw);

// Canonical "YYYY-MM-DDThh:mm:ss".
std::string FormatTimestamp(const Timestamp& t);

// Fractional days from `origin` to `t` (negative if t precedes origin).
double DaysBetween(const Timestamp& origin, const Timestamp& t);

// Timestamp `seconds` after 1970-01-01T00:00:00.
Timestamp TimestampFromEpochSeconds(long long seconds);
long long EpochSeconds(const Timestamp& t);

enum class Platform { kA, kB };

struct PostRecord {
  Platform platform = Platform::kA;
  std::string user_id;
  std::string text;
  Timestamp time;
};

// A ground-truth linked pair of accounts, one per platform.
struct ProfileSet {
  std::string pair_id;
  std::vector<PostRecord> posts_a;
  std::vector<PostRecord> posts_b;
};

// Parses one pair document. `source` is used in error messages.
ProfileSet ParsePairJson(std::string_view json_text, std::string_view source);
std::string SerializePairJson(const ProfileSet& set);

// Loads every *.json file in `dir` as a pair file, ordered by pair_id.
// Throws ParseError with file name and record index on schema violations.
std::vector<ProfileSet> LoadDataset(const std::filesystem::path& dir);

struct FilterStats {
  std::size_t kept = 0;
  std::size_t discarded = 0;
  std::size_t empty_posts_dropped = 0;
};

// Drops posts with blank text, then discards every set where either side
// has fewer than `min_posts` posts. Relative order is preserved.
std::vector<ProfileSet> FilterProfiles(std::vector<ProfileSet> sets,
                                       int min_posts = 20,
                                       FilterStats* stats = nullptr);

}  // namespace idmatch

#endif  // IDMATCH_CORPUS_H_

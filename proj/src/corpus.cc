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

#include "idmatch/corpus.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "idmatch/errors.h"
#include "json.hpp"

namespace idmatch {
namespace {

constexpr std::array<const char*, 6> kComponentNames = {
    "year", "month", "day", "hour", "minute", "second"};

constexpr std::array<std::string_view, 12> kMonthNames = {
    "january", "february", "march",     "april",   "may",      "june",
    "july",    "august",   "september", "october", "november", "december"};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

int ParseComponent(std::string_view field, int index, std::string_view raw) {
  field = Trim(field);
  int value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw ParseError("timestamp '" + std::string(raw) + "': malformed " +
                     kComponentNames[index] + " '" + std::string(field) + "'");
  }
  return value;
}

Timestamp FromComponents(const std::array<int, 6>& c) {
  Timestamp t{c[0], c[1], c[2], c[3], c[4], c[5]};
  ValidateTimestamp(t);
  return t;
}

// "YYYY-MM-DDThh:mm:ss"
Timestamp ParseIso(std::string_view s, std::string_view raw) {
  // Separators in fixed positions after each component.
  constexpr std::array<char, 5> kSeps = {'-', '-', 'T', ':', ':'};
  std::array<int, 6> c{};
  std::size_t pos = 0;
  for (int i = 0; i < 6; ++i) {
    std::size_t next = s.size();
    if (i < 5) {
      char sep = kSeps[i];
      next = (sep == 'T') ? s.find_first_of("Tt ", pos) : s.find(sep, pos);
      if (next == std::string_view::npos) {
        throw ParseError("timestamp '" + std::string(raw) + "': missing " +
                         kComponentNames[i + 1]);
      }
    }
    c[i] = ParseComponent(s.substr(pos, next - pos), i, raw);
    pos = next + 1;
  }
  return FromComponents(c);
}

// "{yyyy, mm, dd, hh, mm, ss}"
Timestamp ParseTuple(std::string_view s, std::string_view raw) {
  if (!s.empty() && s.front() == '{') s.remove_prefix(1);
  if (!s.empty() && s.back() == '}') s.remove_suffix(1);
  std::array<int, 6> c{};
  std::size_t pos = 0;
  for (int i = 0; i < 6; ++i) {
    std::size_t next = s.find(',', pos);
    if (i < 5 && next == std::string_view::npos) {
      throw ParseError("timestamp '" + std::string(raw) + "': missing " +
                       kComponentNames[i + 1]);
    }
    if (i == 5) {
      if (next != std::string_view::npos) {
        throw ParseError("timestamp '" + std::string(raw) +
                         "': trailing data after second");
      }
      next = s.size();
    }
    c[i] = ParseComponent(s.substr(pos, next - pos), i, raw);
    pos = next + 1;
  }
  return FromComponents(c);
}

// "07:19:35 PM, 31 August, 2014"
Timestamp ParseLongForm(std::string_view s, std::string_view raw) {
  auto fail = [&](const char* what) -> ParseError {
    return ParseError("timestamp '" + std::string(raw) + "': malformed " +
                      what);
  };
  std::size_t c1 = s.find(',');
  std::size_t c2 = s.find(',', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
    throw fail("long form (expected 'hh:mm:ss AM, DD Month, YYYY')");
  }
  std::string_view clock = Trim(s.substr(0, c1));
  std::string_view date = Trim(s.substr(c1 + 1, c2 - c1 - 1));
  std::string_view year = Trim(s.substr(c2 + 1));

  std::array<int, 6> c{};
  c[0] = ParseComponent(year, 0, raw);

  std::size_t sp = date.find(' ');
  if (sp == std::string_view::npos) throw fail("month");
  c[2] = ParseComponent(date.substr(0, sp), 2, raw);
  std::string month(Trim(date.substr(sp + 1)));
  std::transform(month.begin(), month.end(), month.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  auto it = std::find(kMonthNames.begin(), kMonthNames.end(), month);
  if (it == kMonthNames.end()) throw fail("month");
  c[1] = static_cast<int>(it - kMonthNames.begin()) + 1;

  std::size_t ampm_pos = clock.find(' ');
  if (ampm_pos == std::string_view::npos) throw fail("hour (no AM/PM)");
  std::string ampm(Trim(clock.substr(ampm_pos + 1)));
  std::transform(ampm.begin(), ampm.end(), ampm.begin(),
                 [](unsigned char ch) { return std::toupper(ch); });
  if (ampm != "AM" && ampm != "PM") throw fail("hour (no AM/PM)");
  clock = clock.substr(0, ampm_pos);
  std::size_t k1 = clock.find(':');
  std::size_t k2 = clock.find(':', k1 + 1);
  if (k1 == std::string_view::npos || k2 == std::string_view::npos) {
    throw fail("minute");
  }
  int hour12 = ParseComponent(clock.substr(0, k1), 3, raw);
  if (hour12 < 1 || hour12 > 12) {
    throw ValidationError("timestamp '" + std::string(raw) +
                          "': hour out of range for 12-hour clock");
  }
  c[3] = (hour12 % 12) + (ampm == "PM" ? 12 : 0);
  c[4] = ParseComponent(clock.substr(k1 + 1, k2 - k1 - 1), 4, raw);
  c[5] = ParseComponent(clock.substr(k2 + 1), 5, raw);
  return FromComponents(c);
}

const char* PlatformKey(Platform p) { return p == Platform::kA ? "a" : "b"; }

std::vector<PostRecord> ParsePosts(const nlohmann::json& doc, Platform p,
                                   std::string_view source) {
  const char* key = PlatformKey(p);
  auto where = [&](std::size_t i) {
    return std::string(source) + ": record " + key + "[" + std::to_string(i) +
           "]";
  };
  if (!doc.contains(key) || !doc[key].is_array()) {
    throw ParseError(std::string(source) + ": missing array '" + key + "'");
  }
  std::vector<PostRecord> out;
  const auto& arr = doc[key];
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& rec = arr[i];
    if (!rec.is_object()) throw ParseError(where(i) + " is not an object");
    for (const char* field : {"user", "text", "time"}) {
      if (!rec.contains(field) || !rec[field].is_string()) {
        throw ParseError(where(i) + ": missing string field '" + field + "'");
      }
    }
    PostRecord post;
    post.platform = p;
    post.user_id = rec["user"].get<std::string>();
    post.text = rec["text"].get<std::string>();
    try {
      post.time = ParseTimestamp(rec["time"].get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(where(i) + ": " + e.what());
    }
    out.push_back(std::move(post));
  }
  return out;
}

bool IsBlank(std::string_view s) { return Trim(s).empty(); }

}  // namespace

bool IsLeapYear(int year) {
  return std::chrono::year{year}.is_leap();
}

int DaysInMonth(int year, int month) {
  std::chrono::year_month_day_last last{
      std::chrono::year{year},
      std::chrono::month_day_last{
          std::chrono::month{static_cast<unsigned>(month)}}};
  return static_cast<int>(static_cast<unsigned>(last.day()));
}

void ValidateTimestamp(const Timestamp& t) {
  auto bad = [&](const char* what) {
    return ValidationError("invalid " + std::string(what) + " in " +
                           FormatTimestamp(t));
  };
  if (t.year < 1 || t.year > 9999) throw bad("year");
  if (t.month < 1 || t.month > 12) throw bad("month");
  if (t.day < 1 || t.day > DaysInMonth(t.year, t.month)) throw bad("day");
  if (t.hour < 0 || t.hour > 23) throw bad("hour");
  if (t.minute < 0 || t.minute > 59) throw bad("minute");
  if (t.second < 0 || t.second > 59) throw bad("second");
}

long long EpochSeconds(const Timestamp& t) {
  using namespace std::chrono;
  sys_days d = year_month_day{std::chrono::year{t.year},
                              std::chrono::month{static_cast<unsigned>(t.month)},
                              std::chrono::day{static_cast<unsigned>(t.day)}};
  return static_cast<long long>(d.time_since_epoch().count()) * 86400LL +
         t.hour * 3600LL + t.minute * 60LL + t.second;
}

double Timestamp::DaysSinceEpoch() const {
  return static_cast<double>(EpochSeconds(*this)) / 86400.0;
}

double DaysBetween(const Timestamp& origin, const Timestamp& t) {
  return static_cast<double>(EpochSeconds(t) - EpochSeconds(origin)) / 86400.0;
}

Timestamp TimestampFromEpochSeconds(long long seconds) {
  using namespace std::chrono;
  long long day_count = seconds / 86400;
  long long rem = seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --day_count;
  }
  year_month_day ymd{sys_days{days{day_count}}};
  Timestamp t;
  t.year = static_cast<int>(ymd.year());
  t.month = static_cast<int>(static_cast<unsigned>(ymd.month()));
  t.day = static_cast<int>(static_cast<unsigned>(ymd.day()));
  t.hour = static_cast<int>(rem / 3600);
  t.minute = static_cast<int>((rem % 3600) / 60);
  t.second = static_cast<int>(rem % 60);
  return t;
}

Timestamp ParseTimestamp(std::string_view raw) {
  std::string_view s = Trim(raw);
  if (s.empty()) throw ParseError("timestamp is empty");
  if (s.front() == '{' || s.find(',') != std::string_view::npos) {
    // Long form has letters (AM/PM, month name); the tuple form has none.
    bool has_alpha = std::any_of(s.begin(), s.end(), [](unsigned char ch) {
      return std::isalpha(ch);
    });
    return has_alpha ? ParseLongForm(s, raw) : ParseTuple(s, raw);
  }
  return ParseIso(s, raw);
}

std::string FormatTimestamp(const Timestamp& t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", t.year,
                t.month, t.day, t.hour, t.minute, t.second);
  return buf;
}

ProfileSet ParsePairJson(std::string_view json_text, std::string_view source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string(source) + ": " + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError(std::string(source) + ": top level is not an object");
  }
  if (!doc.contains("pair_id") || !doc["pair_id"].is_string()) {
    throw ParseError(std::string(source) + ": missing string 'pair_id'");
  }
  ProfileSet set;
  set.pair_id = doc["pair_id"].get<std::string>();
  set.posts_a = ParsePosts(doc, Platform::kA, source);
  set.posts_b = ParsePosts(doc, Platform::kB, source);
  return set;
}

std::string SerializePairJson(const ProfileSet& set) {
  auto posts = [](const std::vector<PostRecord>& in) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& p : in) {
      nlohmann::ordered_json rec;
      rec["user"] = p.user_id;
      rec["text"] = p.text;
      rec["time"] = FormatTimestamp(p.time);
      arr.push_back(std::move(rec));
    }
    return arr;
  };
  nlohmann::ordered_json doc;
  doc["pair_id"] = set.pair_id;
  doc["a"] = posts(set.posts_a);
  doc["b"] = posts(set.posts_b);
  return doc.dump(1) + "\n";
}

std::vector<ProfileSet> LoadDataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw ParseError("dataset directory not found: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json" &&
        entry.path().filename() != "manifest.json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<ProfileSet> sets;
  sets.reserve(files.size());
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ParseError("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    sets.push_back(ParsePairJson(buf.str(), file.filename().string()));
  }
  std::stable_sort(sets.begin(), sets.end(),
                   [](const ProfileSet& x, const ProfileSet& y) {
                     return x.pair_id < y.pair_id;
                   });
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if (sets[i].pair_id == sets[i - 1].pair_id) {
      throw ParseError("duplicate pair_id '" + sets[i].pair_id + "'");
    }
  }
  return sets;
}

std::vector<ProfileSet> FilterProfiles(std::vector<ProfileSet> sets,
                                       int min_posts, FilterStats* stats) {
  if (min_posts < 1) throw ConfigError("min_posts must be >= 1");
  FilterStats local;
  std::vector<ProfileSet> kept;
  kept.reserve(sets.size());
  for (auto& set : sets) {
    for (auto* posts : {&set.posts_a, &set.posts_b}) {
      auto before = posts->size();
      std::erase_if(*posts,
                    [](const PostRecord& p) { return IsBlank(p.text); });
      local.empty_posts_dropped += before - posts->size();
    }
    auto limit = static_cast<std::size_t>(min_posts);
    if (set.posts_a.size() >= limit && set.posts_b.size() >= limit) {
      kept.push_back(std::move(set));
    } else {
      ++local.discarded;
    }
  }
  local.kept = kept.size();
  if (stats != nullptr) *stats = local;
  return kept;
}

}  // namespace idmatch

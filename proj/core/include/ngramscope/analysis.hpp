// Copyright 2026 The ngramscope Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ngramscope/query.hpp"
#include "ngramscope/store.hpp"

namespace ngramscope {

enum class CompletionUnit { kWord, kChar };

std::string_view to_string(CompletionUnit unit) noexcept;
CompletionUnit parse_completion_unit(std::string_view text);

/// Longest character history accepted by char-unit completion, plus one.
inline constexpr int kMaxCharOrder = 10;

struct CompletionEntry {
  std::string symbol;
  double probability = 0.0;

  friend bool operator==(const CompletionEntry&, const CompletionEntry&) = default;
};

/// Maximum-likelihood next-symbol distribution given a history.
///
/// `support_count` is the number of times the history occurs followed by
/// some symbol, so the full distribution sums to one whenever it is
/// positive. Entries are sorted by descending probability, ties by symbol.
struct CompletionDistribution {
  std::vector<std::string> history;
  CompletionUnit unit = CompletionUnit::kWord;
  std::vector<CompletionEntry> entries;
  std::uint64_t support_count = 0;
};

/// Character m-gram continuation tables built lazily from the documents of
/// one corpus. Each order is built once; concurrent readers share it.
class CharModelCache {
 public:
  explicit CharModelCache(const CorpusIndex& index);
  ~CharModelCache();

  CharModelCache(const CharModelCache&) = delete;
  CharModelCache& operator=(const CharModelCache&) = delete;

  struct Table;
  const Table& table(int order) const;

 private:
  const CorpusIndex& index_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const Table>> tables_;
};

/// `top == 0` keeps every entry.
///
/// Word unit reads continuations from the n-gram index. Char unit needs the
/// document bodies; pass a cache to reuse tables between calls. Throws
/// kParameter for an empty or over-long history and kCapability when char
/// unit is asked of a corpus without document texts.
CompletionDistribution complete(const CorpusIndex& index, std::string_view history,
                                CompletionUnit unit, std::size_t top,
                                const CharModelCache* cache = nullptr);

/// Same contract over a single in-memory text. Word-unit histories may be at
/// most kMaxOrder - 1 tokens long.
CompletionDistribution complete_text(std::string_view text, std::string_view history,
                                     CompletionUnit unit, std::size_t top);

/// Whitespace runs become one space; leading and trailing whitespace drops.
/// This is the character stream char-unit completion counts over.
std::vector<std::string> char_symbols(std::string_view text);

inline constexpr int kDefaultSpikeWindow = 5;
inline constexpr double kDefaultSpikeThreshold = 10.0;
inline constexpr int kDefaultIsolationWindow = 10;
inline constexpr int kDefaultMinGap = 50;

struct Spike {
  int year = 0;
  double score = 0.0;

  friend bool operator==(const Spike&, const Spike&) = default;
};

/// Flags years whose value exceeds `threshold` times the median of the other
/// values within `window` years. A positive value over a zero median always
/// flags; its score then divides by the smallest positive value in the
/// series. Throws kParameter for series shorter than 3 years, window < 1 or
/// threshold <= 1.
std::vector<Spike> spikes(const FrequencySeries& series, int window,
                          double threshold = kDefaultSpikeThreshold);

struct AnomalyReport {
  std::string phrase;
  int year = 0;
  std::uint64_t volume_count = 0;
  std::vector<std::string> doc_ids;
  std::optional<int> nearest_other_year;
  int gap = 0;
  std::string note;
};

/// Years where the phrase occurs with no other occurrence within
/// `isolation_window` years and the nearest other occurrence at least
/// `min_gap` years away. A phrase seen in a single year only is not reported.
std::vector<AnomalyReport> find_misdated(const CorpusIndex& index, std::string_view phrase,
                                         int isolation_window = kDefaultIsolationWindow,
                                         int min_gap = kDefaultMinGap);

/// Documents printed in [start_year, end_year] that contain the phrase,
/// sorted by (year, doc_id). Throws kCapability when the index has no
/// postings.
std::vector<DocumentMeta> documents(const CorpusIndex& index, std::string_view phrase,
                                    int start_year, int end_year);

}  // namespace ngramscope

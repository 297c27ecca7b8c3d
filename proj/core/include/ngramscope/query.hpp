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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ngramscope/extract.hpp"
#include "ngramscope/store.hpp"

namespace ngramscope {

enum class Normalization {
  kTokens,   // divide by the year's total same-order n-grams
  kVolumes,  // divide by the number of volumes printed that year
};

std::string_view to_string(Normalization n) noexcept;
/// Accepts "tokens" or "volumes"; throws kParameter otherwise.
Normalization parse_normalization(std::string_view text);

inline constexpr int kDefaultSmoothing = 3;

struct PhraseSpec {
  Ngram ngram;
  bool case_insensitive = false;

  /// Canonical text, suffixed with ":ci" for case-insensitive phrases.
  std::string label() const;
};

struct PhraseQuery {
  std::vector<PhraseSpec> phrases;
  int start_year = 1500;
  int end_year = 2015;
  int smoothing = kDefaultSmoothing;
  // Applies to every phrase in addition to per-phrase ":ci" markers.
  bool case_insensitive = false;
  Normalization normalization = Normalization::kTokens;

  void validate(int max_order) const;
};

/// Parses "p1, p2:ci, ..." into phrases. Throws kParse on an empty query, an
/// empty phrase, or a phrase longer than max_order.
PhraseQuery parse_query(std::string_view text, int max_order);

struct FrequencySeries {
  std::string phrase;
  int start_year = 0;
  int end_year = 0;
  std::vector<double> values;
  // Years whose denominator was zero; their value is 0.
  std::vector<int> missing_years;

  int year_at(std::size_t i) const { return start_year + static_cast<int>(i); }
};

/// Centered moving average over [i - k, i + k] truncated to the series
/// bounds; each output divides by the number of samples actually in the
/// window. k == 0 returns the input unchanged.
std::vector<double> smooth(std::span<const double> raw, int k);

/// Summed match counts of a phrase (with case variants when requested) for
/// every year of [start_year, end_year].
std::vector<std::uint64_t> phrase_counts(const CorpusIndex& index, const PhraseSpec& phrase,
                                         int start_year, int end_year);

/// Unsmoothed normalized series for one phrase.
FrequencySeries raw_series(const CorpusIndex& index, const PhraseSpec& phrase, int start_year,
                           int end_year, Normalization normalization);

/// One smoothed, normalized series per query phrase, in query order.
std::vector<FrequencySeries> series(const CorpusIndex& index, const PhraseQuery& query);

}  // namespace ngramscope

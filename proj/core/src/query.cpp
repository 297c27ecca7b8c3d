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

#include "ngramscope/query.hpp"

#include "ngramscope/error.hpp"

namespace ngramscope {
namespace {

constexpr std::string_view kCaseMarker = ":ci";
constexpr int kMaxSpanYears = 10000;

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

}  // namespace

std::string_view to_string(Normalization n) noexcept {
  return n == Normalization::kTokens ? "tokens" : "volumes";
}

Normalization parse_normalization(std::string_view text) {
  if (text == "tokens") return Normalization::kTokens;
  if (text == "volumes") return Normalization::kVolumes;
  throw Error(ErrorKind::kParameter,
              "normalization must be \"tokens\" or \"volumes\", got \"" + std::string(text) + "\"");
}

std::string PhraseSpec::label() const {
  auto text = ngram.text();
  if (case_insensitive) text += kCaseMarker;
  return text;
}

void PhraseQuery::validate(int max_order) const {
  if (phrases.empty()) throw Error(ErrorKind::kParse, "query has no phrases");
  for (const auto& p : phrases) {
    if (p.ngram.order() < 1 || p.ngram.order() > max_order) {
      throw Error(ErrorKind::kParse, "phrase \"" + p.ngram.text() + "\" has order " +
                                         std::to_string(p.ngram.order()) + "; corpus supports 1.." +
                                         std::to_string(max_order));
    }
  }
  if (start_year > end_year) {
    throw Error(ErrorKind::kParameter, "start year " + std::to_string(start_year) +
                                           " is after end year " + std::to_string(end_year));
  }
  if (end_year - start_year >= kMaxSpanYears) {
    throw Error(ErrorKind::kParameter, "year range is too long");
  }
  if (smoothing < 0) throw Error(ErrorKind::kParameter, "smoothing must be >= 0");
}

PhraseQuery parse_query(std::string_view text, int max_order) {
  PhraseQuery query;
  if (trim(text).empty()) throw Error(ErrorKind::kParse, "query is empty");

  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view phrase = trim(text.substr(start, comma - start));
    start = comma + 1;

    PhraseSpec spec;
    if (phrase.ends_with(kCaseMarker)) {
      spec.case_insensitive = true;
      phrase = trim(phrase.substr(0, phrase.size() - kCaseMarker.size()));
    }
    if (phrase.empty()) throw Error(ErrorKind::kParse, "query contains an empty phrase");

    auto tokens = tokenize(phrase);
    if (static_cast<int>(tokens.size()) > max_order) {
      throw Error(ErrorKind::kParse, "phrase \"" + std::string(phrase) + "\" has order " +
                                         std::to_string(tokens.size()) + " > max order " +
                                         std::to_string(max_order));
    }
    spec.ngram = Ngram(std::move(tokens));
    query.phrases.push_back(std::move(spec));
  }
  return query;
}

std::vector<double> smooth(std::span<const double> raw, int k) {
  if (k < 0) throw Error(ErrorKind::kParameter, "smoothing must be >= 0");
  std::vector<double> out(raw.begin(), raw.end());
  if (k == 0 || raw.empty()) return out;

  const auto n = static_cast<std::ptrdiff_t>(raw.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto lo = std::max<std::ptrdiff_t>(0, i - k);
    const auto hi = std::min<std::ptrdiff_t>(n - 1, i + k);
    double sum = 0.0;
    for (auto j = lo; j <= hi; ++j) sum += raw[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<std::uint64_t> phrase_counts(const CorpusIndex& index, const PhraseSpec& phrase,
                                         int start_year, int end_year) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(end_year - start_year + 1), 0);
  std::vector<const GramRecord*> records;
  if (phrase.case_insensitive) {
    records = index.case_variants(phrase.ngram.text());
  } else if (const auto* g = index.find(phrase.ngram.text())) {
    records.push_back(g);
  }
  for (const auto* g : records) {
    for (const auto& cell : g->cells) {
      if (cell.year < start_year || cell.year > end_year) continue;
      counts[static_cast<std::size_t>(cell.year - start_year)] += cell.count.match_count;
    }
  }
  return counts;
}

FrequencySeries raw_series(const CorpusIndex& index, const PhraseSpec& phrase, int start_year,
                           int end_year, Normalization normalization) {
  FrequencySeries out;
  out.phrase = phrase.label();
  out.start_year = start_year;
  out.end_year = end_year;
  const auto counts = phrase_counts(index, phrase, start_year, end_year);
  out.values.resize(counts.size(), 0.0);
  const int order = phrase.ngram.order();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const int year = start_year + static_cast<int>(i);
    const auto* totals = index.totals_for(year);
    std::uint64_t denominator = 0;
    if (totals != nullptr) {
      denominator = normalization == Normalization::kTokens ? totals->matches_for_order(order)
                                                            : totals->volumes;
    }
    if (denominator == 0) {
      out.missing_years.push_back(year);
      continue;
    }
    out.values[i] = static_cast<double>(counts[i]) / static_cast<double>(denominator);
  }
  return out;
}

std::vector<FrequencySeries> series(const CorpusIndex& index, const PhraseQuery& query) {
  query.validate(index.max_order());
  std::vector<FrequencySeries> out;
  out.reserve(query.phrases.size());
  for (auto phrase : query.phrases) {
    phrase.case_insensitive = phrase.case_insensitive || query.case_insensitive;
    auto s = raw_series(index, phrase, query.start_year, query.end_year, query.normalization);
    s.values = smooth(s.values, query.smoothing);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ngramscope

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

#include "ngramscope/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <tuple>
#include <unordered_map>

#include <unicode/uchar.h>

#include "ngramscope/error.hpp"
#include "unicode_internal.hpp"

namespace ngramscope {
namespace {

using SymbolCounts = std::map<std::string, std::uint64_t>;

// Whitespace runs collapse to a single U+0020. With `trim`, leading and
// trailing whitespace is dropped entirely.
std::vector<std::string> normalized_chars(std::string_view text, bool trim) {
  std::vector<std::string> out;
  unicode::Utf8Cursor cursor(text);
  bool pending_space = false;
  while (!cursor.done()) {
    const auto cp = cursor.next();
    if (cp.valid && u_isUWhiteSpace(cp.value)) {
      pending_space = true;
      continue;
    }
    if (pending_space && (!trim || !out.empty())) out.emplace_back(" ");
    pending_space = false;
    out.emplace_back(cp.bytes);
  }
  if (pending_space && !trim) out.emplace_back(" ");
  return out;
}

std::string concat(const std::vector<std::string>& symbols, std::size_t pos, std::size_t len) {
  std::string out;
  for (std::size_t i = pos; i < pos + len; ++i) out += symbols[i];
  return out;
}

CompletionDistribution make_distribution(std::vector<std::string> history, CompletionUnit unit,
                                         const SymbolCounts& counts, std::size_t top) {
  CompletionDistribution dist;
  dist.history = std::move(history);
  dist.unit = unit;
  for (const auto& [symbol, count] : counts) dist.support_count += count;
  if (dist.support_count == 0) return dist;

  const auto support = static_cast<double>(dist.support_count);
  for (const auto& [symbol, count] : counts) {
    if (count == 0) continue;
    dist.entries.push_back({symbol, static_cast<double>(count) / support});
  }
  std::stable_sort(dist.entries.begin(), dist.entries.end(),
                   [](const CompletionEntry& a, const CompletionEntry& b) {
                     if (a.probability != b.probability) return a.probability > b.probability;
                     return a.symbol < b.symbol;
                   });
  if (top != 0 && dist.entries.size() > top) dist.entries.resize(top);
  return dist;
}

// Continuations of `history` within one symbol stream.
void count_continuations(const std::vector<std::string>& stream,
                         const std::vector<std::string>& history, SymbolCounts& counts) {
  const std::size_t h = history.size();
  if (stream.size() <= h) return;
  for (std::size_t i = 0; i + h < stream.size(); ++i) {
    if (std::equal(history.begin(), history.end(), stream.begin() + static_cast<std::ptrdiff_t>(i))) {
      ++counts[stream[i + h]];
    }
  }
}

std::vector<std::string> word_history(std::string_view history, int max_order) {
  auto tokens = tokenize(history);
  if (tokens.empty()) throw Error(ErrorKind::kParameter, "completion history is empty");
  if (static_cast<int>(tokens.size()) > max_order - 1) {
    throw Error(ErrorKind::kParameter, "history has " + std::to_string(tokens.size()) +
                                           " words; at most " + std::to_string(max_order - 1) +
                                           " are supported");
  }
  return tokens;
}

std::vector<std::string> char_history(std::string_view history) {
  auto symbols = normalized_chars(history, false);
  if (symbols.empty()) throw Error(ErrorKind::kParameter, "completion history is empty");
  if (static_cast<int>(symbols.size()) > kMaxCharOrder - 1) {
    throw Error(ErrorKind::kParameter, "history has " + std::to_string(symbols.size()) +
                                           " characters; at most " +
                                           std::to_string(kMaxCharOrder - 1) + " are supported");
  }
  return symbols;
}

double median(std::vector<double>& values) {
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

std::string canonical_phrase(std::string_view phrase, int max_order) {
  auto tokens = tokenize(phrase);
  if (tokens.empty()) throw Error(ErrorKind::kParameter, "phrase is empty");
  if (static_cast<int>(tokens.size()) > max_order) {
    throw Error(ErrorKind::kParameter, "phrase \"" + std::string(phrase) + "\" is longer than the corpus max order " +
                                           std::to_string(max_order));
  }
  return Ngram(std::move(tokens)).text();
}

}  // namespace

std::string_view to_string(CompletionUnit unit) noexcept {
  return unit == CompletionUnit::kWord ? "word" : "char";
}

CompletionUnit parse_completion_unit(std::string_view text) {
  if (text == "word") return CompletionUnit::kWord;
  if (text == "char") return CompletionUnit::kChar;
  throw Error(ErrorKind::kParameter, "unit must be \"word\" or \"char\", got \"" + std::string(text) + "\"");
}

std::vector<std::string> char_symbols(std::string_view text) { return normalized_chars(text, true); }

// --- character models -------------------------------------------------------

struct CharModelCache::Table {
  // history (concatenated code points) -> next symbol -> count
  std::unordered_map<std::string, SymbolCounts> next;
};

CharModelCache::CharModelCache(const CorpusIndex& index) : index_(index) {}
CharModelCache::~CharModelCache() = default;

const CharModelCache::Table& CharModelCache::table(int order) const {
  std::lock_guard lock(mutex_);
  if (auto it = tables_.find(order); it != tables_.end()) return *it->second;

  const auto docs = index_.documents();
  if (docs.empty() || std::any_of(docs.begin(), docs.end(),
                                  [](const DocumentMeta& d) { return d.path.empty(); })) {
    throw Error(ErrorKind::kCapability,
                "character completion needs document texts, which this corpus does not have");
  }
  auto table = std::make_shared<Table>();
  const auto history_len = static_cast<std::size_t>(order - 1);
  for (const auto& doc : docs) {
    std::ifstream in(doc.path, std::ios::binary);
    if (!in) throw Error(ErrorKind::kIo, "cannot read text of document " + doc.doc_id);
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    const auto symbols = char_symbols(text);
    for (std::size_t i = 0; i + history_len < symbols.size(); ++i) {
      ++table->next[concat(symbols, i, history_len)][symbols[i + history_len]];
    }
  }
  tables_.emplace(order, table);
  return *table;
}

// --- completion -------------------------------------------------------------

CompletionDistribution complete(const CorpusIndex& index, std::string_view history,
                                CompletionUnit unit, std::size_t top,
                                const CharModelCache* cache) {
  if (unit == CompletionUnit::kWord) {
    auto tokens = word_history(history, index.max_order());
    const int order = static_cast<int>(tokens.size()) + 1;
    const std::string prefix = Ngram(tokens).text() + " ";
    SymbolCounts counts;
    for (const auto& g : index.with_prefix(order, prefix)) {
      counts[g.text.substr(prefix.size())] += g.total_matches();
    }
    return make_distribution(std::move(tokens), unit, counts, top);
  }

  auto symbols = char_history(history);
  const int order = static_cast<int>(symbols.size()) + 1;
  std::unique_ptr<CharModelCache> local;
  if (cache == nullptr) {
    local = std::make_unique<CharModelCache>(index);
    cache = local.get();
  }
  const auto& table = cache->table(order);
  auto it = table.next.find(concat(symbols, 0, symbols.size()));
  static const SymbolCounts kEmpty;
  return make_distribution(std::move(symbols), unit, it == table.next.end() ? kEmpty : it->second, top);
}

CompletionDistribution complete_text(std::string_view text, std::string_view history,
                                     CompletionUnit unit, std::size_t top) {
  SymbolCounts counts;
  if (unit == CompletionUnit::kWord) {
    auto tokens = word_history(history, kMaxOrder);
    count_continuations(tokenize(text), tokens, counts);
    return make_distribution(std::move(tokens), unit, counts, top);
  }
  auto symbols = char_history(history);
  count_continuations(char_symbols(text), symbols, counts);
  return make_distribution(std::move(symbols), unit, counts, top);
}

// --- spikes -----------------------------------------------------------------

std::vector<Spike> spikes(const FrequencySeries& series, int window, double threshold) {
  const auto& values = series.values;
  if (values.size() < 3) throw Error(ErrorKind::kParameter, "spike detection needs at least 3 years");
  if (window < 1) throw Error(ErrorKind::kParameter, "spike window must be >= 1");
  if (!(threshold > 1.0)) throw Error(ErrorKind::kParameter, "spike threshold must be > 1");

  double min_positive = std::numeric_limits<double>::infinity();
  for (double v : values) {
    if (v > 0.0) min_positive = std::min(min_positive, v);
  }

  std::vector<Spike> out;
  std::vector<double> neighborhood;
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double v = values[static_cast<std::size_t>(i)];
    if (!(v > 0.0)) continue;
    neighborhood.clear();
    for (auto j = std::max<std::ptrdiff_t>(0, i - window); j <= std::min(n - 1, i + window); ++j) {
      if (j != i) neighborhood.push_back(values[static_cast<std::size_t>(j)]);
    }
    const double m = median(neighborhood);
    if (m > 0.0) {
      if (v > threshold * m) out.push_back({series.year_at(static_cast<std::size_t>(i)), v / m});
    } else {
      out.push_back({series.year_at(static_cast<std::size_t>(i)), v / min_positive});
    }
  }
  return out;
}

// --- misdating and drill-down ----------------------------------------------

std::vector<AnomalyReport> find_misdated(const CorpusIndex& index, std::string_view phrase,
                                         int isolation_window, int min_gap) {
  if (isolation_window < 1) throw Error(ErrorKind::kParameter, "isolation window must be >= 1");
  if (min_gap < 1) throw Error(ErrorKind::kParameter, "minimum gap must be >= 1");
  const std::string canonical = canonical_phrase(phrase, index.max_order());

  std::vector<AnomalyReport> reports;
  const GramRecord* record = index.find(canonical);
  if (record == nullptr) return reports;

  std::vector<const YearCell*> occurrences;
  for (const auto& cell : record->cells) {
    if (cell.count.match_count > 0) occurrences.push_back(&cell);
  }
  const auto docs = index.documents();
  for (std::size_t i = 0; i < occurrences.size(); ++i) {
    const YearCell& cell = *occurrences[i];
    std::optional<int> nearest;
    int gap = std::numeric_limits<int>::max();
    if (i > 0) {
      nearest = occurrences[i - 1]->year;
      gap = cell.year - *nearest;
    }
    if (i + 1 < occurrences.size() && occurrences[i + 1]->year - cell.year < gap) {
      nearest = occurrences[i + 1]->year;
      gap = *nearest - cell.year;
    }
    if (!nearest || gap <= isolation_window || gap < min_gap) continue;

    AnomalyReport report;
    report.phrase = canonical;
    report.year = cell.year;
    report.volume_count = cell.count.volume_count;
    report.nearest_other_year = nearest;
    report.gap = gap;
    for (auto d : cell.docs) report.doc_ids.push_back(docs[d].doc_id);
    report.note = "isolated occurrence in " + std::to_string(cell.year) + ", nearest other use " +
                  std::to_string(*nearest) + " (" + std::to_string(gap) +
                  " years away); candidate misdated volume, check its printed year";
    if (!index.has_postings()) {
      report.note += "; postings not available, drill-down unavailable for this corpus";
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<DocumentMeta> documents(const CorpusIndex& index, std::string_view phrase,
                                    int start_year, int end_year) {
  if (!index.has_postings()) {
    throw Error(ErrorKind::kCapability, "postings not available for corpus " + index.corpus_id());
  }
  if (start_year > end_year) {
    throw Error(ErrorKind::kParameter, "start year is after end year");
  }
  const std::string canonical = canonical_phrase(phrase, index.max_order());
  std::vector<DocumentMeta> out;
  const GramRecord* record = index.find(canonical);
  if (record == nullptr) return out;

  const auto docs = index.documents();
  for (const auto& cell : record->cells) {
    if (cell.year < start_year || cell.year > end_year) continue;
    for (auto d : cell.docs) out.push_back(docs[d]);
  }
  std::sort(out.begin(), out.end(), [](const DocumentMeta& a, const DocumentMeta& b) {
    return std::tie(a.year, a.doc_id) < std::tie(b.year, b.doc_id);
  });
  return out;
}

}  // namespace ngramscope

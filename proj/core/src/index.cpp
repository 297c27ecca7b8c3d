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

#include <algorithm>
#include <functional>
#include <string>
#include <tuple>

#include "index_assembler.hpp"
#include "ngramscope/unicode.hpp"

namespace ngramscope {

// --- GramRecord -------------------------------------------------------------

const YearCell* GramRecord::cell(int year) const {
  auto it = std::lower_bound(cells.begin(), cells.end(), year,
                             [](const YearCell& c, int y) { return c.year < y; });
  return it != cells.end() && it->year == year ? &*it : nullptr;
}

std::uint64_t GramRecord::total_matches() const {
  std::uint64_t sum = 0;
  for (const auto& c : cells) sum += c.count.match_count;
  return sum;
}

// --- GramAccumulator --------------------------------------------------------

GramAccumulator::Cell& GramAccumulator::cell_for(std::string_view text, int order, int year) {
  auto it = grams_.find(text);
  if (it == grams_.end()) it = grams_.emplace(std::string(text), Entry{order, {}}).first;
  auto& cells = it->second.cells;
  if (!cells.empty() && cells.back().year == year) return cells.back();
  auto pos = std::lower_bound(cells.begin(), cells.end(), year,
                              [](const Cell& c, int y) { return c.year < y; });
  if (pos != cells.end() && pos->year == year) return *pos;
  return *cells.insert(pos, Cell{year, kNoDoc, {}, {}});
}

void GramAccumulator::add_document(std::uint32_t doc, int year, const std::vector<Token>& tokens) {
  auto& totals = totals_[year];
  totals.year = year;
  totals.volumes += 1;

  const std::size_t count = tokens.size();
  for (int n = 1; n <= max_order_; ++n) {
    if (count >= static_cast<std::size_t>(n)) totals.total_matches[n - 1] += count - n + 1;
  }

  std::string buffer;
  for (std::size_t pos = 0; pos < count; ++pos) {
    buffer = tokens[pos];
    for (int n = 1; n <= max_order_ && pos + n <= count; ++n) {
      if (n > 1) {
        buffer.push_back(' ');
        buffer += tokens[pos + n - 1];
      }
      Cell& cell = cell_for(buffer, n, year);
      cell.count.match_count += 1;
      if (cell.last_doc != doc) {
        cell.last_doc = doc;
        cell.count.volume_count += 1;
        if (with_postings_) cell.docs.push_back(doc);
      }
    }
  }
}

void GramAccumulator::add_count(std::string_view text, int order, int year, YearlyCount count) {
  Cell& cell = cell_for(text, order, year);
  cell.count.match_count += count.match_count;
  cell.count.volume_count += count.volume_count;
}

void GramAccumulator::add_totals(const YearTotals& totals) {
  auto& mine = totals_[totals.year];
  mine.year = totals.year;
  for (int n = 0; n < kMaxOrder; ++n) mine.total_matches[n] += totals.total_matches[n];
  mine.volumes += totals.volumes;
}

void GramAccumulator::merge(GramAccumulator&& other) {
  for (auto& [text, entry] : other.grams_) {
    auto it = grams_.find(text);
    if (it == grams_.end()) {
      grams_.emplace(text, std::move(entry));
      continue;
    }
    for (auto& cell : entry.cells) {
      Cell& mine = cell_for(text, entry.order, cell.year);
      mine.count.match_count += cell.count.match_count;
      mine.count.volume_count += cell.count.volume_count;
      mine.docs.insert(mine.docs.end(), cell.docs.begin(), cell.docs.end());
    }
  }
  for (const auto& [year, totals] : other.totals_) add_totals(totals);
  other.grams_.clear();
  other.totals_.clear();
}

// --- IndexAssembler ---------------------------------------------------------

CorpusIndex IndexAssembler::assemble(std::string corpus_id, int max_order, bool has_postings,
                                     std::vector<DocumentMeta> documents, GramAccumulator&& acc) {
  std::vector<GramRecord> grams;
  grams.reserve(acc.grams().size());
  for (auto& [text, entry] : acc.grams()) {
    GramRecord record;
    record.text = text;
    record.order = entry.order;
    record.cells.reserve(entry.cells.size());
    for (auto& cell : entry.cells) {
      std::sort(cell.docs.begin(), cell.docs.end());
      record.cells.push_back(YearCell{cell.year, cell.count, std::move(cell.docs)});
    }
    grams.push_back(std::move(record));
  }
  acc.grams().clear();
  std::sort(grams.begin(), grams.end(), [](const GramRecord& a, const GramRecord& b) {
    return std::tie(a.order, a.text) < std::tie(b.order, b.text);
  });
  return from_sorted(std::move(corpus_id), max_order, has_postings, std::move(documents),
                     std::move(grams), std::move(acc.totals()));
}

CorpusIndex IndexAssembler::from_sorted(std::string corpus_id, int max_order, bool has_postings,
                                        std::vector<DocumentMeta> documents,
                                        std::vector<GramRecord> grams,
                                        std::map<int, YearTotals> totals) {
  CorpusIndex index;
  index.corpus_id_ = std::move(corpus_id);
  index.max_order_ = max_order;
  index.has_postings_ = has_postings;
  index.documents_ = std::move(documents);
  index.grams_ = std::move(grams);
  index.totals_ = std::move(totals);
  index.finalize();
  return index;
}

// --- CorpusIndex ------------------------------------------------------------

// (hash of folded text, gram index), sorted. Hash collisions are resolved
// by refolding the candidates at lookup time.
struct CorpusIndex::FoldTable {
  std::vector<std::pair<std::size_t, std::uint32_t>> entries;
};

CorpusIndex::CorpusIndex() : fold_once_(std::make_unique<std::once_flag>()) {}
CorpusIndex::CorpusIndex(CorpusIndex&&) noexcept = default;
CorpusIndex& CorpusIndex::operator=(CorpusIndex&&) noexcept = default;
CorpusIndex::~CorpusIndex() = default;

void CorpusIndex::finalize() {
  lookup_.clear();
  lookup_.reserve(grams_.size());
  for (std::size_t i = 0; i < grams_.size(); ++i) {
    lookup_.emplace(std::string_view(grams_[i].text), static_cast<std::uint32_t>(i));
  }
  if (totals_.empty()) {
    year_span_.reset();
  } else {
    year_span_ = YearSpan{totals_.begin()->first, totals_.rbegin()->first};
  }
}

const GramRecord* CorpusIndex::find(std::string_view canonical) const {
  auto it = lookup_.find(canonical);
  return it == lookup_.end() ? nullptr : &grams_[it->second];
}

const YearTotals* CorpusIndex::totals_for(int year) const {
  auto it = totals_.find(year);
  return it == totals_.end() ? nullptr : &it->second;
}

std::span<const GramRecord> CorpusIndex::with_prefix(int order, std::string_view prefix) const {
  auto first = std::lower_bound(grams_.begin(), grams_.end(), std::tie(order, prefix),
                                [](const GramRecord& g, const auto& key) {
                                  const auto& [o, p] = key;
                                  if (g.order != o) return g.order < o;
                                  return std::string_view(g.text) < p;
                                });
  auto last = first;
  while (last != grams_.end() && last->order == order &&
         std::string_view(last->text).starts_with(prefix)) {
    ++last;
  }
  return {first, last};
}

void CorpusIndex::warm_case_folding() const {
  std::call_once(*fold_once_, [this] {
    auto table = std::make_unique<FoldTable>();
    table->entries.reserve(grams_.size());
    std::string folded;
    const std::hash<std::string_view> hash;
    for (std::size_t i = 0; i < grams_.size(); ++i) {
      unicode::fold_case(grams_[i].text, folded);
      table->entries.emplace_back(hash(folded), static_cast<std::uint32_t>(i));
    }
    std::sort(table->entries.begin(), table->entries.end());
    fold_table_ = std::move(table);
  });
}

std::vector<const GramRecord*> CorpusIndex::case_variants(std::string_view canonical) const {
  warm_case_folding();
  const std::string target = unicode::fold_case(canonical);
  const auto key = std::hash<std::string_view>{}(target);
  const auto& entries = fold_table_->entries;
  auto it = std::lower_bound(entries.begin(), entries.end(), std::make_pair(key, std::uint32_t{0}));
  std::vector<const GramRecord*> out;
  std::string folded;
  for (; it != entries.end() && it->first == key; ++it) {
    const GramRecord& g = grams_[it->second];
    unicode::fold_case(g.text, folded);
    if (folded == target) out.push_back(&g);
  }
  return out;
}

}  // namespace ngramscope

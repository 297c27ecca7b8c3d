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
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ngramscope/store.hpp"

namespace ngramscope {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

/// Mutable accumulation state shared by ingest, import and load. Documents
/// must be fed one at a time; volume counting relies on it.
class GramAccumulator {
 public:
  static constexpr std::uint32_t kNoDoc = std::numeric_limits<std::uint32_t>::max();

  struct Cell {
    int year = 0;
    std::uint32_t last_doc = kNoDoc;
    YearlyCount count;
    std::vector<std::uint32_t> docs;
  };

  struct Entry {
    int order = 0;
    std::vector<Cell> cells;  // ascending by year
  };

  GramAccumulator(int max_order, bool with_postings)
      : max_order_(max_order), with_postings_(with_postings) {}

  void add_document(std::uint32_t doc, int year, const std::vector<Token>& tokens);

  /// Adds externally supplied counts (import). Repeated keys sum.
  void add_count(std::string_view text, int order, int year, YearlyCount count);

  void add_totals(const YearTotals& totals);

  /// Folds `other` into this accumulator. Commutative up to the order of
  /// postings, which finalization sorts.
  void merge(GramAccumulator&& other);

  std::unordered_map<std::string, Entry, StringHash, std::equal_to<>>& grams() { return grams_; }
  std::map<int, YearTotals>& totals() { return totals_; }
  int max_order() const { return max_order_; }
  bool with_postings() const { return with_postings_; }

 private:
  Cell& cell_for(std::string_view text, int order, int year);

  int max_order_;
  bool with_postings_;
  std::unordered_map<std::string, Entry, StringHash, std::equal_to<>> grams_;
  std::map<int, YearTotals> totals_;
};

/// Turns accumulated state into an immutable CorpusIndex.
class IndexAssembler {
 public:
  static CorpusIndex assemble(std::string corpus_id, int max_order, bool has_postings,
                              std::vector<DocumentMeta> documents, GramAccumulator&& acc);

  /// Used by load_index, whose input is already sorted.
  static CorpusIndex from_sorted(std::string corpus_id, int max_order, bool has_postings,
                                 std::vector<DocumentMeta> documents,
                                 std::vector<GramRecord> grams, std::map<int, YearTotals> totals);
};

}  // namespace ngramscope

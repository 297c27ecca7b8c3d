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

#include <array>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ngramscope/extract.hpp"

namespace ngramscope {

inline constexpr int kMinYear = 1400;
inline constexpr int kMaxYear = 2100;

struct DocumentMeta {
  std::string doc_id;
  std::string title;
  int year = 0;
  std::optional<std::string> language;
  // Location of the plain-text body. Empty for documents that were not
  // ingested from files.
  std::string path;

  friend bool operator==(const DocumentMeta&, const DocumentMeta&) = default;
};

struct YearlyCount {
  std::uint64_t match_count = 0;
  std::uint64_t volume_count = 0;

  friend bool operator==(const YearlyCount&, const YearlyCount&) = default;
};

struct YearTotals {
  int year = 0;
  // total_matches[n - 1] is the number of order-n windows printed that year.
  std::array<std::uint64_t, kMaxOrder> total_matches{};
  std::uint64_t volumes = 0;

  std::uint64_t matches_for_order(int order) const {
    return order >= 1 && order <= kMaxOrder ? total_matches[order - 1] : 0;
  }

  friend bool operator==(const YearTotals&, const YearTotals&) = default;
};

struct YearCell {
  int year = 0;
  YearlyCount count;
  // Indices into CorpusIndex::documents(), ascending. Empty when the index
  // carries no postings.
  std::vector<std::uint32_t> docs;

  friend bool operator==(const YearCell&, const YearCell&) = default;
};

struct GramRecord {
  std::string text;  // canonical form
  int order = 0;
  std::vector<YearCell> cells;  // ascending by year

  const YearCell* cell(int year) const;
  std::uint64_t total_matches() const;

  friend bool operator==(const GramRecord&, const GramRecord&) = default;
};

struct YearSpan {
  int min_year = 0;
  int max_year = 0;

  friend bool operator==(const YearSpan&, const YearSpan&) = default;
};

/// One line of a JSON Lines corpus manifest.
struct ManifestEntry {
  std::string doc_id;
  std::string title;
  int year = 0;
  std::optional<std::string> language;
  std::filesystem::path path;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;

  /// Reads a JSON Lines manifest. Relative document paths resolve against
  /// the manifest's directory. Throws kManifest naming the offending line.
  static CorpusManifest read(const std::filesystem::path& file);
  static CorpusManifest parse(std::istream& in, const std::filesystem::path& base_dir);
};

/// Immutable per-year n-gram count index.
///
/// Grams are kept sorted by (order, canonical text); each gram's year cells
/// are sorted by year. Instances are created by build_index, import_gb_tsv or
/// load_index and are safe to share between threads.
class CorpusIndex {
 public:
  CorpusIndex(const CorpusIndex&) = delete;
  CorpusIndex& operator=(const CorpusIndex&) = delete;
  CorpusIndex(CorpusIndex&&) noexcept;
  CorpusIndex& operator=(CorpusIndex&&) noexcept;
  ~CorpusIndex();

  const std::string& corpus_id() const noexcept { return corpus_id_; }
  int max_order() const noexcept { return max_order_; }
  bool has_postings() const noexcept { return has_postings_; }
  std::optional<YearSpan> year_span() const noexcept { return year_span_; }

  /// Sorted by doc_id.
  std::span<const DocumentMeta> documents() const noexcept { return documents_; }
  std::span<const GramRecord> grams() const noexcept { return grams_; }
  const std::map<int, YearTotals>& totals() const noexcept { return totals_; }

  const GramRecord* find(std::string_view canonical) const;
  const YearTotals* totals_for(int year) const;

  /// All grams of the given order whose canonical text starts with `prefix`.
  std::span<const GramRecord> with_prefix(int order, std::string_view prefix) const;

  /// Grams whose per-code-point case folding equals fold_case(canonical).
  /// The folding table is built on first use.
  std::vector<const GramRecord*> case_variants(std::string_view canonical) const;
  /// Builds the case-fold table now instead of on the first case_variants call.
  void warm_case_folding() const;

 private:
  friend class IndexAssembler;
  CorpusIndex();

  void finalize();

  std::string corpus_id_;
  int max_order_ = kMaxOrder;
  bool has_postings_ = false;
  std::optional<YearSpan> year_span_;
  std::vector<DocumentMeta> documents_;
  std::vector<GramRecord> grams_;
  std::map<int, YearTotals> totals_;
  std::unordered_map<std::string_view, std::uint32_t> lookup_;

  struct FoldTable;
  mutable std::unique_ptr<std::once_flag> fold_once_;
  mutable std::unique_ptr<FoldTable> fold_table_;
};

struct BuildOptions {
  std::string corpus_id;
  int max_order = kMaxOrder;
  bool with_postings = false;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Tokenizes every manifest document, counts its n-grams under its print
/// year, and accumulates per-year totals. The result does not depend on the
/// manifest order or thread count.
CorpusIndex build_index(const CorpusManifest& manifest, const BuildOptions& options);

/// Builds from in-memory texts; `texts[i]` is the body of `docs[i]`.
CorpusIndex build_index_from_texts(std::vector<DocumentMeta> docs,
                                   const std::vector<std::string>& texts,
                                   const BuildOptions& options);

/// Imports Google Books export rows (`ngram TAB year TAB match_count TAB
/// volume_count`) and a totals table (`year TAB m1,..,m5 TAB volumes`). The
/// imported index has no documents and no postings.
CorpusIndex import_gb_tsv(std::istream& rows, std::istream& totals, std::string corpus_id);

inline constexpr std::string_view kCountsFile = "counts.tsv";
inline constexpr std::string_view kTotalsFile = "totals.tsv";
inline constexpr std::string_view kPostingsFile = "postings.tsv";
inline constexpr std::string_view kManifestFile = "manifest.json";

void save_index(const CorpusIndex& index, const std::filesystem::path& directory);
CorpusIndex load_index(const std::filesystem::path& directory);

/// Summary read from manifest.json alone, without loading counts.
struct IndexSummary {
  std::string corpus_id;
  int max_order = 0;
  std::optional<YearSpan> year_span;
  std::size_t document_count = 0;
  bool has_postings = false;
};

IndexSummary read_index_summary(const std::filesystem::path& directory);

}  // namespace ngramscope

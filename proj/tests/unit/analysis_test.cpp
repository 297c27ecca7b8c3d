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
#include <atomic>
#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ngramscope/analysis.hpp"
#include "ngramscope/error.hpp"

namespace ngramscope {
namespace {

using testing::TempDir;

CorpusIndex index_of(const testing::TextCorpus& c, int max_order = 5, bool postings = true) {
  return build_index_from_texts(c.docs, c.texts, BuildOptions{"a", max_order, postings, 1});
}

// Next-word counts by scanning every document's word list directly.
std::map<std::string, std::uint64_t> next_word_oracle(const testing::TextCorpus& c,
                                                      const std::vector<std::string>& history) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& text : c.texts) {
    const auto words = testing::split_spaces(text);
    for (std::size_t i = 0; i + history.size() < words.size(); ++i) {
      bool match = true;
      for (std::size_t k = 0; k < history.size() && match; ++k) match = words[i + k] == history[k];
      if (match) ++counts[words[i + history.size()]];
    }
  }
  return counts;
}

void expect_matches_oracle(const CompletionDistribution& got,
                           const std::map<std::string, std::uint64_t>& counts) {
  std::uint64_t support = 0;
  for (const auto& [w, n] : counts) support += n;
  ASSERT_EQ(got.support_count, support);
  ASSERT_EQ(got.entries.size(), counts.size());
  double sum = 0;
  for (const auto& e : got.entries) {
    const auto it = counts.find(e.symbol);
    ASSERT_NE(it, counts.end()) << e.symbol;
    ASSERT_NEAR(e.probability, static_cast<double>(it->second) / static_cast<double>(support), 1e-12);
    sum += e.probability;
  }
  if (support > 0) ASSERT_NEAR(sum, 1.0, 1e-9);
  for (std::size_t i = 1; i < got.entries.size(); ++i) {
    const auto& a = got.entries[i - 1];
    const auto& b = got.entries[i];
    ASSERT_TRUE(a.probability > b.probability || (a.probability == b.probability && a.symbol < b.symbol));
  }
}

TEST(Complete, WordWorkedExample) {
  testing::TextCorpus c;
  c.docs = {DocumentMeta{"a", "", 1900, {}, ""}};
  c.texts = {"the cat sat . the cat ran . the dog sat"};
  const auto index = index_of(c);
  const auto d = complete(index, "the", CompletionUnit::kWord, 0);
  EXPECT_EQ(d.history, (std::vector<std::string>{"the"}));
  EXPECT_EQ(d.support_count, 3u);
  ASSERT_EQ(d.entries.size(), 2u);
  EXPECT_EQ(d.entries[0], (CompletionEntry{"cat", 2.0 / 3}));
  EXPECT_EQ(d.entries[1], (CompletionEntry{"dog", 1.0 / 3}));

  const auto top1 = complete(index, "the", CompletionUnit::kWord, 1);
  ASSERT_EQ(top1.entries.size(), 1u);
  EXPECT_EQ(top1.support_count, 3u);

  const auto none = complete(index, "unicorn", CompletionUnit::kWord, 5);
  EXPECT_TRUE(none.entries.empty());
  EXPECT_EQ(none.support_count, 0u);
}

TEST(Complete, WordMatchesBruteForce) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    const auto corpus = testing::random_corpus(rng, 25, 120);
    const auto index = index_of(corpus, 4, false);
    for (const std::vector<std::string>& history :
         {std::vector<std::string>{"the"}, {"Cat"}, {"the", "cat"}, {"a", "dog", "ran"}, {"of", "and"}}) {
      std::string h;
      for (const auto& w : history) h += (h.empty() ? "" : " ") + w;
      SCOPED_TRACE(h);
      expect_matches_oracle(complete(index, h, CompletionUnit::kWord, 0), next_word_oracle(corpus, history));
    }
  }
}

TEST(Complete, HistoryValidation) {
  testing::TextCorpus c;
  c.docs = {DocumentMeta{"a", "", 1900, {}, ""}};
  c.texts = {"a b c"};
  const auto index = index_of(c, 3);
  EXPECT_THROW(complete(index, "", CompletionUnit::kWord, 1), Error);
  EXPECT_THROW(complete(index, "a b c", CompletionUnit::kWord, 1), Error);
  EXPECT_NO_THROW(complete(index, "a b", CompletionUnit::kWord, 1));
  try {
    complete(index, "a", CompletionUnit::kChar, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapability);
  }
  EXPECT_EQ(parse_completion_unit("char"), CompletionUnit::kChar);
  EXPECT_THROW(parse_completion_unit("byte"), Error);
}

TEST(Complete, CharSymbolsNormalizeWhitespace) {
  EXPECT_EQ(char_symbols("  a \t\nb  "), (std::vector<std::string>{"a", " ", "b"}));
  EXPECT_EQ(char_symbols("é!"), (std::vector<std::string>{"é", "!"}));
  EXPECT_TRUE(char_symbols(" \n ").empty());
}

TEST(Complete, CharUnitOverCorpusMatchesPerDocumentScan) {
  TempDir dir;
  const std::vector<std::string> texts = {"the theme  then", "thesis\nthe", "other ether"};
  const auto disk = testing::write_corpus(
      dir, {DocumentMeta{"x", "", 1900, {}, ""}, DocumentMeta{"y", "", 1901, {}, ""}, DocumentMeta{"z", "", 1902, {}, ""}},
      texts);
  const auto index = build_index(CorpusManifest::read(disk.manifest), BuildOptions{"c", 5, true, 1});
  const CharModelCache cache(index);
  for (const std::string history : {"th", "the", "he ", "e", "zz"}) {
    SCOPED_TRACE(history);
    std::map<std::string, std::uint64_t> counts;
    // ASCII histories: one symbol per byte, trailing space kept.
    std::vector<std::string> h;
    for (char ch : history) h.emplace_back(1, ch);
    for (const auto& text : texts) {
      // Per-document scan over the symbol vector; histories never span documents.
      const auto s = char_symbols(text);
      for (std::size_t i = 0; i + h.size() < s.size(); ++i) {
        if (std::equal(h.begin(), h.end(), s.begin() + static_cast<std::ptrdiff_t>(i))) ++counts[s[i + h.size()]];
      }
    }
    expect_matches_oracle(complete(index, history, CompletionUnit::kChar, 0, &cache), counts);
    expect_matches_oracle(complete(index, history, CompletionUnit::kChar, 0), counts);
  }
  EXPECT_THROW(complete(index, "0123456789", CompletionUnit::kChar, 0, &cache), Error);
}

TEST(Complete, CacheIsSafeUnderConcurrentReaders) {
  TempDir dir;
  const auto disk = testing::write_corpus(dir, {DocumentMeta{"x", "", 1900, {}, ""}}, {"abracadabra arbor"});
  const auto index = build_index(CorpusManifest::read(disk.manifest), BuildOptions{"c", 5, true, 1});
  const CharModelCache cache(index);
  const auto expected = complete(index, "ab", CompletionUnit::kChar, 0);
  std::vector<std::thread> readers;
  std::atomic<int> mismatches = 0;
  for (int t = 0; t < 4; ++t) {
    readers.emplace_back([&] {
      for (int i = 0; i < 50; ++i) {
        if (complete(index, "ab", CompletionUnit::kChar, 0, &cache).entries != expected.entries) ++mismatches;
      }
    });
  }
  for (auto& r : readers) r.join();
  EXPECT_EQ(mismatches.load(), 0);
  ASSERT_EQ(expected.entries.size(), 1u);
  EXPECT_EQ(expected.entries[0], (CompletionEntry{"r", 1.0}));
}

TEST(CompleteText, WordAndCharUnits) {
  const auto w = complete_text("to be or not to be", "to", CompletionUnit::kWord, 0);
  ASSERT_EQ(w.entries.size(), 1u);
  EXPECT_EQ(w.entries[0], (CompletionEntry{"be", 1.0}));
  const auto c = complete_text("abab", "a", CompletionUnit::kChar, 0);
  EXPECT_EQ(c.support_count, 2u);
  EXPECT_EQ(c.entries[0], (CompletionEntry{"b", 1.0}));
}

// --- spikes -------------------------------------------------------------------

FrequencySeries series_of(std::vector<double> values, int start = 1800) {
  FrequencySeries s;
  s.phrase = "p";
  s.start_year = start;
  s.end_year = start + static_cast<int>(values.size()) - 1;
  s.values = std::move(values);
  return s;
}

TEST(Spikes, FlatSeriesHasNone) {
  EXPECT_TRUE(spikes(series_of(std::vector<double>(30, 0.5)), 5).empty());
  EXPECT_TRUE(spikes(series_of(std::vector<double>(30, 0.0)), 5).empty());
}

TEST(Spikes, IsolatedPeakOverBaseline) {
  std::vector<double> v(21, 1.0);
  v[10] = 50.0;
  const auto found = spikes(series_of(v), 5);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0], (Spike{1810, 50.0}));
  v[10] = 9.0;
  EXPECT_TRUE(spikes(series_of(v), 5).empty());
}

TEST(Spikes, PositiveValueOverZeroNeighbourhoodAlwaysFlags) {
  std::vector<double> v(40, 0.0);
  v[3] = 0.002;
  for (std::size_t i = 30; i < 40; ++i) v[i] = 0.004;
  const auto found = spikes(series_of(v, 1590), 5);
  ASSERT_FALSE(found.empty());
  EXPECT_EQ(found[0].year, 1593);
  EXPECT_DOUBLE_EQ(found[0].score, 1.0);
  for (const auto& s : found) EXPECT_NE(s.year, 1625);
}

TEST(Spikes, ScaleInvariant) {
  std::mt19937_64 rng(12);
  std::exponential_distribution<double> value(1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(40);
    for (auto& x : v) x = value(rng) * (rng() % 9 == 0 ? 40 : 1);
    std::vector<double> scaled = v;
    for (auto& x : scaled) x *= 1024.0;
    const auto a = spikes(series_of(v), 4);
    const auto b = spikes(series_of(scaled), 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_EQ(a[i].year, b[i].year);
      ASSERT_NEAR(a[i].score, b[i].score, 1e-9 * a[i].score);
    }
  }
}

TEST(Spikes, ParameterErrors) {
  EXPECT_THROW(spikes(series_of({1, 2}), 5), Error);
  EXPECT_THROW(spikes(series_of({1, 2, 3}), 0), Error);
  EXPECT_THROW(spikes(series_of({1, 2, 3}), 1, 1.0), Error);
}

// --- misdating ----------------------------------------------------------------

TEST(FindMisdated, PlantedVolumeIsTheOnlyReport) {
  const auto index = index_of(testing::frankenstein_corpus());
  const auto reports = find_misdated(index, "Frankenstein");
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].year, 1594);
  EXPECT_EQ(reports[0].doc_ids, (std::vector<std::string>{testing::kPlantedDocId}));
  EXPECT_EQ(reports[0].nearest_other_year, 1818);
  EXPECT_EQ(reports[0].gap, 224);
  EXPECT_EQ(reports[0].volume_count, 1u);
  EXPECT_FALSE(reports[0].note.empty());

  const auto docs = documents(index, "Frankenstein", 1500, 1796);
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].doc_id, testing::kPlantedDocId);
  EXPECT_EQ(docs[0].year, 1594);
}

TEST(FindMisdated, NothingForContinuousOrAbsentPhrases) {
  const auto index = index_of(testing::frankenstein_corpus());
  EXPECT_TRUE(find_misdated(index, "the").empty());
  EXPECT_TRUE(find_misdated(index, "zeppelin").empty());
  // Single year of use only: nothing to compare against.
  EXPECT_TRUE(find_misdated(index, "pontoons").empty());
  EXPECT_THROW(find_misdated(index, "", 10, 50), Error);
  EXPECT_THROW(find_misdated(index, "a", 0, 50), Error);
}

TEST(FindMisdated, GapThresholds) {
  testing::TextCorpus c;
  for (int y : {1600, 1660, 1661, 1662}) {
    c.docs.push_back(DocumentMeta{"d" + std::to_string(y), "", y, {}, ""});
    c.texts.push_back("word");
  }
  const auto index = index_of(c);
  EXPECT_EQ(find_misdated(index, "word", 10, 50).size(), 1u);
  EXPECT_TRUE(find_misdated(index, "word", 10, 61).empty());
  EXPECT_TRUE(find_misdated(index, "word", 60, 50).empty());
}

TEST(Documents, RangeFilterAndCapability) {
  const auto index = index_of(testing::frankenstein_corpus());
  const auto docs = documents(index, "Frankenstein", 1818, 1820);
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].doc_id, "novel-1818");
  EXPECT_EQ(docs[2].doc_id, "novel-1820");
  EXPECT_TRUE(documents(index, "zeppelin", 1500, 1900).empty());
  EXPECT_THROW(documents(index, "Frankenstein", 1900, 1800), Error);

  const auto no_postings = index_of(testing::frankenstein_corpus(), 5, false);
  try {
    documents(no_postings, "Frankenstein", 1500, 1900);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapability);
  }
}

}  // namespace
}  // namespace ngramscope

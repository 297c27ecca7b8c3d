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

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ngramscope/error.hpp"
#include "ngramscope/query.hpp"

namespace ngramscope {
namespace {

using Values = std::vector<double>;

// Direct definition: every output is the mean of the in-range samples.
Values smooth_oracle(const Values& raw, int k) {
  Values out(raw.size());
  const auto n = static_cast<long>(raw.size());
  for (long i = 0; i < n; ++i) {
    double sum = 0;
    int count = 0;
    for (long j = i - k; j <= i + k; ++j) {
      if (j >= 0 && j < n) {
        sum += raw[static_cast<std::size_t>(j)];
        ++count;
      }
    }
    out[static_cast<std::size_t>(i)] = sum / count;
  }
  return out;
}

TEST(Smooth, WorkedExamples) {
  EXPECT_EQ(smooth(Values{0, 0, 9, 0, 0}, 1), (Values{0, 3, 3, 3, 0}));
  EXPECT_EQ(smooth(Values{9, 0, 0}, 1), (Values{4.5, 3, 0}));
  EXPECT_EQ(smooth(Values{1, 2, 3}, 0), (Values{1, 2, 3}));
  EXPECT_TRUE(smooth(Values{}, 3).empty());
  EXPECT_EQ(smooth(Values{6}, 4), (Values{6}));
}

TEST(Smooth, MatchesDefinitionOnRandomSeries) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> value(0, 1);
  std::uniform_int_distribution<int> width(0, 8), length(0, 40);
  for (int trial = 0; trial < 500; ++trial) {
    Values raw(static_cast<std::size_t>(length(rng)));
    for (auto& v : raw) v = value(rng);
    const int k = width(rng);
    const auto got = smooth(raw, k);
    const auto want = smooth_oracle(raw, k);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-12);
  }
}

TEST(Smooth, ConstantSeriesIsAFixedPointAndMassIsBounded) {
  const Values constant(25, 0.25);
  for (int k = 0; k < 6; ++k) EXPECT_EQ(smooth(constant, k), constant);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> value(0, 1);
  Values raw(30);
  for (auto& v : raw) v = value(rng);
  const auto out = smooth(raw, 3);
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  for (double v : out) {
    EXPECT_GE(v, *lo - 1e-12);
    EXPECT_LE(v, *hi + 1e-12);
  }
}

TEST(Smooth, RejectsNegativeWindow) { EXPECT_THROW(smooth(Values{1}, -1), Error); }

TEST(ParseQuery, SplitsOnCommasAndReadsMarkers) {
  const auto q = parse_query(" Frankenstein , Sherlock Holmes:ci,the  cat ", 5);
  ASSERT_EQ(q.phrases.size(), 3u);
  EXPECT_EQ(q.phrases[0].ngram.text(), "Frankenstein");
  EXPECT_FALSE(q.phrases[0].case_insensitive);
  EXPECT_EQ(q.phrases[1].ngram.text(), "Sherlock Holmes");
  EXPECT_TRUE(q.phrases[1].case_insensitive);
  EXPECT_EQ(q.phrases[1].label(), "Sherlock Holmes:ci");
  EXPECT_EQ(q.phrases[2].label(), "the cat");
}

TEST(ParseQuery, Errors) {
  for (const char* bad : {"", "   ", "a,,b", "a,", "a b c d e f"}) {
    try {
      parse_query(bad, 5);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kParse) << bad;
    }
  }
  EXPECT_THROW(parse_query("a b c", 2), Error);
}

TEST(PhraseQuery, Validate) {
  PhraseQuery q = parse_query("a", 5);
  EXPECT_NO_THROW(q.validate(5));
  q.start_year = 1900;
  q.end_year = 1800;
  EXPECT_THROW(q.validate(5), Error);
  q = parse_query("a", 5);
  q.smoothing = -1;
  EXPECT_THROW(q.validate(5), Error);
  q.smoothing = 0;
  q.start_year = -1000000;
  EXPECT_THROW(q.validate(5), Error);
}

TEST(Normalization, ParseAndName) {
  EXPECT_EQ(parse_normalization("tokens"), Normalization::kTokens);
  EXPECT_EQ(parse_normalization("volumes"), Normalization::kVolumes);
  EXPECT_EQ(to_string(Normalization::kVolumes), "volumes");
  EXPECT_THROW(parse_normalization("words"), Error);
}

CorpusIndex index_of(const testing::TextCorpus& c, int max_order = 5) {
  return build_index_from_texts(c.docs, c.texts, BuildOptions{"q", max_order, false, 1});
}

testing::TextCorpus small_corpus() {
  testing::TextCorpus c;
  c.docs = {DocumentMeta{"a", "", 1900, {}, ""}, DocumentMeta{"b", "", 1900, {}, ""},
            DocumentMeta{"c", "", 1902, {}, ""}};
  c.texts = {"the cat sat", "the dog", "The Cat the cat"};
  return c;
}

TEST(Series, TokenNormalizationByHand) {
  const auto index = index_of(small_corpus());
  PhraseQuery q = parse_query("the, the cat", 5);
  q.start_year = 1899;
  q.end_year = 1902;
  q.smoothing = 0;
  const auto out = series(index, q);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].phrase, "the");
  EXPECT_EQ(out[0].values, (Values{0, 2.0 / 5, 0, 1.0 / 4}));
  EXPECT_EQ(out[0].missing_years, (std::vector<int>{1899, 1901}));
  EXPECT_EQ(out[1].values, (Values{0, 1.0 / 3, 0, 1.0 / 3}));
}

TEST(Series, CaseInsensitiveSumsVariants) {
  const auto index = index_of(small_corpus());
  PhraseQuery q = parse_query("the cat:ci", 5);
  q.start_year = 1902;
  q.end_year = 1902;
  q.smoothing = 0;
  EXPECT_EQ(series(index, q)[0].values, (Values{2.0 / 3}));
  EXPECT_EQ(series(index, q)[0].phrase, "the cat:ci");

  q = parse_query("THE CAT", 5);
  q.case_insensitive = true;
  q.start_year = 1902;
  q.end_year = 1902;
  q.smoothing = 0;
  EXPECT_EQ(series(index, q)[0].values, (Values{2.0 / 3}));
}

TEST(Series, VolumeNormalization) {
  const auto index = index_of(small_corpus());
  PhraseQuery q = parse_query("the", 5);
  q.start_year = 1900;
  q.end_year = 1900;
  q.smoothing = 0;
  q.normalization = Normalization::kVolumes;
  EXPECT_EQ(series(index, q)[0].values, (Values{2.0 / 2}));
}

TEST(Series, UnknownPhraseIsZeroNotError) {
  const auto index = index_of(small_corpus());
  PhraseQuery q = parse_query("zebra", 5);
  q.start_year = 1900;
  q.end_year = 1902;
  const auto out = series(index, q);
  EXPECT_EQ(out[0].values, (Values{0, 0, 0}));
}

TEST(Series, SmoothingAppliesAfterNormalization) {
  const auto index = index_of(small_corpus());
  PhraseQuery q = parse_query("the", 5);
  q.start_year = 1899;
  q.end_year = 1902;
  q.smoothing = 1;
  const auto raw = raw_series(index, q.phrases[0], 1899, 1902, Normalization::kTokens);
  EXPECT_EQ(series(index, q)[0].values, smooth_oracle(raw.values, 1));
}

// Independent oracle: frequency = brute-force count / brute-force total,
// and unigram frequencies of one year sum to one.
TEST(Series, MatchesBruteForceAndUnigramsSumToOne) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    const auto corpus = testing::random_corpus(rng, 30, 100);
    const auto index = index_of(corpus, 3);
    const auto counts = testing::brute_force_counts(corpus, 3);
    std::map<std::pair<int, int>, double> totals;  // (year, order)
    std::map<int, std::vector<std::string>> unigrams_by_year;
    for (const auto& [key, c] : counts) {
      const int order = static_cast<int>(testing::split_spaces(key.first).size());
      totals[{key.second, order}] += static_cast<double>(c.match_count);
      if (order == 1) unigrams_by_year[key.second].push_back(key.first);
    }
    for (const auto& [key, c] : counts) {
      const int order = static_cast<int>(testing::split_spaces(key.first).size());
      const auto s = raw_series(index, PhraseSpec{Ngram::from_text(key.first), false}, key.second,
                                key.second, Normalization::kTokens);
      const double expected = static_cast<double>(c.match_count) / totals[{key.second, order}];
      ASSERT_NEAR(s.values[0], expected, 1e-12);
    }
    for (const auto& [year, words] : unigrams_by_year) {
      double sum = 0;
      for (const auto& w : words) {
        sum += raw_series(index, PhraseSpec{Ngram::from_text(w), false}, year, year,
                          Normalization::kTokens)
                   .values[0];
      }
      ASSERT_NEAR(sum, 1.0, 1e-9) << year;
    }
  }
}

}  // namespace
}  // namespace ngramscope

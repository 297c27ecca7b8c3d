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

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "ngramscope/analysis.hpp"
#include "ngramscope/query.hpp"
#include "ngramscope/store.hpp"

namespace {

using namespace ngramscope;

struct Synthetic {
  std::vector<DocumentMeta> docs;
  std::vector<std::string> texts;
};

// Zipf-like vocabulary so frequent n-grams repeat the way real text does.
Synthetic make_corpus(int documents, int tokens_per_doc) {
  std::mt19937_64 rng(42);
  std::vector<double> weights(5000);
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = 1.0 / static_cast<double>(i + 1);
  std::discrete_distribution<int> word(weights.begin(), weights.end());
  std::uniform_int_distribution<int> year(1800, 1900);
  Synthetic s;
  for (int d = 0; d < documents; ++d) {
    std::string text;
    for (int t = 0; t < tokens_per_doc; ++t) {
      if (t) text.push_back(' ');
      text += "w" + std::to_string(word(rng));
    }
    s.docs.push_back(DocumentMeta{"d" + std::to_string(d), "", year(rng), {}, ""});
    s.texts.push_back(std::move(text));
  }
  return s;
}

void BM_Tokenize(benchmark::State& state) {
  const auto corpus = make_corpus(1, 10000);
  for (auto _ : state) benchmark::DoNotOptimize(tokenize(corpus.texts[0]));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Tokenize);

void BM_BuildIndex(benchmark::State& state) {
  const auto corpus = make_corpus(100, 1000);
  const int max_order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto index = build_index_from_texts(corpus.docs, corpus.texts, BuildOptions{"b", max_order, true, 1});
    benchmark::DoNotOptimize(index.grams().size());
  }
  state.SetItemsProcessed(state.iterations() * 100 * 1000);
}
BENCHMARK(BM_BuildIndex)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Series(benchmark::State& state) {
  const auto corpus = make_corpus(200, 1000);
  const auto index = build_index_from_texts(corpus.docs, corpus.texts, BuildOptions{"b", 3, false, 1});
  auto query = parse_query("w0, w1 w0, w2:ci", 3);
  series(index, query);  // builds the lazy case-fold table
  for (auto _ : state) benchmark::DoNotOptimize(series(index, query));
}
BENCHMARK(BM_Series);

void BM_CompleteWord(benchmark::State& state) {
  const auto corpus = make_corpus(200, 1000);
  const auto index = build_index_from_texts(corpus.docs, corpus.texts, BuildOptions{"b", 3, false, 1});
  for (auto _ : state) benchmark::DoNotOptimize(complete(index, "w0", CompletionUnit::kWord, 10));
}
BENCHMARK(BM_CompleteWord);

}  // namespace

BENCHMARK_MAIN();

// Copyright 2026 The tierbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>

#include <gtest/gtest.h>

#include "tierbench/tokenmodel/markov_model.hpp"
#include "tierbench/tokenmodel/token_distribution.hpp"
#include "tierbench/util/error.hpp"
#include "tierbench/util/random.hpp"
#include "tierbench/util/resources.hpp"

namespace tierbench::tokenmodel {
namespace {

using Tokens = std::vector<std::string>;

TEST(TokenDistribution, SortsByProbabilityThenToken) {
  const auto d = TokenDistribution::from_weights({{"c", 1}, {"a", 2}, {"b", 1}});
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].token, "a");
  EXPECT_EQ(d[1].token, "b");
  EXPECT_EQ(d[2].token, "c");
  EXPECT_DOUBLE_EQ(d.probability_of("a"), 0.5);
  EXPECT_EQ(d.probability_of("zzz"), 0.0);
}

TEST(TokenDistribution, RejectsBadInput) {
  EXPECT_THROW(TokenDistribution::from_weights({}), InvalidArgument);
  EXPECT_THROW(TokenDistribution::from_weights({{"a", 0.0}}), InvalidArgument);
  EXPECT_THROW(TokenDistribution::from_weights({{"a", 1}, {"a", 1}}), InvalidArgument);
  EXPECT_THROW(TokenDistribution::from_probabilities({{"a", 0.5}, {"b", 0.4}}), InvalidArgument);
}

TEST(TokenDistribution, TopRenormalizesAndSumsToOne) {
  util::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<TokenProb> w;
    const auto n = 1 + rng.below(12);
    for (std::size_t i = 0; i < n; ++i) w.push_back({"t" + std::to_string(i), 0.01 + rng.uniform()});
    const auto d = TokenDistribution::from_weights(w);
    for (std::size_t top = 1; top <= n + 2; ++top) {
      const auto cut = d.top(top);
      double sum = 0;
      for (const auto& e : cut.entries()) sum += e.probability;
      ASSERT_NEAR(sum, 1.0, 1e-9);
      ASSERT_EQ(cut.size(), std::min<std::size_t>(top, n));
      for (std::size_t i = 1; i < cut.size(); ++i) {
        ASSERT_GE(cut[i - 1].probability, cut[i].probability);
      }
    }
  }
}

TEST(Markov, BigramFromAlternatingCorpus) {
  const auto m = train_markov("a b a b", 1, Tokenizer::kWhitespace);
  const Tokens ctx{"a"};
  const auto d = m.next_distribution(ctx, 5);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].token, "b");
  EXPECT_EQ(d[0].probability, 1.0);
}

TEST(Markov, UnseenContextIsUniformOverVocabulary) {
  const auto m = train_markov("a b a b c", 1, Tokenizer::kWhitespace);
  const Tokens ctx{"c"};
  const auto d = m.next_distribution(ctx, 10);
  ASSERT_EQ(d.size(), 3u);
  for (const auto& e : d.entries()) EXPECT_DOUBLE_EQ(e.probability, 1.0 / 3.0);
  EXPECT_EQ(d[0].token, "a");
}

TEST(Markov, TopOneIsASingleton) {
  const auto m = train_markov("a b a c a b", 1, Tokenizer::kWhitespace);
  const Tokens ctx{"a"};
  const auto d = m.next_distribution(ctx, 1);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].token, "b");
  EXPECT_EQ(d[0].probability, 1.0);
  EXPECT_THROW(m.next_distribution(ctx, 0), InvalidArgument);
}

TEST(Markov, LogLikelihoodUsesUniformStartAndObservedBigram) {
  const auto m = train_markov("a b a b", 1, Tokenizer::kWhitespace);
  const Tokens seq{"a", "b"};
  // No padding: the first token has an empty context, which falls back to
  // uniform over {a, b}; P(b | a) = 1.
  EXPECT_DOUBLE_EQ(log_likelihood(m, seq), (std::log(0.5) + std::log(1.0)) / 2.0);
}

TEST(Markov, SingleTokenUnderUniformFallback) {
  const auto m = train_markov("p q r s t", 1, Tokenizer::kWhitespace);
  const Tokens seq{"r"};
  EXPECT_DOUBLE_EQ(log_likelihood(m, seq), std::log(1.0 / 5.0));
}

TEST(Markov, OutOfVocabularyTokenIsFloored) {
  const auto m = train_markov("a b a b", 1, Tokenizer::kWhitespace);
  const Tokens ctx{"a"};
  EXPECT_DOUBLE_EQ(m.conditional_log_prob(ctx, "zebra"), std::log(1e-12));
  EXPECT_DOUBLE_EQ(m.conditional_log_prob(ctx, "a"), std::log(1e-12));
}

TEST(Markov, HandCountedOrderOneAndTwo) {
  const auto m1 = train_markov("x y x y x", 1, Tokenizer::kWhitespace);
  EXPECT_EQ(m1.next_distribution(Tokens{"x"}, 5).probability_of("y"), 1.0);
  EXPECT_EQ(m1.next_distribution(Tokens{"y"}, 5).probability_of("x"), 1.0);
  const auto m2 = train_markov("x y x y x", 2, Tokenizer::kWhitespace);
  EXPECT_EQ(m2.next_distribution(Tokens{"x", "y"}, 5).probability_of("x"), 1.0);
}

TEST(Markov, EmptyCorpusIsAnError) {
  EXPECT_THROW(train_markov("", 1, Tokenizer::kWhitespace), InvalidArgument);
  EXPECT_THROW(train_markov("a b", 0, Tokenizer::kWhitespace), InvalidArgument);
}

TEST(Markov, EndTokenExistsOnlyWhenSpelledOut) {
  const auto with_end = train_markov("a b </s> a c </s>", 1, Tokenizer::kWhitespace);
  EXPECT_EQ(with_end.end_token(), "</s>");
  const auto greedy = with_end.greedy(Tokens{"a"}, 10);
  ASSERT_FALSE(greedy.empty());
  for (const auto& t : greedy) EXPECT_NE(t, "</s>");
}

TEST(Markov, CharacterTokenizerRoundTrips) {
  const auto m = train_markov("abcabd", 2, Tokenizer::kCharacter);
  const auto toks = m.tokenize("abd");
  EXPECT_EQ(toks, (Tokens{"a", "b", "d"}));
  EXPECT_EQ(m.detokenize(toks), "abd");
}

TEST(Markov, DistributionsAreDeterministicAndSorted) {
  const auto corpus = std::string(util::resource("corpus/toy_markov.txt"));
  const auto m = train_markov(corpus, 2, Tokenizer::kWhitespace);
  for (const auto& ctx : m.contexts()) {
    const auto a = m.next_distribution(ctx, 8);
    ASSERT_EQ(a, m.next_distribution(ctx, 8));
    for (std::size_t i = 1; i < a.size(); ++i) {
      ASSERT_TRUE(a[i - 1].probability > a[i].probability ||
                  (a[i - 1].probability == a[i].probability && a[i - 1].token < a[i].token));
    }
  }
}

// Greedy decoding maximizes every factor: replacing any greedy token by
// another token under the same context never raises the likelihood.
TEST(Markov, GreedyMaximizesEachFactor) {
  const auto corpus = std::string(util::resource("corpus/toy_markov.txt"));
  const auto m = train_markov(corpus, 2, Tokenizer::kWhitespace);
  util::Rng rng(9);
  const auto contexts = m.contexts();
  const auto& vocab = m.vocabulary();
  for (int trial = 0; trial < 100; ++trial) {
    Tokens seq = contexts[rng.below(contexts.size())];
    const auto prefix = seq.size();
    for (const auto& t : m.greedy(seq, 6)) seq.push_back(t);
    const double greedy_ll = sum_log_likelihood(m, seq, prefix);
    for (std::size_t i = prefix; i < seq.size(); ++i) {
      auto other = seq;
      other[i] = vocab[rng.below(vocab.size())];
      const std::span<const std::string> ctx(seq.data(), i);
      ASSERT_GE(m.conditional_log_prob(ctx, seq[i]), m.conditional_log_prob(ctx, other[i]));
    }
    EXPECT_LE(greedy_ll, 0.0);
  }
}

}  // namespace
}  // namespace tierbench::tokenmodel

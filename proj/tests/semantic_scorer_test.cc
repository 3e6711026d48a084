// Copyright 2026 The vsdstruct Authors.
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


#include "vsd/semantic_scorer.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "vsd/error.h"
#include "vsd/utf8.h"

namespace vsd {
namespace {

TEST(NGram, HandSmoothedProbability) {
  // "aaaa" with order 2 has histories BOS, a, a, a: the bigram (a, a)
  // occurs 3 times and history "a" 3 times. The vocabulary is {a, UNK}.
  const double k = 0.1;
  const auto m = CharNGramModel::Train({"aaaa"}, 2, k);
  EXPECT_EQ(m.VocabularySize(), 2u);
  EXPECT_NEAR(m.Probability(U"a", U'a'), (3 + k) / (3 + k * 2), 1e-12);
  // Unseen character maps to UNK with zero count.
  EXPECT_NEAR(m.Probability(U"a", U'z'), k / (3 + k * 2), 1e-12);
  // Unseen history: uniform over the vocabulary.
  EXPECT_NEAR(m.Probability(U"q", U'a'), 0.5, 1e-12);
}

TEST(NGram, EmptyTargetScoresZero) {
  const auto m = CharNGramModel::Train({"abc"});
  EXPECT_EQ(m.Score("", ""), 0.0);
  EXPECT_EQ(m.Score("abc", ""), 0.0);
}

TEST(NGram, ScoreIsMeanNegativeLogLikelihood) {
  const auto m = CharNGramModel::Train({"ab ab ab"}, 2, 0.1);
  // Context "a" + " " then target "ab": P(a | ' ') and P(b | a).
  const double expected =
      -(std::log(m.Probability(U" ", U'a')) + std::log(m.Probability(U"a", U'b'))) /
      2;
  ASSERT_TRUE(m.Score("a", "ab").has_value());
  EXPECT_NEAR(*m.Score("a", "ab"), expected, 1e-12);
}

TEST(NGram, DistributionsSumToOneProperty) {
  const auto m = CharNGramModel::Train(
      {"The Recipient shall hold the information in confidence.",
       "本契約は締結日に発効する。", "(a) the parties; and"},
      5, 0.1);
  std::mt19937_64 rng(31);
  const auto& vocab = m.vocabulary();
  for (int trial = 0; trial < 200; ++trial) {
    std::u32string history;
    const int len = rng() % 6;
    for (int i = 0; i < len; ++i) history += vocab[rng() % vocab.size()];
    double total = 0;
    for (char32_t c : vocab) total += m.Probability(history, c);
    total += m.Probability(history, U'\U0010FFFD');  // stands in for UNK
    ASSERT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(NGram, JsonRoundTrip) {
  const auto m = CharNGramModel::Train({"hello world", "help"}, 3, 0.2);
  const auto back = CharNGramModel::FromJson(m.ToJson());
  EXPECT_EQ(back.order(), 3);
  EXPECT_DOUBLE_EQ(back.smoothing(), 0.2);
  EXPECT_EQ(back.ToJson(), m.ToJson());
  EXPECT_EQ(back.Score("hel", "lo wor"), m.Score("hel", "lo wor"));
}

TEST(NGram, Errors) {
  EXPECT_THROW(CharNGramModel::Train({""}), Error);
  EXPECT_THROW(CharNGramModel::Train({"abc"}, 0), Error);
  EXPECT_THROW(CharNGramModel::FromJson("{}"), Error);
  EXPECT_THROW(CharNGramModel::FromJson(R"({"version":99})"), Error);
}

TEST(Coherence, IdenticalCurrentAndNextGiveZeroF1) {
  const auto m = CharNGramModel::Train({"one two three four"});
  const std::string prev = "one two", same = "three four";
  const auto f = CoherenceFeatures(&prev, &same, &same, m);
  ASSERT_TRUE(f.has_value());
  EXPECT_DOUBLE_EQ(f->first, 0.0);
}

TEST(Coherence, MissingSlotIsAbsent) {
  const auto m = CharNGramModel::Train({"abc"});
  const std::string a = "a";
  EXPECT_FALSE(CoherenceFeatures(nullptr, &a, &a, m).has_value());
  EXPECT_FALSE(CoherenceFeatures(&a, &a, nullptr, m).has_value());
}

TEST(Coherence, VerbatimContinuationIsPreferred) {
  const std::string text =
      "The Recipient shall keep all Confidential Information in strict "
      "confidence and shall not disclose it to any third party.";
  const auto m = CharNGramModel::Train({text, text, text});
  const std::string prev = "The Recipient shall keep all Confidential";
  const std::string cur = "Information in strict confidence and shall";
  const std::string next = "zqx vkj wpf qqz jjx";
  const auto f = CoherenceFeatures(&prev, &cur, &next, m);
  ASSERT_TRUE(f.has_value());
  EXPECT_LT(f->first, 0);
}

TEST(Coherence, SwappingCurrentAndNextNegatesF1Property) {
  const auto m = CharNGramModel::Train(
      {"alpha beta gamma delta", "beta gamma epsilon"}, 4, 0.1);
  std::mt19937_64 rng(37);
  const std::string letters = "abgdelmt ";
  auto random_text = [&] {
    std::string s(1 + rng() % 12, ' ');
    for (auto& c : s) c = letters[rng() % letters.size()];
    return s;
  };
  for (int trial = 0; trial < 100; ++trial) {
    const auto prev = random_text(), cur = random_text(), next = random_text();
    const auto f = CoherenceFeatures(&prev, &cur, &next, m);
    const auto g = CoherenceFeatures(&prev, &next, &cur, m);
    ASSERT_TRUE(f && g);
    ASSERT_NEAR(f->first, -g->first, 1e-12);
  }
}

TEST(ExternalScorer, SpeaksLineDelimitedJson) {
  ExternalScorer scorer(VSD_FAKE_SCORER);
  EXPECT_EQ(scorer.Score("ctx", "0123456789"), 1.0);
  EXPECT_EQ(scorer.Score("ctx", "abcde"), 0.5);
  const std::string a = "x", b = "abcdefghij", c = "abcde";
  const auto f = CoherenceFeatures(&a, &b, &c, scorer);
  ASSERT_TRUE(f.has_value());
  EXPECT_DOUBLE_EQ(f->first, 0.5);
}

TEST(ExternalScorer, GarbageReplyDisablesScorer) {
  ::setenv("FAKE_SCORER_MODE", "garbage", 1);
  ExternalScorer scorer(VSD_FAKE_SCORER);
  ::unsetenv("FAKE_SCORER_MODE");
  EXPECT_FALSE(scorer.Score("a", "b").has_value());
  EXPECT_FALSE(scorer.Score("a", "b").has_value());
}

TEST(ExternalScorer, ExitedChildDisablesScorer) {
  ::setenv("FAKE_SCORER_MODE", "exit", 1);
  ExternalScorer scorer(VSD_FAKE_SCORER);
  ::unsetenv("FAKE_SCORER_MODE");
  EXPECT_FALSE(scorer.Score("a", "b").has_value());
  EXPECT_FALSE(scorer.Score("a", "b").has_value());
}

TEST(ExternalScorer, MissingCommandFailsToScore) {
  ExternalScorer scorer("/nonexistent/scorer-binary 2>/dev/null");
  EXPECT_FALSE(scorer.Score("a", "b").has_value());
}

}  // namespace
}  // namespace vsd

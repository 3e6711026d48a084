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

#ifndef VSD_SEMANTIC_SCORER_H_
#define VSD_SEMANTIC_SCORER_H_

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <sys/types.h>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vsd {

// Mean negative log-likelihood (nats per token) of `target` given
// `context`. Implementations return nullopt when they cannot score.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::optional<double> Score(std::string_view context,
                                      std::string_view target) const = 0;
};

// Character n-gram model with additive smoothing over the training
// vocabulary plus one unknown symbol. Sequences are left-padded with a
// begin marker; there is no end marker.
class CharNGramModel : public Scorer {
 public:
  static constexpr int kDefaultOrder = 5;
  static constexpr double kDefaultSmoothing = 0.1;

  // Throws vsd::Error when `corpus` holds no characters or order < 1.
  static CharNGramModel Train(const std::vector<std::string>& corpus,
                              int order = kDefaultOrder,
                              double smoothing = kDefaultSmoothing);

  // Scores the characters of `target` after the text `context + " "`.
  // An empty target scores 0.
  std::optional<double> Score(std::string_view context,
                              std::string_view target) const override;

  // P(next | history); only the last order-1 symbols of `history` matter
  // and shorter histories are padded with the begin marker.
  double Probability(std::u32string_view history, char32_t next) const;

  int order() const { return order_; }
  double smoothing() const { return smoothing_; }
  // Vocabulary size including the unknown symbol.
  std::size_t VocabularySize() const { return vocabulary_.size() + 1; }
  const std::vector<char32_t>& vocabulary() const { return vocabulary_; }

  std::string ToJson() const;
  // Throws vsd::Error on a malformed document or unsupported version.
  static CharNGramModel FromJson(std::string_view json);

 private:
  CharNGramModel() = default;
  std::u32string Key(std::u32string_view history, char32_t next) const;
  char32_t Map(char32_t c) const;
  void Count(std::u32string_view text);

  int order_ = kDefaultOrder;
  double smoothing_ = kDefaultSmoothing;
  std::vector<char32_t> vocabulary_;  // sorted, without UNK
  std::unordered_map<std::u32string, double> joint_;
  std::unordered_map<std::u32string, double> context_;
};

// Talks line-delimited JSON to a child process:
//   request  {"context": "...", "target": "..."}
//   response {"nll": <number>}
// Requests are serialized. Once the child fails, every later call returns
// nullopt.
class ExternalScorer : public Scorer {
 public:
  // Runs `command` through /bin/sh. Throws vsd::Error if it cannot start.
  explicit ExternalScorer(const std::string& command);
  ~ExternalScorer() override;
  ExternalScorer(const ExternalScorer&) = delete;
  ExternalScorer& operator=(const ExternalScorer&) = delete;

  std::optional<double> Score(std::string_view context,
                              std::string_view target) const override;

 private:
  void Shutdown() const;

  mutable std::mutex mu_;
  mutable int fd_ = -1;
  mutable pid_t pid_ = -1;
  mutable std::string buffer_;
};

// (f1, f2) = (l(cur|prev) - l(next|prev), l(next|cur) - l(next|prev)), or
// nullopt when a block is missing or the scorer fails.
std::optional<std::pair<double, double>> CoherenceFeatures(
    const std::string* prev, const std::string* cur, const std::string* next,
    const Scorer& scorer);

}  // namespace vsd

#endif  // VSD_SEMANTIC_SCORER_H_

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

#include "vsd/forest.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "json.hpp"
#include "vsd/error.h"

namespace vsd {

namespace {

constexpr int kForestVersion = 1;
constexpr double kTieEpsilon = 1e-12;

bool Better(const Split& candidate, const Split& best) {
  if (!best.valid) return true;
  if (candidate.impurity < best.impurity - kTieEpsilon) return true;
  if (candidate.impurity > best.impurity + kTieEpsilon) return false;
  if (candidate.feature != best.feature) {
    return candidate.feature < best.feature;
  }
  return candidate.threshold < best.threshold;
}

// Best split on one feature, or an invalid split when it is constant.
Split BestSplitOnFeature(const std::vector<FeatureRow>& rows,
                         const std::vector<int>& labels, int num_classes,
                         std::span<const int> samples, int feature,
                         std::vector<std::pair<double, int>>& scratch) {
  scratch.clear();
  for (int s : samples) scratch.emplace_back(rows[s][feature], labels[s]);
  std::sort(scratch.begin(), scratch.end());
  Split best;
  if (scratch.front().first == scratch.back().first) return best;

  const std::size_t n = scratch.size();
  std::vector<double> left(num_classes, 0.0);
  std::vector<double> right(num_classes, 0.0);
  for (const auto& [v, y] : scratch) right[y] += 1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    left[scratch[i].second] += 1;
    right[scratch[i].second] -= 1;
    if (scratch[i].first == scratch[i + 1].first) continue;
    const double nl = static_cast<double>(i + 1);
    const double nr = static_cast<double>(n - i - 1);
    Split candidate;
    candidate.valid = true;
    candidate.feature = feature;
    candidate.threshold = 0.5 * (scratch[i].first + scratch[i + 1].first);
    candidate.impurity =
        (nl * GiniImpurity(left) + nr * GiniImpurity(right)) /
        static_cast<double>(n);
    if (Better(candidate, best)) best = candidate;
  }
  return best;
}

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<FeatureRow>& rows,
              const std::vector<int>& labels, int num_classes,
              const ForestConfig& config, int max_features)
      : rows_(rows),
        labels_(labels),
        num_classes_(num_classes),
        config_(config),
        max_features_(max_features) {}

  Forest::Tree Build(std::vector<int> samples, std::mt19937_64& rng) {
    Forest::Tree tree;
    struct Pending {
      int node;
      std::vector<int> samples;
      int depth;
    };
    std::vector<Pending> stack;
    stack.push_back({NewNode(tree), std::move(samples), 0});
    const int d = static_cast<int>(rows_.front().size());
    std::vector<int> perm(d);

    while (!stack.empty()) {
      Pending job = std::move(stack.back());
      stack.pop_back();
      double* counts = &tree.counts[static_cast<std::size_t>(job.node) *
                                    num_classes_];
      int distinct = 0;
      for (int s : job.samples) counts[labels_[s]] += 1;
      for (int c = 0; c < num_classes_; ++c) distinct += counts[c] > 0;

      const bool stop =
          distinct <= 1 ||
          static_cast<int>(job.samples.size()) < config_.min_samples_split ||
          (config_.max_depth > 0 && job.depth >= config_.max_depth);
      if (stop) continue;

      for (int i = 0; i < d; ++i) perm[i] = i;
      for (int i = d - 1; i > 0; --i) {
        const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(perm[i], perm[j]);
      }
      Split best;
      for (int k = 0; k < d; ++k) {
        if (k >= max_features_ && best.valid) break;
        const Split s = BestSplitOnFeature(rows_, labels_, num_classes_,
                                           job.samples, perm[k], scratch_);
        if (s.valid && Better(s, best)) best = s;
      }
      if (!best.valid) continue;

      std::vector<int> left;
      std::vector<int> right;
      for (int s : job.samples) {
        (rows_[s][best.feature] <= best.threshold ? left : right).push_back(s);
      }
      const int l = NewNode(tree);
      const int r = NewNode(tree);
      tree.feature[job.node] = best.feature;
      tree.threshold[job.node] = best.threshold;
      tree.left[job.node] = l;
      tree.right[job.node] = r;
      stack.push_back({r, std::move(right), job.depth + 1});
      stack.push_back({l, std::move(left), job.depth + 1});
    }
    return tree;
  }

 private:
  int NewNode(Forest::Tree& tree) const {
    tree.feature.push_back(-1);
    tree.threshold.push_back(0);
    tree.left.push_back(-1);
    tree.right.push_back(-1);
    tree.counts.resize(tree.counts.size() + num_classes_, 0.0);
    return static_cast<int>(tree.feature.size()) - 1;
  }

  const std::vector<FeatureRow>& rows_;
  const std::vector<int>& labels_;
  int num_classes_;
  const ForestConfig& config_;
  int max_features_;
  std::vector<std::pair<double, int>> scratch_;
};

}  // namespace

double GiniImpurity(std::span<const double> counts) {
  double total = 0;
  for (double c : counts) total += c;
  if (total <= 0) return 0;
  double sum_sq = 0;
  for (double c : counts) sum_sq += (c / total) * (c / total);
  return 1.0 - sum_sq;
}

Split BestSplit(const std::vector<FeatureRow>& rows,
                const std::vector<int>& labels, int num_classes,
                std::span<const int> samples, std::span<const int> features) {
  Split best;
  if (samples.empty()) return best;
  std::vector<std::pair<double, int>> scratch;
  for (int f : features) {
    const Split s =
        BestSplitOnFeature(rows, labels, num_classes, samples, f, scratch);
    if (s.valid && Better(s, best)) best = s;
  }
  return best;
}

Forest Forest::Fit(const std::vector<FeatureRow>& rows,
                   const std::vector<int>& labels, int num_classes,
                   const ForestConfig& config) {
  if (rows.empty()) throw Error("forest: no training rows");
  if (rows.size() != labels.size()) {
    throw Error("forest: row and label counts differ");
  }
  if (num_classes < 1) throw Error("forest: need at least one class");
  if (config.n_trees < 1) throw Error("forest: n_trees must be positive");
  const std::size_t d = rows.front().size();
  if (d == 0) throw Error("forest: rows have no features");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) throw Error("forest: ragged feature rows");
    for (double v : rows[i]) {
      if (std::isnan(v)) throw Error("forest: NaN feature value");
    }
    if (labels[i] < 0 || labels[i] >= num_classes) {
      throw Error("forest: label out of range");
    }
  }
  int max_features = config.max_features > 0
                         ? config.max_features
                         : static_cast<int>(std::ceil(
                               std::sqrt(static_cast<double>(d))));
  max_features = std::clamp(max_features, 1, static_cast<int>(d));

  // Canonical row order makes the fit independent of input order.
  std::vector<int> canon(rows.size());
  for (std::size_t i = 0; i < canon.size(); ++i) canon[i] = static_cast<int>(i);
  std::stable_sort(canon.begin(), canon.end(), [&](int a, int b) {
    if (rows[a] != rows[b]) return rows[a] < rows[b];
    return labels[a] < labels[b];
  });

  Forest forest;
  forest.num_features_ = static_cast<int>(d);
  forest.num_classes_ = num_classes;
  forest.trees_.resize(config.n_trees);

  auto fit_tree = [&](int t) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    std::vector<int> samples(canon.size());
    if (config.bootstrap) {
      for (auto& s : samples) s = canon[rng() % canon.size()];
    } else {
      samples = canon;
    }
    TreeBuilder builder(rows, labels, num_classes, config, max_features);
    forest.trees_[t] = builder.Build(std::move(samples), rng);
  };

  int threads = config.num_threads > 0
                    ? config.num_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, config.n_trees);
  if (threads == 1) {
    for (int t = 0; t < config.n_trees; ++t) fit_tree(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> workers;
    for (int w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (int t = next++; t < config.n_trees; t = next++) fit_tree(t);
      });
    }
  }
  return forest;
}

std::vector<double> Forest::PredictProba(std::span<const double> row) const {
  if (static_cast<int>(row.size()) != num_features_) {
    throw Error("forest: row has " + std::to_string(row.size()) +
                " features, model expects " + std::to_string(num_features_));
  }
  std::vector<double> proba(num_classes_, 0.0);
  for (const auto& tree : trees_) {
    int node = 0;
    while (tree.feature[node] >= 0) {
      node = row[tree.feature[node]] <= tree.threshold[node] ? tree.left[node]
                                                             : tree.right[node];
    }
    const double* counts =
        &tree.counts[static_cast<std::size_t>(node) * num_classes_];
    double total = 0;
    for (int c = 0; c < num_classes_; ++c) total += counts[c];
    for (int c = 0; c < num_classes_; ++c) proba[c] += counts[c] / total;
  }
  for (double& p : proba) p /= static_cast<double>(trees_.size());
  return proba;
}

int Forest::Predict(std::span<const double> row) const {
  const auto proba = PredictProba(row);
  return static_cast<int>(std::max_element(proba.begin(), proba.end()) -
                          proba.begin());
}

std::string Forest::ToJson() const {
  nlohmann::ordered_json j;
  j["version"] = kForestVersion;
  j["num_features"] = num_features_;
  j["num_classes"] = num_classes_;
  auto trees = nlohmann::ordered_json::array();
  for (const auto& t : trees_) {
    nlohmann::ordered_json jt;
    jt["feature"] = t.feature;
    jt["threshold"] = t.threshold;
    jt["left"] = t.left;
    jt["right"] = t.right;
    jt["counts"] = t.counts;
    trees.push_back(std::move(jt));
  }
  j["trees"] = std::move(trees);
  return j.dump();
}

Forest Forest::FromJson(std::string_view text) {
  if (text.empty()) throw Error("forest: empty model");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("forest: ") + e.what());
  }
  try {
    const int version = j.at("version").get<int>();
    if (version != kForestVersion) {
      throw Error("forest: unsupported version " + std::to_string(version) +
                  " (expected " + std::to_string(kForestVersion) + ")");
    }
    Forest f;
    f.num_features_ = j.at("num_features").get<int>();
    f.num_classes_ = j.at("num_classes").get<int>();
    if (f.num_features_ < 1 || f.num_classes_ < 1) {
      throw Error("forest: bad dimensions");
    }
    for (const auto& jt : j.at("trees")) {
      Tree t;
      jt.at("feature").get_to(t.feature);
      jt.at("threshold").get_to(t.threshold);
      jt.at("left").get_to(t.left);
      jt.at("right").get_to(t.right);
      jt.at("counts").get_to(t.counts);
      const std::size_t n = t.feature.size();
      if (n == 0 || t.threshold.size() != n || t.left.size() != n ||
          t.right.size() != n ||
          t.counts.size() != n * static_cast<std::size_t>(f.num_classes_)) {
        throw Error("forest: inconsistent tree arrays");
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (t.feature[i] >= f.num_features_) throw Error("forest: bad feature");
        if (t.feature[i] >= 0 &&
            (t.left[i] <= static_cast<int>(i) || t.right[i] <= static_cast<int>(i) ||
             t.left[i] >= static_cast<int>(n) || t.right[i] >= static_cast<int>(n))) {
          throw Error("forest: bad child index");
        }
      }
      f.trees_.push_back(std::move(t));
    }
    if (f.trees_.empty()) throw Error("forest: no trees");
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("forest: ") + e.what());
  }
}

}  // namespace vsd

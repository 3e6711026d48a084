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

#ifndef VSD_FOREST_H_
#define VSD_FOREST_H_

// Random forest of CART trees (Gini impurity, bootstrap bagging).

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vsd {

struct ForestConfig {
  int n_trees = 100;
  int max_features = 0;  // 0 selects ceil(sqrt(num_features))
  int min_samples_split = 2;
  int max_depth = 0;  // 0 means unlimited
  bool bootstrap = true;
  std::uint64_t seed = 0;
  int num_threads = 0;  // 0 selects the hardware concurrency
};

using FeatureRow = std::vector<double>;

// Gini impurity of a class-count vector; 0 for an empty vector.
double GiniImpurity(std::span<const double> counts);

struct Split {
  bool valid = false;
  int feature = -1;
  double threshold = 0;
  // Sample-weighted mean impurity of the two children.
  double impurity = 0;
};

// Best threshold split of `samples` (row indices, repeats allowed) over the
// listed features. Thresholds are midpoints between consecutive distinct
// values; ties prefer the lower feature index, then the lower threshold.
Split BestSplit(const std::vector<FeatureRow>& rows,
                const std::vector<int>& labels, int num_classes,
                std::span<const int> samples, std::span<const int> features);

class Forest {
 public:
  struct Tree {
    // Parallel arrays; feature < 0 marks a leaf.
    std::vector<int> feature;
    std::vector<double> threshold;
    std::vector<int> left;
    std::vector<int> right;
    std::vector<double> counts;  // num_classes entries per node

    friend bool operator==(const Tree&, const Tree&) = default;
  };

  Forest() = default;

  // Labels must lie in [0, num_classes). Throws vsd::Error for empty or
  // ragged input, NaN values and bad labels.
  static Forest Fit(const std::vector<FeatureRow>& rows,
                    const std::vector<int>& labels, int num_classes,
                    const ForestConfig& config);

  // Mean of the per-tree leaf class frequencies. Throws vsd::Error when the
  // row width differs from training.
  std::vector<double> PredictProba(std::span<const double> row) const;
  // Argmax of PredictProba; ties go to the lowest class index.
  int Predict(std::span<const double> row) const;

  int num_features() const { return num_features_; }
  int num_classes() const { return num_classes_; }
  const std::vector<Tree>& trees() const { return trees_; }

  std::string ToJson() const;
  // Throws vsd::Error on malformed input or a version mismatch.
  static Forest FromJson(std::string_view json);

  friend bool operator==(const Forest&, const Forest&) = default;

 private:
  int num_features_ = 0;
  int num_classes_ = 0;
  std::vector<Tree> trees_;
};

}  // namespace vsd

#endif  // VSD_FOREST_H_

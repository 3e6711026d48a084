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

#ifndef VSD_EVALUATION_H_
#define VSD_EVALUATION_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vsd/block_model.h"
#include "vsd/pipeline.h"
#include "vsd/structure_tree.h"

namespace vsd {

struct Counts {
  double tp = 0;
  double fp = 0;
  double fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

// Precision/recall/F1. A zero denominator yields 0 with the matching
// `*_undefined` flag set. `applicable` is false when no document
// contributed (macro averaging skipped them all).
struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool applicable = true;
  int skipped = 0;  // documents left out of a macro average
};

Prf ComputePrf(const Counts& counts);

inline constexpr int kNumScoredRelations = 3;  // same, sibling, ancestor

struct DocumentScore {
  std::array<Counts, kNumScoredRelations> relation;
  std::int64_t pairs = 0;
  std::int64_t pairs_correct = 0;
  Counts boundary;     // positive = paragraph boundary
  Counts elimination;  // positive = OMITTED block
  std::int64_t transitions = 0;
  std::int64_t transitions_correct = 0;
};

// Throws vsd::Error when the block counts differ.
DocumentScore ScoreDocument(const Annotation& gold_ann,
                            const DocumentTree& gold_tree,
                            const Annotation& pred_ann,
                            const DocumentTree& pred_tree);

struct Ratio {
  double value = 0;
  bool applicable = true;
};

struct MetricReport {
  std::array<Prf, kNumScoredRelations> relation;
  Ratio pair_accuracy;
  Prf boundary;
  Prf elimination;
  Ratio transition_accuracy;
  Ratio average_f1;  // mean F1 of the three relations
  int documents = 0;
};

enum class Averaging { kMicro, kMacro };

// Micro pools counts; macro averages per-document values and skips
// documents without gold positives for a category.
MetricReport Aggregate(const std::vector<DocumentScore>& scores,
                       Averaging mode);

struct SystemReport {
  std::string system;
  MetricReport micro;
  MetricReport macro;
  std::vector<DocumentScore> documents;  // corpus order
};

struct CrossValidationResult {
  int folds = 0;
  std::uint64_t seed = 0;
  std::vector<int> fold_of;  // per corpus document
  std::vector<SystemReport> systems;  // ours, numbering, visual
};

// Seeded document-level shuffle; fold = shuffled position % k.
std::vector<int> AssignFolds(std::size_t num_documents, int k,
                             std::uint64_t seed);

// Throws vsd::Error when the corpus holds fewer than k documents or k < 2.
CrossValidationResult CrossValidate(const std::vector<LabeledDocument>& corpus,
                                    int k, std::uint64_t seed,
                                    const TrainConfig& config,
                                    const Scorer* external = nullptr);

std::string ReportJson(const CrossValidationResult& result);
std::string ReportTable(const CrossValidationResult& result);

}  // namespace vsd

#endif  // VSD_EVALUATION_H_

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

#ifndef VSD_PIPELINE_H_
#define VSD_PIPELINE_H_

// Training and inference for the transition parser, plus the two
// rule-based baselines (numbering automaton and indentation/spacing).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsd/block_model.h"
#include "vsd/features.h"
#include "vsd/forest.h"
#include "vsd/semantic_scorer.h"
#include "vsd/structure_tree.h"

namespace vsd {

struct LabeledDocument {
  Document doc;
  Annotation gold;
};

enum class ScorerKind { kNone, kInternal, kExternal };

struct TrainConfig {
  ForestConfig forest;
  std::vector<std::string> disabled_features;
  ScorerKind scorer = ScorerKind::kInternal;
  int ngram_order = CharNGramModel::kDefaultOrder;
};

struct ModelBundle {
  DocType doc_type = DocType::kContractPdfEn;
  std::vector<std::string> disabled_features;
  std::uint64_t transition_fingerprint = 0;
  std::uint64_t pointer_fingerprint = 0;
  Forest transition;
  // Unset when training saw no UP block; inference then falls back to the
  // indentation rule for pointers.
  std::optional<Forest> pointer;
  ScorerKind scorer = ScorerKind::kNone;
  std::optional<CharNGramModel> ngram;  // set for kInternal

  FeatureRegistry Registry() const;
  std::string ToJson() const;
  // Throws vsd::Error on malformed input or when a stored schema
  // fingerprint does not match the current registry.
  static ModelBundle FromJson(std::string_view json);
};

// Throws vsd::Error for an empty corpus, mixed document types or invalid
// gold annotations. `external` is required when config.scorer is
// kExternal.
ModelBundle Train(const std::vector<LabeledDocument>& corpus,
                  const TrainConfig& config,
                  const Scorer* external = nullptr);

struct Prediction {
  Annotation annotation;
  DocumentTree tree;
};

// Two-pass inference. `external` serves S1 when the bundle was trained with
// an external scorer; without it S1 is marked absent. Throws vsd::Error when
// the document type differs from the bundle's.
Prediction Predict(const Document& doc, const ModelBundle& bundle,
                   const Scorer* external = nullptr);

// Rewrites labels and pointers into a tree-valid annotation:
//  * the last retained block gets the CONSECUTIVE sentinel;
//  * an UP pointing into an open ancestor paragraph is redirected to that
//    paragraph's last (DOWN) block;
//  * any other UP rejoins the parent of the current paragraph, or becomes
//    CONSECUTIVE at the top level.
// At least one block must be retained.
Annotation RepairAnnotation(std::vector<Label> labels,
                            std::vector<std::optional<int>> pointers);

Prediction NumberingBaseline(const Document& doc);
Prediction VisualBaseline(const Document& doc);

// Paragraph texts in preorder; blocks joined by a space (no separator for
// Japanese documents).
std::vector<std::string> ParagraphTexts(const Document& doc,
                                        const DocumentTree& tree);

std::string PredictionJson(const Document& doc, const Prediction& prediction);

}  // namespace vsd

#endif  // VSD_PIPELINE_H_

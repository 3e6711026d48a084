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

// Independent reference implementations and random generators shared by the
// unit tests and the acceptance runner. Nothing here calls into the code it
// is meant to check.

#ifndef VSD_TESTS_SUPPORT_ORACLES_H_
#define VSD_TESTS_SUPPORT_ORACLES_H_

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "vsd/block_model.h"
#include "vsd/structure_tree.h"

namespace vsd::testing {

// Random valid paragraph tree: at most `max_blocks` blocks, at most
// `max_depth` nesting levels, each block debris with probability
// `debris_rate`. At least one block is retained.
DocumentTree RandomTree(std::mt19937_64& rng, int max_blocks, int max_depth,
                        double debris_rate);

// Pairwise relations from explicit parent pointers and a lowest common
// ancestor walk. Cell values follow vsd::Relation numbering.
std::vector<std::vector<int>> LcaRelationOracle(const DocumentTree& tree);

// Sort, then open a new cluster whenever a value exceeds the current
// cluster's first value by more than `threshold`.
std::vector<std::vector<double>> GreedyClusterOracle(std::vector<double> v,
                                                     double threshold);

// Plain exponential recursion; keep inputs short.
std::size_t RecursiveLevenshtein(const std::u32string& a,
                                 const std::u32string& b);

// Exhaustive search over every feature and midpoint threshold. Returns the
// lowest weighted child Gini impurity, or -1 when no split separates the
// samples.
double BruteForceBestImpurity(const std::vector<std::vector<double>>& rows,
                              const std::vector<int>& labels, int num_classes,
                              const std::vector<int>& samples);

// Gini impurity straight from the definition.
double GiniOracle(const std::vector<double>& counts);

// Builds a document from text lines through the plain-text reader.
Document TextDocument(const std::vector<std::string>& lines,
                      DocType type = DocType::kContractTxtEn);

// Annotation from compact letters ("dsuc") and explicit pointers.
Annotation MakeAnnotation(const std::string& letters,
                          const std::vector<int>& pointers = {});

}  // namespace vsd::testing

#endif  // VSD_TESTS_SUPPORT_ORACLES_H_

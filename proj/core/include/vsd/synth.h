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

#ifndef VSD_SYNTH_H_
#define VSD_SYNTH_H_

// Synthetic annotated corpora: random paragraph trees rendered as text
// blocks with known gold annotations.

#include <cstdint>
#include <vector>

#include "vsd/block_model.h"
#include "vsd/pipeline.h"
#include "vsd/structure_tree.h"

namespace vsd {

enum class SynthStyle {
  // Every paragraph starts with a numbering that encodes its depth;
  // paragraphs are not separated by extra vertical space.
  kNumbered,
  // No numbering; paragraphs are separated by a larger gap.
  kSpaced,
};

struct SynthSpec {
  DocType doc_type = DocType::kContractPdfEn;
  int documents = 10;
  int depth_limit = 3;  // number of nesting levels, >= 1
  // Document d uses styles[d % styles.size()].
  std::vector<SynthStyle> styles = {SynthStyle::kNumbered,
                                    SynthStyle::kSpaced};
  // Indentation per level; 0 selects 18 units (PDF) or 4 columns (text).
  double indent_step = 0;
  // Fraction of blocks that are headers, footers or page numbers.
  double debris_rate = 0.05;
  int min_paragraphs = 8;
  int max_paragraphs = 20;
  int min_lines_per_paragraph = 1;
  int max_lines_per_paragraph = 3;
};

// Throws vsd::Error for an inconsistent spec.
void ValidateSynthSpec(const SynthSpec& spec);

struct SynthDocument {
  LabeledDocument labeled;
  DocumentTree tree;  // the sampled tree; BuildTree(labeled.gold) == tree
};

std::vector<SynthDocument> Synthesize(const SynthSpec& spec,
                                      std::uint64_t seed);

}  // namespace vsd

#endif  // VSD_SYNTH_H_

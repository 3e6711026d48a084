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

#ifndef VSD_FEATURES_H_
#define VSD_FEATURES_H_

// Feature registry and feature-row assembly for the transition and pointer
// classifiers.
//
// Transition rows look at four context slots around block i:
//   slot 1 = previous retained block, slot 2 = block i,
//   slot 3 = next retained block,     slot 4 = the one after slot 3.
// Blocks flagged in the omitted mask are skipped when filling slots 1, 3
// and 4. Rows of masked blocks themselves use contiguous neighbours.
//
// Columns are named "<feature>.<slots>[.<level>]", e.g. "V1.2-3.deeper",
// and are sorted so that every document of a type shares one schema.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsd/block_model.h"
#include "vsd/forest.h"
#include "vsd/layout.h"
#include "vsd/semantic_scorer.h"
#include "vsd/text_cues.h"

namespace vsd {

enum class FeatureId : std::uint8_t {
  kV1, kV2, kV3, kV4, kV5, kV6, kV7, kV8, kV9, kV10, kV11, kV12,
  kT1, kT2, kT3, kT4, kT5, kT6, kT7, kT8, kT9, kT10, kT11, kT12,
  kS1,
};
inline constexpr int kNumFeatures = 25;

enum class ValueKind { kBoolean, kCategorical, kNumeric };

struct FeatureDescriptor {
  FeatureId id;
  std::string name;  // "V1"
  std::string description;
  ValueKind kind;
  // One entry per slot group: {2} for a single block, {1, 2} for a pair,
  // {1, 2, 3} for the coherence triple.
  std::vector<std::vector<int>> slots;
  std::vector<std::string> levels = {};  // categorical only, sans "absent"
  bool null_default = false;        // boolean value when a slot is empty
};

// Descriptors for all known features, in registry order.
const std::vector<FeatureDescriptor>& AllFeatures();
const FeatureDescriptor& DescriptorByName(std::string_view name);
// Document types that enable `id`.
bool FeatureEnabled(FeatureId id, DocType type);

class FeatureRegistry {
 public:
  // Features enabled for `type`, minus `disabled` (names such as "S1").
  // Throws vsd::Error for an unknown name.
  static FeatureRegistry ForDocType(DocType type,
                                    const std::vector<std::string>& disabled =
                                        {});

  DocType doc_type() const { return doc_type_; }
  const std::vector<FeatureDescriptor>& features() const { return features_; }
  bool Has(FeatureId id) const;
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t width() const { return columns_.size(); }
  // Hash of the column schema; equal for types that share a registry.
  std::uint64_t Fingerprint() const;
  // Position in columns() of each column in generation order.
  const std::vector<int>& sorted_position() const { return sorted_position_; }

 private:
  DocType doc_type_ = DocType::kContractPdfEn;
  std::vector<FeatureDescriptor> features_;
  std::vector<std::string> columns_;  // sorted
  std::vector<int> sorted_position_;
};

// Per-document cues shared by every row.
struct DocumentAnalysis {
  const Document* doc = nullptr;
  Language language = Language::kEnglish;
  PageFrame frame;
  std::vector<TextualCues> cues;
  std::vector<std::vector<Numbering>> numbering;
  std::vector<bool> similar_position;
};

// `doc` must outlive the result.
DocumentAnalysis AnalyzeDocument(const Document& doc);

struct TransitionContext {
  // Block indices of slots 1..4; -1 marks an empty slot.
  std::array<int, 4> slots = {-1, -1, -1, -1};

  int slot(int k) const { return slots[k - 1]; }
};

std::vector<TransitionContext> BuildContexts(
    std::size_t num_blocks, const std::vector<bool>& omitted_mask);

// Numbering-transition outcome for each row: the automaton step taken when
// the block in slot 3 is consumed, replayed over the row's own block
// sequence (retained blocks for unmasked rows, all blocks otherwise).
std::vector<std::optional<NumberingStep>> NumberingSteps(
    const DocumentAnalysis& analysis, const std::vector<bool>& omitted_mask);

struct FeatureMatrix {
  std::vector<std::string> columns;
  std::vector<FeatureRow> rows;
};

// One row per block. `scorer` may be null, which leaves S1 absent.
FeatureMatrix TransitionFeatureMatrix(const DocumentAnalysis& analysis,
                                      const std::vector<bool>& omitted_mask,
                                      const FeatureRegistry& registry,
                                      const Scorer* scorer);

// Pointer candidates: for every UP block i, the earlier retained DOWN
// blocks.
struct PointerPair {
  int up_block;
  int candidate;
};

std::vector<int> PointerCandidates(const std::vector<Label>& labels, int i);
// First block of the paragraph holding `block` under `labels`.
int ParagraphHead(const std::vector<Label>& labels, int block);

const std::vector<std::string>& PointerColumns();
std::uint64_t PointerFingerprint();

FeatureRow PointerFeatureRow(const DocumentAnalysis& analysis,
                             const std::vector<Label>& labels, int up_block,
                             int candidate);

// Rows for every (UP block, candidate) pair in document order.
struct PointerRows {
  std::vector<PointerPair> pairs;
  std::vector<FeatureRow> rows;
};
PointerRows PointerFeatureRows(const DocumentAnalysis& analysis,
                               const std::vector<Label>& labels);

// CSV with a leading "row" column followed by `columns`.
void WriteFeatureCsv(std::ostream& out, const std::vector<std::string>& columns,
                     const std::vector<FeatureRow>& rows,
                     const std::vector<std::string>& row_ids);

std::uint64_t Fnv1a(std::string_view data,
                    std::uint64_t seed = 14695981039346656037ULL);

}  // namespace vsd

#endif  // VSD_FEATURES_H_

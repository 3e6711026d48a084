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

#ifndef VSD_STRUCTURE_TREE_H_
#define VSD_STRUCTURE_TREE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "vsd/block_model.h"
#include "vsd/error.h"

namespace vsd {

// Tree construction failure tied to a block.
class TreeError : public Error {
 public:
  TreeError(int block, const std::string& message)
      : Error("block " + std::to_string(block) + ": " + message),
        block_(block),
        detail_(message) {}

  int block() const { return block_; }
  const std::string& detail() const { return detail_; }

 private:
  int block_;
  std::string detail_;
};

struct ParagraphNode {
  std::vector<int> blocks;
  std::vector<ParagraphNode> children;

  friend bool operator==(const ParagraphNode&, const ParagraphNode&) = default;
};

// Paragraph forest under an implicit root, plus the debris blocks.
struct DocumentTree {
  int num_blocks = 0;
  std::vector<ParagraphNode> top_level;
  std::vector<int> debris;  // ascending

  friend bool operator==(const DocumentTree&, const DocumentTree&) = default;
};

// Replays the labels with a stack of open paragraphs. Throws vsd::Error for
// an UP without pointer or whose pointer is not in an open paragraph.
DocumentTree BuildTree(const Annotation& ann);

// Inverse of BuildTree. Throws vsd::Error when the preorder block order is
// not strictly increasing or the tree does not cover 0..n-1 exactly once.
Annotation TreeToAnnotation(const DocumentTree& tree);

enum class Relation : std::uint8_t {
  kSameParagraph = 0,
  kSibling = 1,
  kAncestorDescendant = 2,
  kNone = 3,
};
std::string_view RelationName(Relation relation);

class RelationshipMatrix {
 public:
  explicit RelationshipMatrix(int n = 0);

  int size() const { return n_; }
  Relation at(int i, int j) const { return cells_[Index(i, j)]; }
  void Set(int i, int j, Relation r);

  friend bool operator==(const RelationshipMatrix&,
                         const RelationshipMatrix&) = default;

 private:
  std::size_t Index(int i, int j) const {
    return static_cast<std::size_t>(i) * n_ + j;
  }
  int n_;
  std::vector<Relation> cells_;
};

// Cousins are NONE; pairs with a debris block are NONE; the diagonal is
// SAME_PARAGRAPH.
RelationshipMatrix BuildRelationshipMatrix(const DocumentTree& tree);

// Entry i is true when blocks i and i+1 are separated by a paragraph
// boundary. Any pair touching debris counts as a boundary.
std::vector<bool> BoundaryVector(const Annotation& ann);

// Nested {"blocks": [...], "children": [...]} objects plus "debris".
std::string TreeToJson(const DocumentTree& tree, int indent = -1);
DocumentTree TreeFromJson(std::string_view json);

// Paragraphs in preorder with their depth (0 = top level).
struct FlatParagraph {
  const ParagraphNode* node;
  int depth;
};
std::vector<FlatParagraph> Preorder(const DocumentTree& tree);

}  // namespace vsd

#endif  // VSD_STRUCTURE_TREE_H_

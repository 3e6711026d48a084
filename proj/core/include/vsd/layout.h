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

#ifndef VSD_LAYOUT_H_
#define VSD_LAYOUT_H_

// Geometric primitives behind the visual block features.

#include <string_view>
#include <vector>

#include "vsd/block_model.h"

namespace vsd {

struct Cluster1D {
  std::vector<double> members;  // ascending

  double representative() const { return members.front(); }
  double min() const { return members.front(); }
  double max() const { return members.back(); }
  std::size_t size() const { return members.size(); }

  friend bool operator==(const Cluster1D&, const Cluster1D&) = default;
};

// Greedy 1D clustering: sort ascending and extend the current cluster while
// `value - cluster.min() <= threshold`. Throws vsd::Error for a negative
// threshold or an empty input.
std::vector<Cluster1D> ClusterValues(std::vector<double> values,
                                     double threshold);

// Index of the cluster whose [min, max] range holds `value`; values between
// clusters map to the nearest cluster below (or 0).
int ClusterIndex(const std::vector<Cluster1D>& clusters, double value);

enum class Indentation { kSame, kDeeper, kShallower };
std::string_view IndentationName(Indentation relation);

struct PageFrame {
  bool text_source = false;
  double tau_x = 0;        // horizontal clustering threshold
  double tau_center = 0;   // tolerance for centred blocks
  double tau_spacing = 0;  // vertical gap clustering threshold

  double left_x = 0;  // representative of the leftmost x0 cluster
  double right_margin_x = 0;
  std::vector<Cluster1D> left_clusters;

  Cluster1D normal_spacing;  // empty when no same-page gap exists

  double page_top = 0;
  double page_bottom = 0;
  double header_threshold_y = 0;
  double footer_threshold_y = 0;
};

PageFrame ComputePageFrame(const Document& doc);

// Vertical gap between two blocks on the same page; for plain text this is
// the blank-line count of `next`.
double VerticalGap(const TextBlock& prev, const TextBlock& next);

int LeftCluster(const TextBlock& b, const PageFrame& frame);

// Relation of b2's indentation to b1's (DEEPER = b2 further right).
Indentation IndentationRelation(const TextBlock& b1, const TextBlock& b2,
                                const PageFrame& frame);
// Same comparison after removing a leading numbering prefix from both
// blocks (plain text columns).
Indentation IndentationAfterNumbering(const TextBlock& b1,
                                      const TextBlock& b2,
                                      const PageFrame& frame);

bool BreaksBeforeMargin(const TextBlock& b, const PageFrame& frame);
bool LargerSpacing(const TextBlock& b1, const TextBlock& b2,
                   const PageFrame& frame);
bool InHeader(const TextBlock& b, const PageFrame& frame);
bool InFooter(const TextBlock& b, const PageFrame& frame);
bool Centered(const TextBlock& b, const PageFrame& frame);
bool LeftAligned(const TextBlock& b, const PageFrame& frame);

// Text-only predicates.
bool JustifiedWithSpaces(std::string_view text);    // inner run of >= 4 spaces
bool EmphasisBySpaces(std::string_view text);       // "T i t l e"
bool EmphasisByParentheses(std::string_view text);  // "（Title）"

// Flag per block: some block on another page sits at an overlapping
// position (>= half the smaller area) with near-identical text
// (normalised edit distance < 0.1).
std::vector<bool> SimilarPositionFlags(const Document& doc);

}  // namespace vsd

#endif  // VSD_LAYOUT_H_

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

#include "vsd/layout.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "vsd/error.h"
#include "vsd/text_cues.h"
#include "vsd/utf8.h"

namespace vsd {

namespace {

constexpr double kTauXFraction = 0.005;
constexpr double kTextRightMarginSlack = 10.0;
constexpr double kRegionFraction = 0.15;
constexpr int kMarginMembersPerPage = 6;
constexpr double kGapEpsilon = 1e-6;
constexpr double kSimilarOverlap = 0.5;
constexpr double kSimilarDistance = 0.1;

double ModalHeight(const Document& doc) {
  std::map<long long, int> counts;
  for (const auto& b : doc.blocks) {
    ++counts[std::llround(b.bbox.Height() * 100.0)];
  }
  long long best = 0;
  int best_count = -1;
  for (const auto& [h, c] : counts) {
    if (c > best_count) {  // map order resolves ties toward the smaller
      best = h;
      best_count = c;
    }
  }
  return static_cast<double>(best) / 100.0;
}

Indentation Compare(int a, int b) {
  if (a == b) return Indentation::kSame;
  return b > a ? Indentation::kDeeper : Indentation::kShallower;
}

double OverlapArea(const BBox& a, const BBox& b) {
  const double w = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const double h = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  return w > 0 && h > 0 ? w * h : 0.0;
}

}  // namespace

std::vector<Cluster1D> ClusterValues(std::vector<double> values,
                                     double threshold) {
  if (threshold < 0 || std::isnan(threshold)) {
    throw Error("cluster threshold must be non-negative");
  }
  if (values.empty()) throw Error("cannot cluster an empty list");
  std::sort(values.begin(), values.end());
  std::vector<Cluster1D> clusters;
  for (double v : values) {
    if (clusters.empty() || v - clusters.back().min() > threshold) {
      clusters.push_back({});
    }
    clusters.back().members.push_back(v);
  }
  return clusters;
}

int ClusterIndex(const std::vector<Cluster1D>& clusters, double value) {
  int index = 0;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    if (clusters[i].min() <= value) index = static_cast<int>(i);
  }
  return index;
}

std::string_view IndentationName(Indentation relation) {
  switch (relation) {
    case Indentation::kSame:
      return "same";
    case Indentation::kDeeper:
      return "deeper";
    case Indentation::kShallower:
      return "shallower";
  }
  return "?";
}

double VerticalGap(const TextBlock& prev, const TextBlock& next) {
  return prev.bbox.y0 - next.bbox.y1;
}

PageFrame ComputePageFrame(const Document& doc) {
  if (doc.blocks.empty()) throw Error("cannot lay out an empty document");
  PageFrame f;
  f.text_source = IsTextType(doc.doc_type);

  double min_x = doc.blocks[0].bbox.x0;
  double max_x = doc.blocks[0].bbox.x1;
  f.page_top = doc.blocks[0].bbox.y1;
  f.page_bottom = doc.blocks[0].bbox.y0;
  std::vector<double> lefts;
  std::vector<double> rights;
  for (const auto& b : doc.blocks) {
    min_x = std::min(min_x, b.bbox.x0);
    max_x = std::max(max_x, b.bbox.x1);
    f.page_top = std::max(f.page_top, b.bbox.y1);
    f.page_bottom = std::min(f.page_bottom, b.bbox.y0);
    lefts.push_back(b.bbox.x0);
    rights.push_back(b.bbox.x1);
  }

  if (f.text_source) {
    f.tau_x = 0;
    f.tau_center = 1;
  } else {
    f.tau_x = kTauXFraction * (max_x - min_x);
    f.tau_center = 2 * f.tau_x;
  }
  f.tau_spacing = 0.25 * ModalHeight(doc);

  f.left_clusters = ClusterValues(lefts, f.tau_x);
  f.left_x = f.left_clusters.front().representative();

  const auto right_clusters =
      ClusterValues(rights, f.text_source ? kTextRightMarginSlack : f.tau_x);
  const std::size_t needed =
      static_cast<std::size_t>(kMarginMembersPerPage) * doc.NumPages();
  f.right_margin_x = max_x;
  for (auto it = right_clusters.rbegin(); it != right_clusters.rend(); ++it) {
    if (it->size() >= needed) {
      f.right_margin_x = it->min();
      break;
    }
  }

  const double span = f.page_top - f.page_bottom;
  f.header_threshold_y = f.page_top - kRegionFraction * span;
  f.footer_threshold_y = f.page_bottom + kRegionFraction * span;

  std::vector<double> gaps;
  for (std::size_t i = 1; i < doc.blocks.size(); ++i) {
    if (doc.blocks[i].page == doc.blocks[i - 1].page) {
      gaps.push_back(VerticalGap(doc.blocks[i - 1], doc.blocks[i]));
    }
  }
  if (!gaps.empty()) {
    auto clusters = ClusterValues(gaps, f.tau_spacing);
    // Most populous cluster; the first (smallest gaps) wins ties.
    std::size_t best = 0;
    for (std::size_t i = 1; i < clusters.size(); ++i) {
      if (clusters[i].size() > clusters[best].size()) best = i;
    }
    f.normal_spacing = std::move(clusters[best]);
  }
  return f;
}

int LeftCluster(const TextBlock& b, const PageFrame& frame) {
  return ClusterIndex(frame.left_clusters, b.bbox.x0);
}

Indentation IndentationRelation(const TextBlock& b1, const TextBlock& b2,
                                const PageFrame& frame) {
  return Compare(LeftCluster(b1, frame), LeftCluster(b2, frame));
}

Indentation IndentationAfterNumbering(const TextBlock& b1,
                                      const TextBlock& b2,
                                      const PageFrame& frame) {
  auto erased_x0 = [](const TextBlock& b) {
    const int prefix = NumberingPrefixLength(b.text, Language::kEnglish);
    if (prefix == 0) return b.bbox.x0;
    const auto len = static_cast<double>(utf8::Length(utf8::Trim(b.text)));
    const double char_width = len > 0 ? b.bbox.Width() / len : 0.0;
    return b.bbox.x0 + prefix * char_width;
  };
  const double a = erased_x0(b1);
  const double b = erased_x0(b2);
  if (std::abs(a - b) <= frame.tau_x) return Indentation::kSame;
  return b > a ? Indentation::kDeeper : Indentation::kShallower;
}

bool BreaksBeforeMargin(const TextBlock& b, const PageFrame& frame) {
  return b.bbox.x1 < frame.right_margin_x - frame.tau_x;
}

bool LargerSpacing(const TextBlock& b1, const TextBlock& b2,
                   const PageFrame& frame) {
  if (b1.page != b2.page || frame.normal_spacing.members.empty()) return true;
  const double gap = VerticalGap(b1, b2);
  return gap < frame.normal_spacing.min() - kGapEpsilon ||
         gap > frame.normal_spacing.max() + kGapEpsilon;
}

bool InHeader(const TextBlock& b, const PageFrame& frame) {
  return b.bbox.y1 > frame.header_threshold_y;
}

bool InFooter(const TextBlock& b, const PageFrame& frame) {
  return b.bbox.y0 < frame.footer_threshold_y;
}

bool Centered(const TextBlock& b, const PageFrame& frame) {
  const double body_center = 0.5 * (frame.left_x + frame.right_margin_x);
  const double center = 0.5 * (b.bbox.x0 + b.bbox.x1);
  return std::abs(center - body_center) <= frame.tau_center &&
         LeftCluster(b, frame) != 0;
}

bool LeftAligned(const TextBlock& b, const PageFrame& frame) {
  return LeftCluster(b, frame) == 0;
}

bool JustifiedWithSpaces(std::string_view text) {
  const std::string trimmed = utf8::Trim(text);
  return trimmed.find("    ") != std::string::npos;
}

bool EmphasisBySpaces(std::string_view text) {
  const std::u32string t =
      utf8::NarrowFullwidth(utf8::Decode(utf8::Trim(text)));
  // Count single characters that stand between spaces (or the text ends).
  int singles = 0;
  std::size_t i = 0;
  while (i < t.size()) {
    while (i < t.size() && utf8::IsSpace(t[i])) ++i;
    std::size_t j = i;
    while (j < t.size() && !utf8::IsSpace(t[j])) ++j;
    if (j == i + 1) {
      ++singles;
    } else if (j > i + 1) {
      singles = 0;
    }
    if (singles >= 3) return true;
    i = j;
  }
  return false;
}

bool EmphasisByParentheses(std::string_view text) {
  const std::u32string t =
      utf8::NarrowFullwidth(utf8::Decode(utf8::Trim(text)));
  if (t.size() < 3) return false;
  static constexpr std::u32string_view kOpen = U"([【「『〔<";
  static constexpr std::u32string_view kClose = U")]】」』〕>";
  const auto open = kOpen.find(t.front());
  if (open == std::u32string_view::npos || t.back() != kClose[open]) {
    return false;
  }
  // The opening bracket must close only at the very end.
  int depth = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == kOpen[open]) ++depth;
    if (t[i] == kClose[open] && --depth == 0 && i + 1 != t.size()) {
      return false;
    }
  }
  return true;
}

std::vector<bool> SimilarPositionFlags(const Document& doc) {
  const std::size_t n = doc.blocks.size();
  std::vector<std::u32string> texts(n);
  for (std::size_t i = 0; i < n; ++i) {
    texts[i] = utf8::Decode(utf8::Trim(doc.blocks[i].text));
  }
  std::vector<bool> flags(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (flags[i] && flags[j]) continue;
      const auto& a = doc.blocks[i];
      const auto& b = doc.blocks[j];
      if (a.page == b.page) continue;
      const double min_area = std::min(a.bbox.Area(), b.bbox.Area());
      if (OverlapArea(a.bbox, b.bbox) < kSimilarOverlap * min_area) continue;
      const double longest = static_cast<double>(
          std::max(texts[i].size(), texts[j].size()));
      if (longest == 0) continue;
      const double length_gap = std::abs(static_cast<double>(texts[i].size()) -
                                         static_cast<double>(texts[j].size()));
      if (length_gap / longest >= kSimilarDistance) continue;
      if (static_cast<double>(Levenshtein(texts[i], texts[j])) / longest <
          kSimilarDistance) {
        flags[i] = flags[j] = true;
      }
    }
  }
  return flags;
}

}  // namespace vsd

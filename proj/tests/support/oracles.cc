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


#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace vsd::testing {

namespace {

ParagraphNode& NodeAt(DocumentTree& tree, const std::vector<int>& path) {
  ParagraphNode* node = &tree.top_level[path[0]];
  for (std::size_t k = 1; k < path.size(); ++k) {
    node = &node->children[path[k]];
  }
  return *node;
}

}  // namespace

DocumentTree RandomTree(std::mt19937_64& rng, int max_blocks, int max_depth,
                        double debris_rate) {
  std::uniform_int_distribution<int> size_dist(1, max_blocks);
  std::bernoulli_distribution debris(debris_rate);
  std::bernoulli_distribution continue_paragraph(0.4);

  DocumentTree tree;
  tree.num_blocks = size_dist(rng);
  std::vector<bool> is_debris(tree.num_blocks);
  for (auto&& d : is_debris) d = debris(rng);
  if (std::all_of(is_debris.begin(), is_debris.end(),
                  [](bool d) { return d; })) {
    is_debris[std::uniform_int_distribution<int>(0, tree.num_blocks - 1)(
        rng)] = false;
  }

  std::vector<int> path;  // child indices from the top level down
  for (int b = 0; b < tree.num_blocks; ++b) {
    if (is_debris[b]) {
      tree.debris.push_back(b);
      continue;
    }
    if (!path.empty() && continue_paragraph(rng)) {
      NodeAt(tree, path).blocks.push_back(b);
      continue;
    }
    const int deepest = path.empty()
                            ? 0
                            : std::min<int>(path.size(), max_depth - 1);
    const int depth = std::uniform_int_distribution<int>(0, deepest)(rng);
    path.resize(depth);
    ParagraphNode fresh;
    fresh.blocks.push_back(b);
    if (depth == 0) {
      tree.top_level.push_back(fresh);
      path.push_back(static_cast<int>(tree.top_level.size()) - 1);
    } else {
      auto& parent = NodeAt(tree, path);
      parent.children.push_back(fresh);
      path.push_back(static_cast<int>(parent.children.size()) - 1);
    }
  }
  return tree;
}

std::vector<std::vector<int>> LcaRelationOracle(const DocumentTree& tree) {
  const int n = tree.num_blocks;
  // Paragraph 0 is the virtual root.
  std::vector<int> parent = {-1};
  std::vector<int> paragraph_of(n, -1);
  std::function<void(const ParagraphNode&, int)> visit =
      [&](const ParagraphNode& node, int up) {
        const int id = static_cast<int>(parent.size());
        parent.push_back(up);
        for (int b : node.blocks) paragraph_of[b] = id;
        for (const auto& c : node.children) visit(c, id);
      };
  for (const auto& top : tree.top_level) visit(top, 0);

  auto ancestors = [&](int p) {
    std::vector<int> chain;
    for (; p >= 0; p = parent[p]) chain.push_back(p);
    return chain;  // p, parent(p), ..., root
  };

  constexpr int kSame = 0, kSibling = 1, kAncestor = 2, kNone = 3;
  std::vector<std::vector<int>> out(n, std::vector<int>(n, kNone));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        out[i][j] = kSame;
        continue;
      }
      const int pi = paragraph_of[i];
      const int pj = paragraph_of[j];
      if (pi < 0 || pj < 0) continue;
      if (pi == pj) {
        out[i][j] = kSame;
        continue;
      }
      const auto ai = ancestors(pi);
      const auto aj = ancestors(pj);
      int lca = -1;
      for (int a : ai) {
        if (std::find(aj.begin(), aj.end(), a) != aj.end()) {
          lca = a;
          break;
        }
      }
      if (lca == pi || lca == pj) {
        out[i][j] = kAncestor;
      } else if (parent[pi] == lca && parent[pj] == lca) {
        out[i][j] = kSibling;
      }
    }
  }
  return out;
}

std::vector<std::vector<double>> GreedyClusterOracle(std::vector<double> v,
                                                     double threshold) {
  std::sort(v.begin(), v.end());
  std::vector<std::vector<double>> out;
  for (double x : v) {
    if (out.empty() || x - out.back().front() > threshold) out.emplace_back();
    out.back().push_back(x);
  }
  return out;
}

std::size_t RecursiveLevenshtein(const std::u32string& a,
                                 const std::u32string& b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  const std::u32string ta = a.substr(1);
  const std::u32string tb = b.substr(1);
  if (a[0] == b[0]) return RecursiveLevenshtein(ta, tb);
  return 1 + std::min({RecursiveLevenshtein(ta, b), RecursiveLevenshtein(a, tb),
                       RecursiveLevenshtein(ta, tb)});
}

double GiniOracle(const std::vector<double>& counts) {
  double total = 0;
  for (double c : counts) total += c;
  if (total == 0) return 0;
  double sum_sq = 0;
  for (double c : counts) sum_sq += (c / total) * (c / total);
  return 1 - sum_sq;
}

double BruteForceBestImpurity(const std::vector<std::vector<double>>& rows,
                              const std::vector<int>& labels, int num_classes,
                              const std::vector<int>& samples) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t width = rows.empty() ? 0 : rows[0].size();
  for (std::size_t f = 0; f < width; ++f) {
    std::vector<double> values;
    for (int s : samples) values.push_back(rows[s][f]);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
      const double t = (values[k] + values[k + 1]) / 2;
      std::vector<double> left(num_classes), right(num_classes);
      for (int s : samples) {
        (rows[s][f] <= t ? left : right)[labels[s]] += 1;
      }
      double nl = 0, nr = 0;
      for (int c = 0; c < num_classes; ++c) {
        nl += left[c];
        nr += right[c];
      }
      const double imp =
          (nl * GiniOracle(left) + nr * GiniOracle(right)) / (nl + nr);
      best = std::min(best, imp);
    }
  }
  return std::isinf(best) ? -1 : best;
}

Document TextDocument(const std::vector<std::string>& lines, DocType type) {
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  return IngestPlainText(text, "test", type);
}

Annotation MakeAnnotation(const std::string& letters,
                          const std::vector<int>& pointers) {
  Annotation ann;
  std::size_t next_pointer = 0;
  for (char c : letters) {
    const auto label = LabelFromLetter(c);
    if (!label) throw std::invalid_argument("bad label letter");
    ann.labels.push_back(*label);
    if (*label == Label::kUp) {
      ann.pointers.push_back(pointers.at(next_pointer++));
    } else {
      ann.pointers.push_back(std::nullopt);
    }
  }
  return ann;
}

}  // namespace vsd::testing

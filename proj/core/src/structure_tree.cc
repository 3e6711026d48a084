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

#include "vsd/structure_tree.h"

#include <algorithm>
#include <functional>

#include "json.hpp"

namespace vsd {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kRoot = -1;

// Flat working representation shared by the build and inverse routines.
struct FlatNode {
  std::vector<int> blocks;
  int parent = kRoot;
  std::vector<int> children;
};

ParagraphNode Assemble(const std::vector<FlatNode>& nodes, int id) {
  ParagraphNode node;
  node.blocks = nodes[id].blocks;
  node.children.reserve(nodes[id].children.size());
  for (int child : nodes[id].children) {
    node.children.push_back(Assemble(nodes, child));
  }
  return node;
}

void Flatten(const ParagraphNode& node, int parent, std::vector<FlatNode>& out,
             std::vector<const ParagraphNode*>* originals) {
  const int id = static_cast<int>(out.size());
  out.push_back({node.blocks, parent, {}});
  if (originals) originals->push_back(&node);
  if (parent != kRoot) out[parent].children.push_back(id);
  for (const auto& child : node.children) Flatten(child, id, out, originals);
}

std::vector<FlatNode> FlattenTree(const DocumentTree& tree) {
  std::vector<FlatNode> nodes;
  for (const auto& top : tree.top_level) Flatten(top, kRoot, nodes, nullptr);
  return nodes;
}

ordered_json NodeToJson(const ParagraphNode& node) {
  ordered_json j;
  j["blocks"] = node.blocks;
  ordered_json children = ordered_json::array();
  for (const auto& c : node.children) children.push_back(NodeToJson(c));
  j["children"] = std::move(children);
  return j;
}

ParagraphNode NodeFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j.contains("children")) {
    throw Error("tree JSON: paragraph needs \"blocks\" and \"children\"");
  }
  ParagraphNode node;
  node.blocks = j["blocks"].get<std::vector<int>>();
  if (node.blocks.empty()) throw Error("tree JSON: empty paragraph");
  for (const auto& c : j["children"]) node.children.push_back(NodeFromJson(c));
  return node;
}

}  // namespace

DocumentTree BuildTree(const Annotation& ann) {
  if (ann.labels.size() != ann.pointers.size()) {
    throw Error("annotation labels and pointers differ in length");
  }
  const int n = static_cast<int>(ann.size());
  DocumentTree tree;
  tree.num_blocks = n;

  std::vector<FlatNode> nodes;
  std::vector<int> top_level;
  std::vector<int> stack;
  std::vector<int> node_of(n, -1);

  auto open = [&](int block, int parent) {
    const int id = static_cast<int>(nodes.size());
    nodes.push_back({{block}, parent, {}});
    if (parent == kRoot) {
      top_level.push_back(id);
    } else {
      nodes[parent].children.push_back(id);
    }
    node_of[block] = id;
    stack.push_back(id);
  };

  int prev = -1;
  for (int i = 0; i < n; ++i) {
    if (ann.labels[i] == Label::kOmitted) {
      tree.debris.push_back(i);
      continue;
    }
    if (prev < 0) {
      open(i, kRoot);
      prev = i;
      continue;
    }
    switch (ann.labels[prev]) {
      case Label::kContinuous:
        nodes[stack.back()].blocks.push_back(i);
        node_of[i] = stack.back();
        break;
      case Label::kConsecutive: {
        const int parent = nodes[stack.back()].parent;
        stack.pop_back();
        open(i, parent);
        break;
      }
      case Label::kDown:
        open(i, stack.back());
        break;
      case Label::kUp: {
        const auto& ptr = ann.pointers[prev];
        if (!ptr) throw TreeError(prev, "UP requires pointer");
        const int target =
            (*ptr >= 0 && *ptr < n) ? node_of[*ptr] : -1;
        const auto pos = std::find(stack.begin(), stack.end(), target);
        if (target < 0 || pos == stack.end()) {
          throw TreeError(prev, "pointer target not an open ancestor");
        }
        stack.erase(pos + 1, stack.end());
        const int parent = nodes[stack.back()].parent;
        stack.pop_back();
        open(i, parent);
        break;
      }
      case Label::kOmitted:
        break;
    }
    prev = i;
  }

  for (int id : top_level) tree.top_level.push_back(Assemble(nodes, id));
  return tree;
}

Annotation TreeToAnnotation(const DocumentTree& tree) {
  const int n = tree.num_blocks;
  std::vector<FlatNode> nodes = FlattenTree(tree);

  std::vector<int> seen(n, 0);
  auto mark = [&](int b) {
    if (b < 0 || b >= n) {
      throw Error("tree references block " + std::to_string(b) +
                  " outside 0.." + std::to_string(n - 1));
    }
    if (seen[b]++) {
      throw Error("block " + std::to_string(b) + " appears twice in the tree");
    }
  };
  for (int d : tree.debris) mark(d);
  int last_block = -1;
  for (const auto& node : nodes) {
    if (node.blocks.empty()) throw Error("tree contains an empty paragraph");
    for (int b : node.blocks) {
      mark(b);
      if (b <= last_block) {
        throw Error("preorder block order is not increasing at block " +
                    std::to_string(b));
      }
      last_block = b;
    }
  }
  for (int b = 0; b < n; ++b) {
    if (!seen[b]) {
      throw Error("block " + std::to_string(b) + " is missing from the tree");
    }
  }

  Annotation ann;
  ann.labels.assign(n, Label::kOmitted);
  ann.pointers.assign(n, std::nullopt);
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    const auto& blocks = nodes[id].blocks;
    for (std::size_t k = 0; k + 1 < blocks.size(); ++k) {
      ann.labels[blocks[k]] = Label::kContinuous;
    }
    const int tail = blocks.back();
    if (id + 1 == nodes.size()) {
      ann.labels[tail] = Label::kConsecutive;
      continue;
    }
    const FlatNode& next = nodes[id + 1];
    if (next.parent == static_cast<int>(id)) {
      ann.labels[tail] = Label::kDown;
    } else if (next.parent == nodes[id].parent) {
      ann.labels[tail] = Label::kConsecutive;
    } else {
      // The next paragraph rejoins the level of some ancestor of this one.
      int ancestor = nodes[id].parent;
      while (ancestor != kRoot && nodes[ancestor].parent != next.parent) {
        ancestor = nodes[ancestor].parent;
      }
      if (ancestor == kRoot) {
        throw Error("tree is not in preorder near block " +
                    std::to_string(tail));
      }
      ann.labels[tail] = Label::kUp;
      ann.pointers[tail] = nodes[ancestor].blocks.back();
    }
  }
  return ann;
}

std::string_view RelationName(Relation relation) {
  switch (relation) {
    case Relation::kSameParagraph:
      return "same_paragraph";
    case Relation::kSibling:
      return "sibling";
    case Relation::kAncestorDescendant:
      return "ancestor_descendant";
    case Relation::kNone:
      return "none";
  }
  return "?";
}

RelationshipMatrix::RelationshipMatrix(int n)
    : n_(n), cells_(static_cast<std::size_t>(n) * n, Relation::kNone) {
  for (int i = 0; i < n; ++i) cells_[Index(i, i)] = Relation::kSameParagraph;
}

void RelationshipMatrix::Set(int i, int j, Relation r) {
  cells_[Index(i, j)] = r;
  cells_[Index(j, i)] = r;
}

RelationshipMatrix BuildRelationshipMatrix(const DocumentTree& tree) {
  const int n = tree.num_blocks;
  RelationshipMatrix m(n);
  const std::vector<FlatNode> nodes = FlattenTree(tree);

  std::vector<int> node_of(n, -1);
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    for (int b : nodes[id].blocks) node_of[b] = static_cast<int>(id);
  }
  auto is_ancestor = [&](int a, int d) {
    for (int p = nodes[d].parent; p != kRoot; p = nodes[p].parent) {
      if (p == a) return true;
    }
    return false;
  };

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int p = node_of[i];
      const int q = node_of[j];
      Relation r = Relation::kNone;
      if (p < 0 || q < 0) {
        r = Relation::kNone;
      } else if (p == q) {
        r = Relation::kSameParagraph;
      } else if (nodes[p].parent == nodes[q].parent) {
        r = Relation::kSibling;
      } else if (is_ancestor(p, q) || is_ancestor(q, p)) {
        r = Relation::kAncestorDescendant;
      }
      m.Set(i, j, r);
    }
  }
  return m;
}

std::vector<bool> BoundaryVector(const Annotation& ann) {
  const std::size_t n = ann.size();
  std::vector<bool> out(n > 0 ? n - 1 : 0, true);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const bool both_kept = ann.labels[i] != Label::kOmitted &&
                           ann.labels[i + 1] != Label::kOmitted;
    out[i] = !(both_kept && ann.labels[i] == Label::kContinuous);
  }
  return out;
}

std::string TreeToJson(const DocumentTree& tree, int indent) {
  ordered_json root;
  root["blocks"] = ordered_json::array();
  ordered_json children = ordered_json::array();
  for (const auto& top : tree.top_level) children.push_back(NodeToJson(top));
  root["children"] = std::move(children);
  root["debris"] = tree.debris;
  return root.dump(indent);
}

DocumentTree TreeFromJson(std::string_view json) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed tree JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("children") ||
      !root.contains("debris")) {
    throw Error("tree JSON: root needs \"children\" and \"debris\"");
  }
  DocumentTree tree;
  for (const auto& c : root["children"]) {
    tree.top_level.push_back(NodeFromJson(c));
  }
  tree.debris = root["debris"].get<std::vector<int>>();
  std::sort(tree.debris.begin(), tree.debris.end());
  int count = static_cast<int>(tree.debris.size());
  std::function<void(const ParagraphNode&)> visit =
      [&](const ParagraphNode& node) {
        count += static_cast<int>(node.blocks.size());
        for (const auto& c : node.children) visit(c);
      };
  for (const auto& top : tree.top_level) visit(top);
  tree.num_blocks = count;
  return tree;
}

std::vector<FlatParagraph> Preorder(const DocumentTree& tree) {
  std::vector<FlatParagraph> out;
  std::function<void(const ParagraphNode&, int)> visit =
      [&](const ParagraphNode& node, int depth) {
        out.push_back({&node, depth});
        for (const auto& c : node.children) visit(c, depth + 1);
      };
  for (const auto& top : tree.top_level) visit(top, 0);
  return out;
}

}  // namespace vsd

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

#include <gtest/gtest.h>

#include <random>

#include "support/oracles.h"
#include "vsd/error.h"

namespace vsd {
namespace {

using ::vsd::testing::MakeAnnotation;

ParagraphNode Para(std::vector<int> blocks,
                   std::vector<ParagraphNode> children = {}) {
  return ParagraphNode{std::move(blocks), std::move(children)};
}

TEST(BuildTree, AllContinuous) {
  const auto tree = BuildTree(MakeAnnotation("ccs"));
  ASSERT_EQ(tree.top_level.size(), 1u);
  EXPECT_EQ(tree.top_level[0].blocks, (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(tree.top_level[0].children.empty());
  EXPECT_TRUE(tree.debris.empty());
}

// Blocks 0..8 follow the example contract's clauses 5 to 9: a heading that
// opens a list, a page-number footer in the middle, and a return to the
// heading's level.
TEST(BuildTree, ExampleContractFragment) {
  const auto tree = BuildTree(MakeAnnotation("dcsdsosus", {3}));
  EXPECT_EQ(tree.debris, (std::vector<int>{5}));
  DocumentTree expected;
  expected.num_blocks = 9;
  expected.debris = {5};
  expected.top_level = {
      Para({0}, {Para({1, 2}), Para({3}, {Para({4}), Para({6}), Para({7})}),
                 Para({8})})};
  EXPECT_EQ(tree, expected);
  const auto m = BuildRelationshipMatrix(tree);
  EXPECT_EQ(m.at(4, 6), Relation::kSibling);
  EXPECT_EQ(m.at(6, 7), Relation::kSibling);
  EXPECT_EQ(m.at(3, 8), Relation::kSibling);
  EXPECT_EQ(m.at(3, 7), Relation::kAncestorDescendant);
  EXPECT_EQ(m.at(5, 4), Relation::kNone);
}

TEST(BuildTree, UpRejoinsPointerLevel) {
  const auto tree = BuildTree(MakeAnnotation("ddus", {0}));
  DocumentTree expected;
  expected.num_blocks = 4;
  expected.top_level = {Para({0}, {Para({1}, {Para({2})})}), Para({3})};
  EXPECT_EQ(tree, expected);
}

TEST(BuildTree, RejectsPointerOutsideOpenPath) {
  EXPECT_THROW(BuildTree(MakeAnnotation("dusus", {0, 0})), TreeError);
  Annotation missing = MakeAnnotation("dus", {0});
  missing.pointers[1] = std::nullopt;
  EXPECT_THROW(BuildTree(missing), Error);
}

TEST(TreeToAnnotation, SingleParagraph) {
  DocumentTree t;
  t.num_blocks = 3;
  t.top_level = {Para({0, 1, 2})};
  EXPECT_EQ(TreeToAnnotation(t), MakeAnnotation("ccs"));
}

TEST(TreeToAnnotation, TwoTopLevelParagraphs) {
  DocumentTree t;
  t.num_blocks = 2;
  t.top_level = {Para({0}), Para({1})};
  EXPECT_EQ(TreeToAnnotation(t), MakeAnnotation("ss"));
}

TEST(TreeToAnnotation, NestedThenReturn) {
  DocumentTree t;
  t.num_blocks = 4;
  t.top_level = {Para({0}, {Para({1}), Para({2})}), Para({3})};
  EXPECT_EQ(TreeToAnnotation(t), MakeAnnotation("dsus", {0}));
}

TEST(TreeToAnnotation, RejectsBadCoverage) {
  DocumentTree t;
  t.num_blocks = 3;
  t.top_level = {Para({0, 2})};
  EXPECT_THROW(TreeToAnnotation(t), Error);
  t.top_level = {Para({1, 0})};
  t.debris = {2};
  EXPECT_THROW(TreeToAnnotation(t), Error);
}

TEST(RelationshipMatrix, HandDerivedPairs) {
  DocumentTree t;
  t.num_blocks = 4;
  t.top_level = {Para({0}, {Para({1}), Para({2})}), Para({3})};
  const auto m = BuildRelationshipMatrix(t);
  EXPECT_EQ(m.at(0, 1), Relation::kAncestorDescendant);
  EXPECT_EQ(m.at(0, 2), Relation::kAncestorDescendant);
  EXPECT_EQ(m.at(1, 2), Relation::kSibling);
  EXPECT_EQ(m.at(0, 3), Relation::kSibling);
  EXPECT_EQ(m.at(1, 3), Relation::kNone);
  EXPECT_EQ(m.at(2, 3), Relation::kNone);
}

TEST(RelationshipMatrix, SingleParagraph) {
  DocumentTree t;
  t.num_blocks = 3;
  t.top_level = {Para({0, 1, 2})};
  const auto m = BuildRelationshipMatrix(t);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(m.at(i, j), Relation::kSameParagraph);
  }
}

TEST(RelationshipMatrix, CousinsAreNone) {
  // {A{B{C}}, D{E}}: C vs D is grandchild vs uncle, C vs E are cousins.
  DocumentTree t;
  t.num_blocks = 5;
  t.top_level = {Para({0}, {Para({1}, {Para({2})})}), Para({3}, {Para({4})})};
  const auto m = BuildRelationshipMatrix(t);
  EXPECT_EQ(m.at(2, 3), Relation::kNone);
  EXPECT_EQ(m.at(2, 4), Relation::kNone);
  EXPECT_EQ(m.at(1, 4), Relation::kNone);
  EXPECT_EQ(m.at(0, 2), Relation::kAncestorDescendant);
}

TEST(Boundary, HandExamples) {
  EXPECT_EQ(BoundaryVector(MakeAnnotation("cs")), (std::vector<bool>{false}));
  EXPECT_EQ(BoundaryVector(MakeAnnotation("ss")), (std::vector<bool>{true}));
  EXPECT_EQ(BoundaryVector(MakeAnnotation("cocs")),
            (std::vector<bool>{true, true, false}));
}

TEST(TreeJson, RoundTripAndShape) {
  const auto tree = BuildTree(MakeAnnotation("dcsdsosus", {3}));
  EXPECT_EQ(TreeFromJson(TreeToJson(tree)), tree);
  EXPECT_EQ(TreeToJson(BuildTree(MakeAnnotation("cs"))),
            R"({"blocks":[],"children":[{"blocks":[0,1],"children":[]}],)"
            R"("debris":[]})");
  EXPECT_THROW(TreeFromJson("[]"), Error);
}

TEST(Preorder, DepthsFollowNesting) {
  const auto tree = BuildTree(MakeAnnotation("ddus", {0}));
  const auto flat = Preorder(tree);
  ASSERT_EQ(flat.size(), 4u);
  EXPECT_EQ(flat[0].depth, 0);
  EXPECT_EQ(flat[1].depth, 1);
  EXPECT_EQ(flat[2].depth, 2);
  EXPECT_EQ(flat[3].depth, 0);
}

class TreeProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(TreeProperty, RoundTripsBothWays) {
  std::mt19937_64 rng(GetParam());
  for (int trial = 0; trial < 100; ++trial) {
    const auto tree = testing::RandomTree(rng, 50, 5, 0.15);
    const auto ann = TreeToAnnotation(tree);
    ASSERT_TRUE(ValidateAnnotation(tree.num_blocks, ann).empty());
    ASSERT_EQ(BuildTree(ann), tree);
    ASSERT_EQ(TreeToAnnotation(BuildTree(ann)), ann);
  }
}

TEST_P(TreeProperty, MatrixMatchesLcaOracle) {
  std::mt19937_64 rng(GetParam() + 1000);
  for (int trial = 0; trial < 50; ++trial) {
    const auto tree = testing::RandomTree(rng, 50, 5, 0.15);
    const auto m = BuildRelationshipMatrix(tree);
    const auto oracle = testing::LcaRelationOracle(tree);
    std::vector<bool> debris(tree.num_blocks, false);
    for (int d : tree.debris) debris[d] = true;
    for (int i = 0; i < tree.num_blocks; ++i) {
      for (int j = 0; j < tree.num_blocks; ++j) {
        ASSERT_EQ(static_cast<int>(m.at(i, j)), oracle[i][j]) << i << "," << j;
        ASSERT_EQ(m.at(i, j), m.at(j, i));
        if (i != j && (debris[i] || debris[j])) {
          ASSERT_EQ(m.at(i, j), Relation::kNone);
        }
      }
    }
  }
}

TEST_P(TreeProperty, BoundaryAgreesWithParagraphMembership) {
  std::mt19937_64 rng(GetParam() + 2000);
  for (int trial = 0; trial < 50; ++trial) {
    const auto tree = testing::RandomTree(rng, 50, 5, 0.15);
    const auto b = BoundaryVector(TreeToAnnotation(tree));
    const auto oracle = testing::LcaRelationOracle(tree);
    ASSERT_EQ(b.size(), static_cast<std::size_t>(tree.num_blocks - 1));
    for (int i = 0; i + 1 < tree.num_blocks; ++i) {
      ASSERT_EQ(b[i], oracle[i][i + 1] != 0) << i;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, TreeProperty, ::testing::Values(1, 2, 3));

}  // namespace
}  // namespace vsd

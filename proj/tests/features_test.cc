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


#include "vsd/features.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "support/oracles.h"
#include "vsd/error.h"
#include "vsd/synth.h"

namespace vsd {
namespace {

using ::vsd::testing::MakeAnnotation;
using ::vsd::testing::TextDocument;

std::set<std::string> Names(const FeatureRegistry& r) {
  std::set<std::string> out;
  for (const auto& d : r.features()) out.insert(d.name);
  return out;
}

std::set<std::string> AllNamesExcept(std::set<std::string> excluded) {
  std::set<std::string> out;
  for (const auto& d : AllFeatures()) {
    if (!excluded.count(d.name)) out.insert(d.name);
  }
  return out;
}

int Column(const FeatureMatrix& m, const std::string& name) {
  const auto it = std::find(m.columns.begin(), m.columns.end(), name);
  if (it == m.columns.end()) throw std::out_of_range(name);
  return static_cast<int>(it - m.columns.begin());
}

TEST(Registry, TwentyFiveUniqueDescriptors) {
  const auto& all = AllFeatures();
  EXPECT_EQ(all.size(), 25u);
  std::set<std::string> names;
  for (const auto& d : all) names.insert(d.name);
  EXPECT_EQ(names.size(), 25u);
  EXPECT_EQ(DescriptorByName("T1").id, FeatureId::kT1);
  EXPECT_THROW(DescriptorByName("Z9"), Error);
}

TEST(Registry, CheckmarkMatrixPerDocumentType) {
  EXPECT_EQ(Names(FeatureRegistry::ForDocType(DocType::kContractPdfEn)),
            AllNamesExcept({"V2", "V11", "V12", "T12"}));
  EXPECT_EQ(Names(FeatureRegistry::ForDocType(DocType::kContractTxtEn)),
            AllNamesExcept({"V5", "V6", "V7", "V10", "V11", "V12"}));
  EXPECT_EQ(Names(FeatureRegistry::ForDocType(DocType::kContractPdfJa)),
            AllNamesExcept({"V2", "T4", "T7", "T8", "T9", "T10", "T12"}));
  EXPECT_EQ(FeatureRegistry::ForDocType(DocType::kContractPdfEn).features().size(),
            21u);
  EXPECT_EQ(FeatureRegistry::ForDocType(DocType::kContractTxtEn).features().size(),
            19u);
  EXPECT_EQ(FeatureRegistry::ForDocType(DocType::kContractPdfJa).features().size(),
            18u);
}

TEST(Registry, ContractAndLawShareOneSchema) {
  const auto a = FeatureRegistry::ForDocType(DocType::kContractPdfEn);
  const auto b = FeatureRegistry::ForDocType(DocType::kLawPdfEn);
  EXPECT_EQ(a.columns(), b.columns());
  EXPECT_EQ(a.Fingerprint(), b.Fingerprint());
}

TEST(Registry, DisablingFeatures) {
  const auto full = FeatureRegistry::ForDocType(DocType::kContractPdfEn);
  const auto ablated =
      FeatureRegistry::ForDocType(DocType::kContractPdfEn, {"S1", "T1"});
  EXPECT_FALSE(ablated.Has(FeatureId::kS1));
  EXPECT_FALSE(ablated.Has(FeatureId::kT1));
  EXPECT_TRUE(ablated.Has(FeatureId::kV1));
  EXPECT_EQ(ablated.width(), full.width() - 9);
  EXPECT_NE(ablated.Fingerprint(), full.Fingerprint());
  EXPECT_THROW(FeatureRegistry::ForDocType(DocType::kContractPdfEn, {"Q1"}),
               Error);
}

TEST(Registry, ColumnsAreSortedAndNamed) {
  const auto r = FeatureRegistry::ForDocType(DocType::kContractTxtEn);
  EXPECT_TRUE(std::is_sorted(r.columns().begin(), r.columns().end()));
  const auto& c = r.columns();
  for (const char* name : {"V1.1-2.deeper", "V1.2-3.absent", "T1.2.up",
                           "S1.1-2-3.f1", "T12.3", "present.4"}) {
    EXPECT_NE(std::find(c.begin(), c.end(), name), c.end()) << name;
  }
}

TEST(Contexts, SkipMaskedNeighbors) {
  const auto ctx = BuildContexts(5, {false, false, true, false, false});
  EXPECT_EQ(ctx[1].slots, (std::array<int, 4>{0, 1, 3, 4}));
  EXPECT_EQ(ctx[0].slots, (std::array<int, 4>{-1, 0, 1, 3}));
  EXPECT_EQ(ctx[3].slots, (std::array<int, 4>{1, 3, 4, -1}));
  // A masked block keeps its contiguous neighbours.
  EXPECT_EQ(ctx[2].slots, (std::array<int, 4>{1, 2, 3, 4}));
  EXPECT_THROW(BuildContexts(3, {false}), Error);
}

Document PdfLines(const std::vector<std::string>& texts) {
  Document doc;
  doc.doc_id = "f";
  doc.doc_type = DocType::kContractPdfEn;
  double y = 700;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    doc.blocks.push_back({static_cast<int>(i), texts[i], 1,
                          {72, y - 10, 400, y}, 0});
    y -= 14;
  }
  return doc;
}

TEST(TransitionMatrix, FirstBlockPageChangeUsesNullDefault) {
  const auto doc = PdfLines({"1. Term", "The term is one year.", "2. Fees"});
  const auto a = AnalyzeDocument(doc);
  const auto r = FeatureRegistry::ForDocType(doc.doc_type);
  const auto m = TransitionFeatureMatrix(a, std::vector<bool>(3, false), r,
                                         nullptr);
  EXPECT_EQ(m.columns, r.columns());
  ASSERT_EQ(m.rows.size(), 3u);
  EXPECT_EQ(m.rows[0][Column(m, "V5.1-2")], 1.0);
  EXPECT_EQ(m.rows[1][Column(m, "V5.1-2")], 0.0);
  EXPECT_EQ(m.rows[0][Column(m, "present.1")], 0.0);
  EXPECT_EQ(m.rows[0][Column(m, "V1.1-2.absent")], 1.0);
  EXPECT_EQ(m.rows[2][Column(m, "V1.2-3.absent")], 1.0);
  // Without a scorer S1 is absent everywhere.
  for (const auto& row : m.rows) {
    EXPECT_EQ(row[Column(m, "S1.1-2-3.absent")], 1.0);
  }
}

TEST(TransitionMatrix, NumberingStepColumn) {
  const auto doc = PdfLines({"1. One", "(a) first", "(b) second", "2. Two"});
  const auto a = AnalyzeDocument(doc);
  const auto r = FeatureRegistry::ForDocType(doc.doc_type);
  const auto m =
      TransitionFeatureMatrix(a, std::vector<bool>(4, false), r, nullptr);
  // Row i carries the step taken when consuming block i + 1.
  EXPECT_EQ(m.rows[0][Column(m, "T1.2.down")], 1.0);
  EXPECT_EQ(m.rows[1][Column(m, "T1.2.consecutive")], 1.0);
  EXPECT_EQ(m.rows[2][Column(m, "T1.2.up")], 1.0);
  EXPECT_EQ(m.rows[3][Column(m, "T1.2.absent")], 1.0);
}

TEST(TransitionMatrix, ScorerFillsCoherenceColumns) {
  const auto doc = PdfLines({"alpha beta", "gamma delta", "epsilon"});
  const auto a = AnalyzeDocument(doc);
  const auto r = FeatureRegistry::ForDocType(doc.doc_type);
  const auto lm = CharNGramModel::Train({"alpha beta gamma delta epsilon"});
  const auto m = TransitionFeatureMatrix(a, std::vector<bool>(3, false), r, &lm);
  EXPECT_EQ(m.rows[1][Column(m, "S1.1-2-3.absent")], 0.0);
  EXPECT_EQ(m.rows[0][Column(m, "S1.1-2-3.absent")], 1.0);
}

TEST(TransitionMatrix, PureFunctionOfBlocks) {
  SynthSpec spec;
  spec.documents = 2;
  const auto docs = Synthesize(spec, 3);
  auto copy = docs[0].labeled.doc;
  copy.doc_id = "other";
  const auto r = FeatureRegistry::ForDocType(copy.doc_type);
  const std::vector<bool> mask(copy.blocks.size(), false);
  const auto a1 = AnalyzeDocument(docs[0].labeled.doc);
  const auto a2 = AnalyzeDocument(copy);
  EXPECT_EQ(TransitionFeatureMatrix(a1, mask, r, nullptr).rows,
            TransitionFeatureMatrix(a2, mask, r, nullptr).rows);
}

TEST(TransitionMatrix, MaskLocalityProperty) {
  SynthSpec spec;
  spec.documents = 6;
  spec.debris_rate = 0;
  for (DocType type : {DocType::kContractPdfEn, DocType::kContractTxtEn}) {
    spec.doc_type = type;
    const auto docs = Synthesize(spec, 13);
    std::mt19937_64 rng(61);
    for (const auto& sd : docs) {
      const auto& doc = sd.labeled.doc;
      const int n = static_cast<int>(doc.blocks.size());
      const auto analysis = AnalyzeDocument(doc);
      const auto r = FeatureRegistry::ForDocType(type);
      std::vector<bool> mask(n, false);
      const auto base = TransitionFeatureMatrix(analysis, mask, r, nullptr);
      for (int trial = 0; trial < 10; ++trial) {
        const int m = rng() % n;
        mask.assign(n, false);
        mask[m] = true;
        const auto masked = TransitionFeatureMatrix(analysis, mask, r, nullptr);
        for (int i = 0; i < n; ++i) {
          if (std::abs(i - m) <= 1) continue;
          for (std::size_t c = 0; c < base.columns.size(); ++c) {
            const auto& col = base.columns[c];
            // The numbering memory replays the whole retained sequence and
            // slot 4 only records presence.
            if (col.rfind("T1.", 0) == 0 || col == "present.4") continue;
            ASSERT_EQ(base.rows[i][c], masked.rows[i][c])
                << doc.doc_id << " row " << i << " mask " << m << " " << col;
          }
        }
      }
    }
  }
}

TEST(Pointer, CandidatesAndCounts) {
  const std::vector<Label> labels = {Label::kDown, Label::kConsecutive,
                                     Label::kUp, Label::kConsecutive};
  EXPECT_EQ(PointerCandidates(labels, 2), std::vector<int>{0});
  const auto doc = PdfLines({"1. One", "(a) first", "(b) second", "2. Two"});
  const auto a = AnalyzeDocument(doc);
  const auto row = PointerFeatureRow(a, labels, 2, 0);
  const auto& cols = PointerColumns();
  auto at = [&](const std::string& name) {
    return row[std::find(cols.begin(), cols.end(), name) - cols.begin()];
  };
  EXPECT_EQ(at("count.down"), 0);
  EXPECT_EQ(at("count.up"), 0);
  EXPECT_EQ(at("count.diff"), 0);
  EXPECT_EQ(at("numbering.tb1"), 1);
  EXPECT_EQ(at("numbering.head"), 1);
  EXPECT_EQ(at("tb3.absent"), 0);
}

TEST(Pointer, ConsecutiveNumberingAtCandidate) {
  const auto doc = PdfLines({"2. Two", "(a) sub", "3. Three"});
  const auto a = AnalyzeDocument(doc);
  const std::vector<Label> labels = {Label::kDown, Label::kUp,
                                     Label::kConsecutive};
  const auto rows = PointerFeatureRows(a, labels);
  ASSERT_EQ(rows.pairs.size(), 1u);
  EXPECT_EQ(rows.pairs[0].up_block, 1);
  EXPECT_EQ(rows.pairs[0].candidate, 0);
  const auto& cols = PointerColumns();
  const auto idx = std::find(cols.begin(), cols.end(), "numbering.tb1") -
                   cols.begin();
  EXPECT_EQ(rows.rows[0][idx], 1);
}

TEST(Pointer, SingleBlockParagraphHeadIsCandidate) {
  const auto ann = MakeAnnotation("sdcus", {1});
  EXPECT_EQ(ParagraphHead(ann.labels, 1), 1);
  EXPECT_EQ(ParagraphHead(ann.labels, 3), 2);
  const auto doc = PdfLines({"a", "b", "c", "d", "e"});
  const auto a = AnalyzeDocument(doc);
  const auto row = PointerFeatureRow(a, ann.labels, 3, 1);
  const auto& cols = PointerColumns();
  auto at = [&](const std::string& name) {
    return row[std::find(cols.begin(), cols.end(), name) - cols.begin()];
  };
  EXPECT_EQ(at("left_aligned.head"), at("left_aligned.tb1"));
  EXPECT_TRUE(std::is_sorted(cols.begin(), cols.end()));
}

TEST(Csv, HeaderAndRows) {
  std::ostringstream out;
  WriteFeatureCsv(out, {"a", "b"}, {{1, 0.5}, {0, 2}}, {"d:0", "d:1"});
  EXPECT_EQ(out.str(), "row,a,b\nd:0,1,0.5\nd:1,0,2\n");
}

TEST(Fingerprint, Fnv1aReferenceValues) {
  EXPECT_EQ(Fnv1a(""), 14695981039346656037ULL);
  EXPECT_EQ(Fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace vsd

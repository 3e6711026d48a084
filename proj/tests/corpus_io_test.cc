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


#include "vsd/corpus_io.h"

#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "vsd/error.h"
#include "vsd/synth.h"

namespace vsd {
namespace {

namespace fs = std::filesystem;

class CorpusIo : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("vsd_corpus_io_" + std::to_string(::getpid()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }
  fs::path root_;
};

TEST_F(CorpusIo, SaveAndLoadRoundTrip) {
  SynthSpec spec;
  spec.documents = 3;
  const auto docs = Synthesize(spec, 1);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    SaveLabeledDocument(root_ / "nested" / ("d" + std::to_string(i)),
                        docs[i].labeled);
  }
  const auto dirs = DiscoverDocuments(root_);
  ASSERT_EQ(dirs.size(), 3u);
  EXPECT_TRUE(std::is_sorted(dirs.begin(), dirs.end()));
  const auto corpus = LoadCorpus(root_);
  ASSERT_EQ(corpus.size(), 3u);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(corpus[i].doc.blocks, docs[i].labeled.doc.blocks);
    EXPECT_EQ(corpus[i].gold, docs[i].labeled.gold);
  }
}

TEST_F(CorpusIo, PlainTextDocumentsNeedAType) {
  SynthSpec spec;
  spec.doc_type = DocType::kContractTxtEn;
  spec.documents = 1;
  const auto doc = Synthesize(spec, 1)[0].labeled;
  const auto dir = root_ / "txt";
  SaveLabeledDocument(dir, doc);
  EXPECT_TRUE(fs::exists(dir / kSourceFile));
  fs::remove(dir / kBlocksFile);
  EXPECT_THROW(LoadDocument(dir), Error);
  const auto loaded = LoadDocument(dir, DocType::kContractTxtEn);
  EXPECT_EQ(loaded.doc_id, "txt");
  EXPECT_EQ(loaded.blocks, doc.doc.blocks);
}

TEST_F(CorpusIo, AtomicWriteReplacesContent) {
  const auto file = root_ / "a" / "x.txt";
  WriteFileAtomic(file, "one");
  WriteFileAtomic(file, "two");
  EXPECT_EQ(ReadFile(file), "two");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(root_ / "a")) {
    ++entries;
  }
  EXPECT_EQ(entries, 1u);
}

TEST_F(CorpusIo, MissingFilesAreErrors) {
  EXPECT_THROW(ReadFile(root_ / "nope"), Error);
  fs::create_directories(root_ / "empty");
  EXPECT_THROW(LoadDocument(root_ / "empty"), Error);
  EXPECT_TRUE(DiscoverDocuments(root_ / "empty").empty());
}

TEST_F(CorpusIo, StrictGoldParsing) {
  SynthSpec spec;
  spec.documents = 1;
  const auto doc = Synthesize(spec, 1)[0].labeled;
  SaveLabeledDocument(root_ / "d", doc);
  std::ofstream(root_ / "d" / kGoldFile) << "0\tu\t-\n";
  EXPECT_THROW(LoadLabeledDocument(root_ / "d"), Error);
}

}  // namespace
}  // namespace vsd

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


// Drives the vsdstruct binary end to end through a shell.

#include <sys/wait.h>
#include <unistd.h>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

struct CommandResult {
  int code;
  std::string output;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vsd_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CommandResult Exec(const std::string& args, const std::string& env = "") {
    const fs::path log = dir_ / "log.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" +
                            VSD_CLI + "' " + args + " > '" + log.string() +
                            "' 2>&1";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, Slurp(log)};
  }

  void MakeCorpus(const std::string& extra = "") {
    ASSERT_EQ(Exec("synth --out corpus --documents 6 --seed 4 " + extra).code,
              0);
  }

  fs::path dir_;
};

TEST_F(Cli, SynthGoldValidates) {
  MakeCorpus();
  const auto r = Exec("validate corpus");
  EXPECT_EQ(r.code, 0) << r.output;
}

TEST_F(Cli, ValidateReportsUpWithoutPointer) {
  MakeCorpus();
  const auto blocks = nlohmann::json::parse(
      Slurp(dir_ / "corpus" / "doc-0002" / "blocks.json"))["blocks"];
  std::ofstream gold(dir_ / "corpus" / "doc-0002" / "gold.tsv");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const char* label = i == 0 ? "d" : i == 1 ? "u" : "s";
    gold << i << "\t" << label << "\t-\n";
  }
  gold.close();
  const auto r = Exec("validate corpus");
  EXPECT_EQ(r.code, 2);
  EXPECT_THAT(r.output, HasSubstr("block 1: UP requires pointer"));
}

TEST_F(Cli, TrainPredictIsIdempotent) {
  MakeCorpus();
  ASSERT_EQ(Exec("train --corpus corpus --model m.json --trees 10").code, 0);
  const auto first = Slurp(dir_ / "m.json");
  ASSERT_EQ(Exec("train --corpus corpus --model m.json --trees 10").code, 0);
  EXPECT_EQ(Slurp(dir_ / "m.json"), first);

  ASSERT_EQ(Exec("predict --model m.json --input corpus --out p1").code, 0);
  ASSERT_EQ(
      Exec("predict --model m.json --input corpus --out p2 --jobs 3").code, 0);
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir_ / "p1")) {
    ++files;
    EXPECT_EQ(Slurp(e.path()), Slurp(dir_ / "p2" / e.path().filename()));
    const auto j = nlohmann::json::parse(Slurp(e.path()));
    EXPECT_TRUE(j.contains("labels") && j.contains("pointers") &&
                j.contains("tree") && j.contains("paragraph_texts"));
  }
  EXPECT_EQ(files, 6);
}

TEST_F(Cli, PredictWithMismatchedTypeFails) {
  MakeCorpus();
  ASSERT_EQ(Exec("train --corpus corpus --model m.json --trees 5").code, 0);
  ASSERT_EQ(Exec("synth --out ja --documents 1 --doc-type contract-pdf-ja")
                .code,
            0);
  const auto r = Exec("predict --model m.json --input ja --out p");
  EXPECT_EQ(r.code, 1);
  EXPECT_THAT(r.output, HasSubstr("contract-pdf-ja"));
  EXPECT_THAT(r.output, HasSubstr("contract-pdf-en"));
}

TEST_F(Cli, EvaluateWritesEveryReportSection) {
  MakeCorpus();
  ASSERT_EQ(Exec("evaluate --corpus corpus --folds 3 --trees 5 --format json "
                 "--out report.json")
                .code,
            0);
  const auto j = nlohmann::json::parse(Slurp(dir_ / "report.json"));
  EXPECT_EQ(j["folds"], 3);
  for (const char* s : {"ours", "numbering", "visual"}) {
    EXPECT_TRUE(j["systems"][s]["micro"].contains("boundary"));
    EXPECT_TRUE(j["systems"][s]["macro"].contains("elimination"));
  }
  ASSERT_EQ(Exec("evaluate --corpus corpus --folds 3 --trees 5 --format json "
                 "--out again.json")
                .code,
            0);
  EXPECT_EQ(Slurp(dir_ / "again.json"), Slurp(dir_ / "report.json"));
  const auto table =
      Exec("evaluate --corpus corpus --folds 2 --trees 5 --scorer none");
  EXPECT_EQ(table.code, 0);
  EXPECT_THAT(table.output, HasSubstr("Boundary F1"));
}

TEST_F(Cli, TextCorpusNeedsNoBlockJson) {
  ASSERT_EQ(Exec("synth --out txt --documents 4 --doc-type contract-txt-en")
                .code,
            0);
  for (const auto& e : fs::directory_iterator(dir_ / "txt")) {
    fs::remove(e.path() / "blocks.json");
  }
  EXPECT_EQ(Exec("validate txt").code, 1);
  EXPECT_EQ(Exec("validate txt --doc-type contract-txt-en").code, 0);
  EXPECT_EQ(Exec("train --corpus txt --doc-type contract-txt-en --model t.json "
                 "--trees 5")
                .code,
            0);
}

TEST_F(Cli, IngestPlainText) {
  std::ofstream(dir_ / "contract.txt") << "1. Term\n\n   The term is one year.\n";
  ASSERT_EQ(Exec("ingest contract.txt --doc-type contract-txt-en --out doc")
                .code,
            0);
  const auto j = nlohmann::json::parse(Slurp(dir_ / "doc" / "blocks.json"));
  EXPECT_EQ(j["doc_id"], "contract");
  EXPECT_EQ(j["blocks"].size(), 2u);
  EXPECT_EQ(Slurp(dir_ / "doc" / "source.txt"),
            "1. Term\n\n   The term is one year.\n");
  EXPECT_EQ(Exec("ingest contract.txt --out doc2").code, 1);
}

TEST_F(Cli, FeatureDump) {
  MakeCorpus();
  ASSERT_EQ(Exec("features corpus/doc-0000 --out f.csv").code, 0);
  const auto csv = Slurp(dir_ / "f.csv");
  EXPECT_EQ(csv.rfind("row,S1.1-2-3.absent,", 0), 0u);
  ASSERT_EQ(Exec("features corpus --pointer --out p.csv").code, 0);
  EXPECT_EQ(Slurp(dir_ / "p.csv").rfind("row,count.diff,", 0), 0u);
  ASSERT_EQ(
      Exec("features corpus/doc-0000 --disable-feature S1 --out g.csv").code,
      0);
  EXPECT_EQ(Slurp(dir_ / "g.csv").find("S1."), std::string::npos);
}

TEST_F(Cli, ExternalScorerFromEnvironment) {
  MakeCorpus();
  const std::string env =
      std::string("VSD_SCORER_CMD='") + VSD_FAKE_SCORER + "'";
  EXPECT_EQ(Exec("train --corpus corpus --model e.json --trees 5 "
                 "--scorer external")
                .code,
            1);
  ASSERT_EQ(Exec("train --corpus corpus --model e.json --trees 5 "
                 "--scorer external",
                 env)
                .code,
            0);
  EXPECT_EQ(Exec("predict --model e.json --input corpus --out p", env).code, 0);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_NE(Exec("").code, 0);
  EXPECT_NE(Exec("train --corpus missing --model m.json").code, 0);
  EXPECT_NE(Exec("synth --out x --doc-type nope").code, 0);
}

}  // namespace

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

#include <algorithm>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "vsd/error.h"

namespace vsd {

namespace fs = std::filesystem;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFileAtomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot replace " + path.string());
  }
}

std::vector<fs::path> DiscoverDocuments(const fs::path& root) {
  if (!fs::is_directory(root)) {
    throw Error("not a directory: " + root.string());
  }
  std::vector<fs::path> out;
  auto is_doc = [](const fs::path& dir) {
    return fs::is_regular_file(dir / kBlocksFile) ||
           fs::is_regular_file(dir / kSourceFile);
  };
  if (is_doc(root)) out.push_back(root);
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_directory() && is_doc(entry.path())) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Document LoadDocument(const fs::path& dir, std::optional<DocType> text_type) {
  const fs::path blocks = dir / kBlocksFile;
  try {
    if (fs::is_regular_file(blocks)) return ParseBlockJson(ReadFile(blocks));
    const fs::path source = dir / kSourceFile;
    if (!fs::is_regular_file(source)) {
      throw Error("no " + std::string(kBlocksFile) + " or " +
                  std::string(kSourceFile));
    }
    if (!text_type) {
      throw Error("plain-text document needs a text --doc-type");
    }
    return IngestPlainText(ReadFile(source), dir.filename().string(),
                           *text_type);
  } catch (const Error& e) {
    throw Error(dir.string() + ": " + e.what());
  }
}

LabeledDocument LoadLabeledDocument(const fs::path& dir,
                                    std::optional<DocType> text_type) {
  LabeledDocument d;
  d.doc = LoadDocument(dir, text_type);
  const fs::path gold = dir / kGoldFile;
  try {
    d.gold = ParseAnnotation(ReadFile(gold), d.doc.blocks.size());
  } catch (const Error& e) {
    throw Error(gold.string() + ": " + e.what());
  }
  return d;
}

std::vector<LabeledDocument> LoadCorpus(const fs::path& root,
                                        std::optional<DocType> text_type) {
  std::vector<LabeledDocument> out;
  for (const auto& dir : DiscoverDocuments(root)) {
    out.push_back(LoadLabeledDocument(dir, text_type));
  }
  if (out.empty()) throw Error("no documents under " + root.string());
  return out;
}

void SaveLabeledDocument(const fs::path& dir, const LabeledDocument& doc) {
  WriteFileAtomic(dir / kBlocksFile, WriteBlockJson(doc.doc));
  if (IsTextType(doc.doc.doc_type)) {
    WriteFileAtomic(dir / kSourceFile, RenderPlainText(doc.doc));
  }
  WriteFileAtomic(dir / kGoldFile, WriteAnnotation(doc.gold));
}

}  // namespace vsd

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

#ifndef VSD_CORPUS_IO_H_
#define VSD_CORPUS_IO_H_

// On-disk corpus layout: one directory per document holding blocks.json (or
// source.txt for plain-text documents) and, when annotated, gold.tsv.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsd/block_model.h"
#include "vsd/pipeline.h"

namespace vsd {

inline constexpr std::string_view kBlocksFile = "blocks.json";
inline constexpr std::string_view kSourceFile = "source.txt";
inline constexpr std::string_view kGoldFile = "gold.tsv";

std::string ReadFile(const std::filesystem::path& path);

// Writes to a temporary sibling and renames it over `path`. Creates the
// parent directories.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

// Document directories under `root` (recursive, sorted by path).
std::vector<std::filesystem::path> DiscoverDocuments(
    const std::filesystem::path& root);

// Reads blocks.json, or source.txt with `text_type` (required then). The
// document id of a source.txt document is the directory name.
Document LoadDocument(const std::filesystem::path& dir,
                      std::optional<DocType> text_type = std::nullopt);

// LoadDocument plus a strictly parsed gold.tsv.
LabeledDocument LoadLabeledDocument(
    const std::filesystem::path& dir,
    std::optional<DocType> text_type = std::nullopt);

std::vector<LabeledDocument> LoadCorpus(
    const std::filesystem::path& root,
    std::optional<DocType> text_type = std::nullopt);

// Writes blocks.json and gold.tsv (plus source.txt for text documents).
void SaveLabeledDocument(const std::filesystem::path& dir,
                         const LabeledDocument& doc);

}  // namespace vsd

#endif  // VSD_CORPUS_IO_H_

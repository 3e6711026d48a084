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

#include "vsd/block_model.h"

#include <algorithm>
#include <istream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vsd/error.h"
#include "vsd/structure_tree.h"
#include "vsd/utf8.h"

namespace vsd {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kTabStop = 8;

struct DocTypeEntry {
  DocType type;
  std::string_view name;
};

constexpr DocTypeEntry kDocTypes[] = {
    {DocType::kContractPdfEn, "contract-pdf-en"},
    {DocType::kLawPdfEn, "law-pdf-en"},
    {DocType::kContractTxtEn, "contract-txt-en"},
    {DocType::kContractPdfJa, "contract-pdf-ja"},
};

std::u32string ExpandTabs(std::u32string_view line) {
  std::u32string out;
  for (char32_t cp : line) {
    if (cp == U'\t') {
      const std::size_t pad = kTabStop - out.size() % kTabStop;
      out.append(pad, U' ');
    } else {
      out.push_back(cp);
    }
  }
  return out;
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  }
  return lines;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == '\t' || line[i] == ' ')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != '\t' && line[j] != ' ') ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::optional<int> ParseInt(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

std::string ReadAll(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

// Reconstructs blank-line counts from synthetic plain-text geometry.
void DeriveBlankLines(Document& doc) {
  for (std::size_t i = 0; i < doc.blocks.size(); ++i) {
    if (i == 0) {
      doc.blocks[i].blank_lines_before = 0;
      continue;
    }
    const double gap = doc.blocks[i - 1].bbox.y0 - doc.blocks[i].bbox.y1;
    doc.blocks[i].blank_lines_before = std::max(0, static_cast<int>(gap + 0.5));
  }
}

}  // namespace

std::string_view DocTypeName(DocType type) {
  for (const auto& e : kDocTypes) {
    if (e.type == type) return e.name;
  }
  return "unknown";
}

DocType ParseDocType(std::string_view name) {
  for (const auto& e : kDocTypes) {
    if (e.name == name) return e.type;
  }
  throw Error("unknown doc_type \"" + std::string(name) +
              "\" (expected contract-pdf-en, law-pdf-en, contract-txt-en or "
              "contract-pdf-ja)");
}

bool IsTextType(DocType type) { return type == DocType::kContractTxtEn; }
bool IsJapanese(DocType type) { return type == DocType::kContractPdfJa; }

int Document::NumPages() const {
  std::set<int> pages;
  for (const auto& b : blocks) pages.insert(b.page);
  return static_cast<int>(pages.size());
}

char LabelLetter(Label label) {
  switch (label) {
    case Label::kContinuous:
      return 'c';
    case Label::kConsecutive:
      return 's';
    case Label::kDown:
      return 'd';
    case Label::kUp:
      return 'u';
    case Label::kOmitted:
      return 'o';
  }
  return '?';
}

std::string_view LabelName(Label label) {
  switch (label) {
    case Label::kContinuous:
      return "continuous";
    case Label::kConsecutive:
      return "consecutive";
    case Label::kDown:
      return "down";
    case Label::kUp:
      return "up";
    case Label::kOmitted:
      return "omitted";
  }
  return "?";
}

std::optional<Label> LabelFromLetter(char letter) {
  switch (letter) {
    case 'c':
      return Label::kContinuous;
    case 's':
      return Label::kConsecutive;
    case 'd':
      return Label::kDown;
    case 'u':
      return Label::kUp;
    case 'o':
      return Label::kOmitted;
    default:
      return std::nullopt;
  }
}

std::optional<Label> LabelFromName(std::string_view name) {
  for (int i = 0; i < kNumLabels; ++i) {
    const auto label = static_cast<Label>(i);
    if (LabelName(label) == name) return label;
  }
  return std::nullopt;
}

int LastRetained(const std::vector<Label>& labels) {
  for (int i = static_cast<int>(labels.size()) - 1; i >= 0; --i) {
    if (labels[i] != Label::kOmitted) return i;
  }
  return -1;
}

Document ParseBlockJson(std::string_view json) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed block JSON: ") + e.what());
  }
  if (!root.is_object()) throw Error("block JSON: top level must be an object");
  for (const char* key : {"doc_id", "doc_type", "blocks"}) {
    if (!root.contains(key)) {
      throw Error(std::string("block JSON: missing field \"") + key + "\"");
    }
  }
  if (!root["doc_id"].is_string() || !root["doc_type"].is_string()) {
    throw Error("block JSON: doc_id and doc_type must be strings");
  }
  if (!root["blocks"].is_array()) {
    throw Error("block JSON: \"blocks\" must be an array");
  }

  Document doc;
  doc.doc_id = root["doc_id"].get<std::string>();
  doc.doc_type = ParseDocType(root["doc_type"].get<std::string>());
  const auto& blocks = root["blocks"];
  if (blocks.empty()) throw Error("block JSON: empty block list");

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& jb = blocks[i];
    const std::string where = "block JSON: block " + std::to_string(i);
    if (!jb.is_object()) throw Error(where + ": not an object");
    for (const char* key : {"text", "page", "bbox"}) {
      if (!jb.contains(key)) {
        throw Error(where + ": missing field \"" + key + "\"");
      }
    }
    if (!jb["text"].is_string()) throw Error(where + ": text must be a string");
    if (!jb["page"].is_number_integer() || jb["page"].get<long long>() < 1) {
      throw Error(where + ": page must be a positive integer");
    }
    const auto& jbox = jb["bbox"];
    if (!jbox.is_array() || jbox.size() != 4 ||
        !std::all_of(jbox.begin(), jbox.end(),
                     [](const auto& v) { return v.is_number(); })) {
      throw Error(where + ": bbox must be an array of four numbers");
    }
    TextBlock block;
    block.index = static_cast<int>(i);
    block.text = jb["text"].get<std::string>();
    block.page = jb["page"].get<int>();
    block.bbox = {jbox[0].get<double>(), jbox[1].get<double>(),
                  jbox[2].get<double>(), jbox[3].get<double>()};
    if (!(block.bbox.x0 < block.bbox.x1) || !(block.bbox.y0 < block.bbox.y1)) {
      throw Error(where + ": degenerate bbox");
    }
    if (utf8::Trim(block.text).empty()) {
      throw Error(where + ": empty block text");
    }
    doc.blocks.push_back(std::move(block));
  }
  if (IsTextType(doc.doc_type)) DeriveBlankLines(doc);
  return doc;
}

Document ReadBlockJson(std::istream& in) { return ParseBlockJson(ReadAll(in)); }

std::string WriteBlockJson(const Document& doc) {
  ordered_json root;
  root["doc_id"] = doc.doc_id;
  root["doc_type"] = std::string(DocTypeName(doc.doc_type));
  ordered_json blocks = ordered_json::array();
  for (const auto& b : doc.blocks) {
    ordered_json jb;
    jb["text"] = b.text;
    jb["page"] = b.page;
    jb["bbox"] = {b.bbox.x0, b.bbox.y0, b.bbox.x1, b.bbox.y1};
    blocks.push_back(std::move(jb));
  }
  root["blocks"] = std::move(blocks);
  return root.dump(1) + "\n";
}

Document IngestPlainText(std::string_view text, std::string doc_id,
                         DocType doc_type) {
  if (!IsTextType(doc_type)) {
    throw Error("plain-text ingestion requires a text doc_type, got " +
                std::string(DocTypeName(doc_type)));
  }
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.doc_type = doc_type;

  int blank_run = 0;
  const auto lines = SplitLines(text);
  for (std::size_t line_no = 0; line_no < lines.size(); ++line_no) {
    const std::u32string expanded = ExpandTabs(utf8::Decode(lines[line_no]));
    std::size_t begin = 0;
    while (begin < expanded.size() && utf8::IsSpace(expanded[begin])) ++begin;
    if (begin == expanded.size()) {
      ++blank_run;
      continue;
    }
    std::size_t end = expanded.size();
    while (end > begin && utf8::IsSpace(expanded[end - 1])) --end;

    TextBlock block;
    block.index = static_cast<int>(doc.blocks.size());
    block.text = utf8::Encode(
        std::u32string_view(expanded).substr(begin, end - begin));
    block.page = 1;
    const double y0 = 0.0 - static_cast<double>(line_no);
    block.bbox = {static_cast<double>(begin), y0, static_cast<double>(end),
                  y0 + 1};
    block.blank_lines_before = doc.blocks.empty() ? 0 : blank_run;
    blank_run = 0;
    doc.blocks.push_back(std::move(block));
  }
  if (doc.blocks.empty()) throw Error("empty document");
  return doc;
}

std::string RenderPlainText(const Document& doc) {
  std::string out;
  long long line = 0;
  for (const auto& b : doc.blocks) {
    const long long target = static_cast<long long>(-b.bbox.y0 + 0.5);
    for (; line < target; ++line) out.push_back('\n');
    out.append(static_cast<std::size_t>(std::max(0.0, b.bbox.x0 + 0.5)), ' ');
    out += b.text;
    out.push_back('\n');
    ++line;
  }
  return out;
}

Annotation ParseAnnotationLenient(std::string_view tsv) {
  Annotation ann;
  const auto lines = SplitLines(tsv);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    if (lines[n].empty()) continue;
    const std::string where = "annotation line " + std::to_string(n + 1);
    const auto fields = SplitFields(lines[n]);
    if (fields.size() != 3) throw Error(where + ": expected 3 columns");
    const auto index = ParseInt(fields[0]);
    if (!index || *index != static_cast<int>(ann.labels.size())) {
      throw Error(where + ": index column must be " +
                  std::to_string(ann.labels.size()));
    }
    if (fields[1].size() != 1 || !LabelFromLetter(fields[1][0])) {
      throw Error(where + ": unknown label \"" + std::string(fields[1]) + "\"");
    }
    ann.labels.push_back(*LabelFromLetter(fields[1][0]));
    if (fields[2] == "-") {
      ann.pointers.push_back(std::nullopt);
    } else {
      const auto ptr = ParseInt(fields[2]);
      if (!ptr) throw Error(where + ": pointer must be a block index or \"-\"");
      ann.pointers.push_back(*ptr);
    }
  }
  return ann;
}

Annotation ParseAnnotation(std::string_view tsv, std::size_t num_blocks) {
  Annotation ann = ParseAnnotationLenient(tsv);
  if (ann.size() != num_blocks) {
    throw Error("annotation has " + std::to_string(ann.size()) +
                " rows but the document has " + std::to_string(num_blocks) +
                " blocks");
  }
  for (std::size_t i = 0; i < ann.size(); ++i) {
    const std::string where = "annotation row " + std::to_string(i);
    const auto& ptr = ann.pointers[i];
    if (ann.labels[i] == Label::kUp && !ptr) {
      throw Error(where + ": UP requires pointer");
    }
    if (ann.labels[i] != Label::kUp && ptr) {
      throw Error(where + ": pointer on non-UP row");
    }
    if (ptr) {
      if (*ptr >= static_cast<int>(i)) {
        throw Error(where + ": pointer must precede its own index");
      }
      if (ann.labels[*ptr] != Label::kDown) {
        throw Error(where + ": pointer target " + std::to_string(*ptr) +
                    " is not DOWN");
      }
    }
  }
  return ann;
}

Annotation ReadAnnotation(std::istream& in, std::size_t num_blocks) {
  return ParseAnnotation(ReadAll(in), num_blocks);
}

std::string WriteAnnotation(const Annotation& ann) {
  std::string out;
  for (std::size_t i = 0; i < ann.size(); ++i) {
    out += std::to_string(i);
    out.push_back('\t');
    out.push_back(LabelLetter(ann.labels[i]));
    out.push_back('\t');
    out += ann.pointers[i] ? std::to_string(*ann.pointers[i]) : "-";
    out.push_back('\n');
  }
  return out;
}

std::vector<Violation> ValidateAnnotation(std::size_t num_blocks,
                                          const Annotation& ann) {
  std::vector<Violation> out;
  if (ann.labels.size() != num_blocks || ann.pointers.size() != num_blocks) {
    out.push_back({-1, "annotation length " + std::to_string(ann.size()) +
                           " does not match block count " +
                           std::to_string(num_blocks)});
    return out;
  }
  const int n = static_cast<int>(num_blocks);
  bool seen_down = false;
  for (int i = 0; i < n; ++i) {
    const Label label = ann.labels[i];
    const auto& ptr = ann.pointers[i];
    if (label == Label::kUp) {
      if (!seen_down) {
        out.push_back({i, "UP with no DOWN candidate"});
      } else if (!ptr) {
        out.push_back({i, "UP requires pointer"});
      }
    } else if (ptr) {
      out.push_back({i, "pointer on non-UP label"});
    }
    if (ptr && label == Label::kUp) {
      if (*ptr < 0 || *ptr >= i) {
        out.push_back({i, "pointer must precede its block"});
      } else if (ann.labels[*ptr] != Label::kDown) {
        out.push_back({i, "pointer target " + std::to_string(*ptr) +
                              " is not DOWN"});
      }
    }
    if (label == Label::kDown) seen_down = true;
  }
  const int last = LastRetained(ann.labels);
  if (last < 0) {
    out.push_back({-1, "every block is OMITTED"});
  } else if (ann.labels[last] != Label::kConsecutive) {
    out.push_back({last, "final retained block must carry the CONSECUTIVE "
                         "sentinel"});
  }
  if (!out.empty()) return out;
  try {
    (void)BuildTree(ann);
  } catch (const TreeError& e) {
    out.push_back({e.block(), e.detail()});
  } catch (const Error& e) {
    out.push_back({-1, e.what()});
  }
  return out;
}

std::vector<Violation> ValidateAnnotation(const Document& doc,
                                          const Annotation& ann) {
  return ValidateAnnotation(doc.size(), ann);
}

}  // namespace vsd

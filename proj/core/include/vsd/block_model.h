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

#ifndef VSD_BLOCK_MODEL_H_
#define VSD_BLOCK_MODEL_H_

// Data model for text blocks, documents and transition annotations, plus the
// block-JSON, plain-text and annotation-TSV interchange formats.
//
// A document is an ordered sequence of text blocks (one visual line each).
// The annotation assigns every block a transition label describing how it
// relates to the next retained block:
//
//   CONTINUOUS   next block continues the same paragraph
//   CONSECUTIVE  next block starts a sibling paragraph
//   DOWN         next block starts a child paragraph
//   UP           next block starts a paragraph higher up; `pointers[i]`
//                names the DOWN block whose level it rejoins
//   OMITTED      this block is debris (header, footer, page number)
//
// The last retained block carries a CONSECUTIVE sentinel so that annotation
// files stay rectangular.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vsd {

enum class DocType {
  kContractPdfEn,
  kLawPdfEn,
  kContractTxtEn,
  kContractPdfJa,
};

std::string_view DocTypeName(DocType type);
// Throws vsd::Error for unknown names.
DocType ParseDocType(std::string_view name);
bool IsTextType(DocType type);
bool IsJapanese(DocType type);

struct BBox {
  double x0 = 0;
  double y0 = 0;
  double x1 = 0;
  double y1 = 0;

  double Width() const { return x1 - x0; }
  double Height() const { return y1 - y0; }
  double Area() const { return Width() * Height(); }

  friend bool operator==(const BBox&, const BBox&) = default;
};

struct TextBlock {
  int index = 0;
  std::string text;
  int page = 1;
  BBox bbox;
  // Plain-text sources only; always 0 for PDF-derived blocks.
  int blank_lines_before = 0;

  friend bool operator==(const TextBlock&, const TextBlock&) = default;
};

struct Document {
  std::string doc_id;
  DocType doc_type = DocType::kContractPdfEn;
  std::vector<TextBlock> blocks;

  std::size_t size() const { return blocks.size(); }
  int NumPages() const;
};

enum class Label : std::uint8_t {
  kContinuous = 0,
  kConsecutive = 1,
  kDown = 2,
  kUp = 3,
  kOmitted = 4,
};
inline constexpr int kNumLabels = 5;

char LabelLetter(Label label);
std::string_view LabelName(Label label);
// Accepts the single-letter TSV codes c/s/d/u/o.
std::optional<Label> LabelFromLetter(char letter);
std::optional<Label> LabelFromName(std::string_view name);

struct Annotation {
  std::vector<Label> labels;
  std::vector<std::optional<int>> pointers;

  std::size_t size() const { return labels.size(); }
  friend bool operator==(const Annotation&, const Annotation&) = default;
};

// Index of the last block not labelled OMITTED, or -1.
int LastRetained(const std::vector<Label>& labels);

// Parses a block-JSON document. Blocks keep file order. Throws vsd::Error on
// malformed JSON, missing fields, degenerate boxes or an empty block list.
Document ParseBlockJson(std::string_view json);
Document ReadBlockJson(std::istream& in);
std::string WriteBlockJson(const Document& doc);

// One block per non-blank line. Tabs expand to 8-column stops. Geometry is
// synthetic: x0 is the indentation column, x1 one past the last non-space
// column, y0 = -(0-based line number), y1 = y0 + 1.
Document IngestPlainText(std::string_view text, std::string doc_id,
                         DocType doc_type);
// Inverse of IngestPlainText for documents it produced.
std::string RenderPlainText(const Document& doc);

// Strict reader: rejects wrong row counts and pointer/label inconsistencies.
Annotation ReadAnnotation(std::istream& in, std::size_t num_blocks);
Annotation ParseAnnotation(std::string_view tsv, std::size_t num_blocks);
// Syntax-only reader; label/pointer consistency is left to
// ValidateAnnotation. Throws on unparseable rows.
Annotation ParseAnnotationLenient(std::string_view tsv);
std::string WriteAnnotation(const Annotation& ann);

struct Violation {
  int block = -1;  // -1 for document-level problems
  std::string message;
};

// Empty iff every annotation invariant holds and BuildTree succeeds.
std::vector<Violation> ValidateAnnotation(const Document& doc,
                                          const Annotation& ann);
std::vector<Violation> ValidateAnnotation(std::size_t num_blocks,
                                          const Annotation& ann);

}  // namespace vsd

#endif  // VSD_BLOCK_MODEL_H_

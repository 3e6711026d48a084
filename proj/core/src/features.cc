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

#include <algorithm>
#include <ostream>
#include <sstream>

#include "vsd/error.h"

namespace vsd {

namespace {

using Slots = std::vector<std::vector<int>>;

const Slots kPairs = {{1, 2}, {2, 3}};
const std::vector<std::string> kIndentLevels = {"same", "deeper", "shallower"};
const std::vector<std::string> kStepLevels = {"continuous", "consecutive",
                                              "up", "down", "other"};
constexpr std::array<int, 3> kPresenceSlots = {1, 3, 4};

std::vector<FeatureDescriptor> MakeDescriptors() {
  using F = FeatureId;
  using K = ValueKind;
  return {
      {F::kV1, "V1", "indentation relation", K::kCategorical, kPairs,
       kIndentLevels},
      {F::kV2, "V2", "indentation after erasing numbering", K::kCategorical,
       kPairs, kIndentLevels},
      {F::kV3, "V3", "centered", K::kBoolean, {{2}, {3}}},
      {F::kV4, "V4", "line break before right margin", K::kBoolean,
       {{1}, {2}}},
      {F::kV5, "V5", "page change", K::kBoolean, kPairs, {}, true},
      {F::kV6, "V6", "within top 15% of a page", K::kBoolean, {{2}}},
      {F::kV7, "V7", "within bottom 15% of a page", K::kBoolean, {{2}}},
      {F::kV8, "V8", "larger line spacing", K::kBoolean, kPairs, {}, true},
      {F::kV9, "V9", "justified with spaces in middle", K::kBoolean,
       {{2}, {3}}},
      {F::kV10, "V10", "similar text in a similar position", K::kBoolean,
       {{2}}},
      {F::kV11, "V11", "emphasis by spaces between characters", K::kBoolean,
       {{1}, {2}}},
      {F::kV12, "V12", "emphasis by parentheses", K::kBoolean, {{1}, {2}}},
      {F::kT1, "T1", "numbering transition", K::kCategorical, {{2}},
       kStepLevels},
      {F::kT2, "T2", "punctuated", K::kBoolean, {{1}, {2}}},
      {F::kT3, "T3", "list start", K::kBoolean, {{1}, {2}}},
      {F::kT4, "T4", "list elements", K::kBoolean, {{2}}},
      {F::kT5, "T5", "page number (strict)", K::kBoolean, {{1}, {2}, {3}}},
      {F::kT6, "T6", "page number (tolerant)", K::kBoolean, {{1}, {2}, {3}}},
      {F::kT7, "T7", "starts with whereas", K::kBoolean, {{3}}},
      {F::kT8, "T8", "starts with now, therefore", K::kBoolean, {{3}}},
      {F::kT9, "T9", "dictionary-like", K::kBoolean, {{2}, {3}}},
      {F::kT10, "T10", "all capital", K::kBoolean, {{2}, {3}}},
      {F::kT11, "T11", "contiguous blank field", K::kBoolean, kPairs},
      {F::kT12, "T12", "horizontal line", K::kBoolean, {{1}, {2}, {3}}},
      {F::kS1, "S1", "language model coherence", K::kNumeric, {{1, 2, 3}}},
  };
}

std::string SlotName(const std::vector<int>& slots) {
  std::string out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i > 0) out += '-';
    out += std::to_string(slots[i]);
  }
  return out;
}

int PrevRetained(const std::vector<Label>& labels, int k) {
  for (--k; k >= 0; --k) {
    if (labels[k] != Label::kOmitted) return k;
  }
  return -1;
}

int NextRetained(const std::vector<Label>& labels, int k) {
  for (++k; k < static_cast<int>(labels.size()); ++k) {
    if (labels[k] != Label::kOmitted) return k;
  }
  return -1;
}

bool NumberingContinues(const std::vector<Numbering>& from,
                        const std::vector<Numbering>& to) {
  for (const auto& a : from) {
    for (const auto& b : to) {
      if (a.IsFollowedBy(b)) return true;
    }
  }
  return false;
}

int IndentLevel(Indentation relation) { return static_cast<int>(relation); }

// Appends the values of one feature for one row, in generation order.
class RowWriter {
 public:
  RowWriter(const DocumentAnalysis& a, const TransitionContext& ctx,
            const std::optional<NumberingStep>& step, const Scorer* scorer,
            std::vector<double>& out)
      : a_(a), ctx_(ctx), step_(step), scorer_(scorer), out_(out) {}

  void Write(const FeatureDescriptor& d) {
    for (const auto& group : d.slots) {
      std::vector<int> blocks;
      bool missing = false;
      for (int s : group) {
        blocks.push_back(ctx_.slot(s));
        missing |= blocks.back() < 0;
      }
      switch (d.kind) {
        case ValueKind::kBoolean:
          out_.push_back(missing ? (d.null_default ? 1.0 : 0.0)
                                 : (Boolean(d.id, blocks) ? 1.0 : 0.0));
          break;
        case ValueKind::kCategorical: {
          const int level = missing ? -1 : Categorical(d.id, blocks);
          for (std::size_t l = 0; l < d.levels.size(); ++l) {
            out_.push_back(static_cast<int>(l) == level ? 1.0 : 0.0);
          }
          out_.push_back(level < 0 ? 1.0 : 0.0);
          break;
        }
        case ValueKind::kNumeric: {
          std::optional<std::pair<double, double>> f;
          if (!missing && scorer_ != nullptr) {
            const auto& b = a_.doc->blocks;
            f = CoherenceFeatures(&b[blocks[0]].text, &b[blocks[1]].text,
                                  &b[blocks[2]].text, *scorer_);
          }
          out_.push_back(f ? f->first : 0.0);
          out_.push_back(f ? f->second : 0.0);
          out_.push_back(f ? 0.0 : 1.0);
          break;
        }
      }
    }
  }

 private:
  const TextBlock& B(int i) const { return a_.doc->blocks[i]; }

  bool Boolean(FeatureId id, const std::vector<int>& b) const {
    const auto& f = a_.frame;
    const auto& c = a_.cues;
    switch (id) {
      case FeatureId::kV3:
        return Centered(B(b[0]), f);
      case FeatureId::kV4:
        return BreaksBeforeMargin(B(b[0]), f);
      case FeatureId::kV5:
        return B(b[0]).page != B(b[1]).page;
      case FeatureId::kV6:
        return InHeader(B(b[0]), f);
      case FeatureId::kV7:
        return InFooter(B(b[0]), f);
      case FeatureId::kV8:
        return LargerSpacing(B(b[0]), B(b[1]), f);
      case FeatureId::kV9:
        return JustifiedWithSpaces(B(b[0]).text);
      case FeatureId::kV10:
        return a_.similar_position[b[0]];
      case FeatureId::kV11:
        return EmphasisBySpaces(B(b[0]).text);
      case FeatureId::kV12:
        return EmphasisByParentheses(B(b[0]).text);
      case FeatureId::kT2:
        return c[b[0]].punctuated;
      case FeatureId::kT3:
        return c[b[0]].list_start;
      case FeatureId::kT4:
        return c[b[0]].list_element;
      case FeatureId::kT5:
        return c[b[0]].page_number_strict;
      case FeatureId::kT6:
        return c[b[0]].page_number_tolerant;
      case FeatureId::kT7:
        return c[b[0]].starts_whereas;
      case FeatureId::kT8:
        return c[b[0]].starts_now_therefore;
      case FeatureId::kT9:
        return c[b[0]].has_colon && !BreaksBeforeMargin(B(b[0]), f);
      case FeatureId::kT10:
        return c[b[0]].all_capital;
      case FeatureId::kT11:
        return c[b[0]].blank_field && c[b[1]].blank_field;
      case FeatureId::kT12:
        return c[b[0]].horizontal_line;
      default:
        throw Error("feature is not boolean");
    }
  }

  int Categorical(FeatureId id, const std::vector<int>& b) const {
    switch (id) {
      case FeatureId::kV1:
        return IndentLevel(IndentationRelation(B(b[0]), B(b[1]), a_.frame));
      case FeatureId::kV2:
        return IndentLevel(
            IndentationAfterNumbering(B(b[0]), B(b[1]), a_.frame));
      case FeatureId::kT1:
        return step_ ? static_cast<int>(*step_) : -1;
      default:
        throw Error("feature is not categorical");
    }
  }

  const DocumentAnalysis& a_;
  const TransitionContext& ctx_;
  const std::optional<NumberingStep>& step_;
  const Scorer* scorer_;
  std::vector<double>& out_;
};

}  // namespace

const std::vector<FeatureDescriptor>& AllFeatures() {
  static const std::vector<FeatureDescriptor> kAll = MakeDescriptors();
  return kAll;
}

const FeatureDescriptor& DescriptorByName(std::string_view name) {
  for (const auto& d : AllFeatures()) {
    if (d.name == name) return d;
  }
  throw Error("unknown feature: " + std::string(name));
}

bool FeatureEnabled(FeatureId id, DocType type) {
  using F = FeatureId;
  switch (type) {
    case DocType::kContractPdfEn:
    case DocType::kLawPdfEn:
      return id != F::kV2 && id != F::kV11 && id != F::kV12 && id != F::kT12;
    case DocType::kContractTxtEn:
      switch (id) {
        case F::kV5:
        case F::kV6:
        case F::kV7:
        case F::kV10:
        case F::kV11:
        case F::kV12:
          return false;
        default:
          return true;
      }
    case DocType::kContractPdfJa:
      switch (id) {
        case F::kV2:
        case F::kT4:
        case F::kT7:
        case F::kT8:
        case F::kT9:
        case F::kT10:
        case F::kT12:
          return false;
        default:
          return true;
      }
  }
  return false;
}

FeatureRegistry FeatureRegistry::ForDocType(
    DocType type, const std::vector<std::string>& disabled) {
  for (const auto& name : disabled) DescriptorByName(name);
  FeatureRegistry r;
  r.doc_type_ = type;
  std::vector<std::string> generated;
  for (const auto& d : AllFeatures()) {
    if (!FeatureEnabled(d.id, type)) continue;
    if (std::find(disabled.begin(), disabled.end(), d.name) != disabled.end()) {
      continue;
    }
    r.features_.push_back(d);
    for (const auto& group : d.slots) {
      const std::string base = d.name + "." + SlotName(group);
      switch (d.kind) {
        case ValueKind::kBoolean:
          generated.push_back(base);
          break;
        case ValueKind::kCategorical:
          for (const auto& level : d.levels) {
            generated.push_back(base + "." + level);
          }
          generated.push_back(base + ".absent");
          break;
        case ValueKind::kNumeric:
          generated.push_back(base + ".f1");
          generated.push_back(base + ".f2");
          generated.push_back(base + ".absent");
          break;
      }
    }
  }
  for (int s : kPresenceSlots) {
    generated.push_back("present." + std::to_string(s));
  }

  std::vector<int> order(generated.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return generated[x] < generated[y]; });
  r.sorted_position_.resize(generated.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    r.columns_.push_back(generated[order[pos]]);
    r.sorted_position_[order[pos]] = static_cast<int>(pos);
  }
  return r;
}

bool FeatureRegistry::Has(FeatureId id) const {
  return std::any_of(features_.begin(), features_.end(),
                     [id](const auto& d) { return d.id == id; });
}

std::uint64_t FeatureRegistry::Fingerprint() const {
  std::string data;
  for (const auto& c : columns_) data += c + "\n";
  return Fnv1a(data);
}

DocumentAnalysis AnalyzeDocument(const Document& doc) {
  DocumentAnalysis a;
  a.doc = &doc;
  a.language = IsJapanese(doc.doc_type) ? Language::kJapanese
                                        : Language::kEnglish;
  a.frame = ComputePageFrame(doc);
  for (const auto& b : doc.blocks) {
    a.cues.push_back(ComputeTextualCues(b.text));
    a.numbering.push_back(DetectNumbering(b.text, a.language));
  }
  if (IsTextType(doc.doc_type)) {
    a.similar_position.assign(doc.blocks.size(), false);
  } else {
    a.similar_position = SimilarPositionFlags(doc);
  }
  return a;
}

std::vector<TransitionContext> BuildContexts(
    std::size_t num_blocks, const std::vector<bool>& omitted_mask) {
  if (omitted_mask.size() != num_blocks) {
    throw Error("omitted mask length differs from block count");
  }
  const int n = static_cast<int>(num_blocks);
  auto masked = [&](int k) { return omitted_mask[k]; };
  std::vector<TransitionContext> out(num_blocks);
  for (int i = 0; i < n; ++i) {
    auto& s = out[i].slots;
    s[1] = i;
    if (masked(i)) {
      s[0] = i - 1;
      s[2] = i + 1 < n ? i + 1 : -1;
      s[3] = i + 2 < n ? i + 2 : -1;
      continue;
    }
    for (int k = i - 1; k >= 0; --k) {
      if (!masked(k)) {
        s[0] = k;
        break;
      }
    }
    int found = 0;
    for (int k = i + 1; k < n && found < 2; ++k) {
      if (!masked(k)) s[2 + found++] = k;
    }
  }
  return out;
}

std::vector<std::optional<NumberingStep>> NumberingSteps(
    const DocumentAnalysis& analysis, const std::vector<bool>& omitted_mask) {
  const std::size_t n = analysis.numbering.size();
  std::vector<std::optional<NumberingStep>> contiguous(n);
  std::vector<std::optional<NumberingStep>> retained(n);

  NumberingMemory memory;
  for (std::size_t k = 0; k < n; ++k) {
    const auto r = memory.Step(analysis.numbering[k], static_cast<int>(k));
    if (k > 0) contiguous[k - 1] = r.step;
  }
  NumberingMemory masked_memory;
  int previous = -1;
  for (std::size_t k = 0; k < n; ++k) {
    if (omitted_mask[k]) continue;
    const auto r =
        masked_memory.Step(analysis.numbering[k], static_cast<int>(k));
    if (previous >= 0) retained[previous] = r.step;
    previous = static_cast<int>(k);
  }

  std::vector<std::optional<NumberingStep>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = omitted_mask[k] ? contiguous[k] : retained[k];
  }
  return out;
}

FeatureMatrix TransitionFeatureMatrix(const DocumentAnalysis& analysis,
                                      const std::vector<bool>& omitted_mask,
                                      const FeatureRegistry& registry,
                                      const Scorer* scorer) {
  if (registry.doc_type() != analysis.doc->doc_type) {
    throw Error("registry for " + std::string(DocTypeName(registry.doc_type())) +
                " applied to a " +
                std::string(DocTypeName(analysis.doc->doc_type)) +
                " document");
  }
  const std::size_t n = analysis.doc->blocks.size();
  const auto contexts = BuildContexts(n, omitted_mask);
  const auto steps = NumberingSteps(analysis, omitted_mask);
  const auto& position = registry.sorted_position();

  FeatureMatrix m;
  m.columns = registry.columns();
  m.rows.reserve(n);
  std::vector<double> generated;
  for (std::size_t i = 0; i < n; ++i) {
    generated.clear();
    RowWriter writer(analysis, contexts[i], steps[i], scorer, generated);
    for (const auto& d : registry.features()) writer.Write(d);
    for (int s : kPresenceSlots) {
      generated.push_back(contexts[i].slot(s) >= 0 ? 1.0 : 0.0);
    }
    FeatureRow row(generated.size());
    for (std::size_t g = 0; g < generated.size(); ++g) {
      row[position[g]] = generated[g];
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::vector<int> PointerCandidates(const std::vector<Label>& labels, int i) {
  std::vector<int> out;
  for (int j = 0; j < i; ++j) {
    if (labels[j] == Label::kDown) out.push_back(j);
  }
  return out;
}

int ParagraphHead(const std::vector<Label>& labels, int block) {
  int head = block;
  for (int p = PrevRetained(labels, head);
       p >= 0 && labels[p] == Label::kContinuous;
       p = PrevRetained(labels, head)) {
    head = p;
  }
  return head;
}

const std::vector<std::string>& PointerColumns() {
  static const std::vector<std::string> kColumns = {
      "count.diff",
      "count.down",
      "count.up",
      "indent.head-tb3.absent",
      "indent.head-tb3.deeper",
      "indent.head-tb3.same",
      "indent.head-tb3.shallower",
      "indent.tb1-tb2.deeper",
      "indent.tb1-tb2.same",
      "indent.tb1-tb2.shallower",
      "left_aligned.head",
      "left_aligned.tb1",
      "left_aligned.tb3",
      "numbering.head",
      "numbering.tb1",
      "tb3.absent",
  };
  return kColumns;
}

std::uint64_t PointerFingerprint() {
  std::string data = "pointer";
  for (const auto& c : PointerColumns()) data += "\n" + c;
  return Fnv1a(data);
}

FeatureRow PointerFeatureRow(const DocumentAnalysis& analysis,
                             const std::vector<Label>& labels, int up_block,
                             int candidate) {
  const auto& blocks = analysis.doc->blocks;
  const auto& frame = analysis.frame;
  const int head = ParagraphHead(labels, candidate);
  const int tb3 = NextRetained(labels, up_block);

  int downs = 0;
  int ups = 0;
  for (int k = candidate + 1; k < up_block; ++k) {
    downs += labels[k] == Label::kDown;
    ups += labels[k] == Label::kUp;
  }
  const Indentation tb1_tb2 =
      IndentationRelation(blocks[candidate], blocks[up_block], frame);

  FeatureRow row(PointerColumns().size(), 0.0);
  row[0] = downs - ups;
  row[1] = downs;
  row[2] = ups;
  if (tb3 >= 0) {
    switch (IndentationRelation(blocks[head], blocks[tb3], frame)) {
      case Indentation::kDeeper:
        row[4] = 1;
        break;
      case Indentation::kSame:
        row[5] = 1;
        break;
      case Indentation::kShallower:
        row[6] = 1;
        break;
    }
    row[12] = LeftAligned(blocks[tb3], frame);
    row[13] = NumberingContinues(analysis.numbering[head],
                                 analysis.numbering[tb3]);
    row[14] = NumberingContinues(analysis.numbering[candidate],
                                 analysis.numbering[tb3]);
  } else {
    row[3] = 1;
    row[15] = 1;
  }
  row[7 + (tb1_tb2 == Indentation::kDeeper     ? 0
           : tb1_tb2 == Indentation::kSame ? 1
                                               : 2)] = 1;
  row[10] = LeftAligned(blocks[head], frame);
  row[11] = LeftAligned(blocks[candidate], frame);
  return row;
}

PointerRows PointerFeatureRows(const DocumentAnalysis& analysis,
                               const std::vector<Label>& labels) {
  PointerRows out;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[i] != Label::kUp) continue;
    for (int j : PointerCandidates(labels, i)) {
      out.pairs.push_back({i, j});
      out.rows.push_back(PointerFeatureRow(analysis, labels, i, j));
    }
  }
  return out;
}

void WriteFeatureCsv(std::ostream& out, const std::vector<std::string>& columns,
                     const std::vector<FeatureRow>& rows,
                     const std::vector<std::string>& row_ids) {
  out << "row";
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << (r < row_ids.size() ? row_ids[r] : std::to_string(r));
    for (double v : rows[r]) {
      std::ostringstream cell;
      cell.precision(17);
      cell << v;
      out << ',' << cell.str();
    }
    out << '\n';
  }
}

std::uint64_t Fnv1a(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace vsd

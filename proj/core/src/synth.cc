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

#include "vsd/synth.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "vsd/error.h"
#include "vsd/utf8.h"

namespace vsd {

namespace {

// PDF page geometry in points.
constexpr double kLeftMargin = 72;
constexpr double kRightMargin = 540;
constexpr double kContentTop = 650;
constexpr double kLineHeight = 10;
constexpr double kLinePitch = 14;
constexpr double kParagraphExtraGap = 10;
constexpr double kFooterY = 40;
constexpr double kHeaderY = 760;
constexpr double kPageCenter = 306;
constexpr double kCharWidth = 6;
constexpr double kWideCharWidth = 10.5;

constexpr int kTextWidth = 72;
constexpr int kLinesPerPageWithoutDebris = 40;
constexpr double kFooterShare = 0.7;

constexpr std::string_view kWords[] = {
    "agreement", "party",    "parties",  "shall",   "the",     "of",
    "to",        "and",      "any",      "such",    "herein",  "notice",
    "term",      "period",   "written",  "consent", "other",   "may",
    "not",       "be",       "by",       "in",      "for",     "with",
    "under",     "section",  "rights",   "duties",  "license", "services",
    "fees",      "payment",  "invoice",  "days",    "after",   "prior",
    "each",      "its",      "provided", "that",    "all",     "costs",
    "breach",    "remedy",   "law",      "court",   "state",   "company",
    "customer",  "supplier", "data",     "records", "time",    "effect",
    "without",   "limiting", "material", "terms",   "hereof",  "thereof",
};

constexpr std::string_view kJaWords[] = {
    "本契約", "甲",   "乙",     "は",     "に",     "基づき", "秘密情報",
    "を",     "開示", "する",   "ものとする", "第三者", "当事者", "義務",
    "期間",   "締結", "日",     "以内",   "書面",   "通知",   "及び",
    "又は",   "前項", "規定",   "により", "損害",   "賠償",   "責任",
};

constexpr std::string_view kRunningTitles[] = {
    "CONFIDENTIAL", "Master Services Agreement", "Non-Disclosure Agreement",
    "Execution Version"};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  int Uniform(int lo, int hi) {
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double Real() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  bool Bernoulli(double p) { return Real() < p; }
  template <typename T, std::size_t N>
  const T& Pick(const T (&items)[N]) {
    return items[gen_() % N];
  }

 private:
  std::mt19937_64 gen_;
};

std::string Roman(int v, bool upper) {
  static constexpr std::pair<int, std::string_view> kTable[] = {
      {1000, "m"}, {900, "cm"}, {500, "d"}, {400, "cd"}, {100, "c"},
      {90, "xc"},  {50, "l"},   {40, "xl"}, {10, "x"},   {9, "ix"},
      {5, "v"},    {4, "iv"},   {1, "i"}};
  std::string out;
  for (const auto& [n, s] : kTable) {
    for (; v >= n; v -= n) out += s;
  }
  if (upper) {
    for (char& c : out) c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

std::string Letter(int v, bool upper) {
  return std::string(1, static_cast<char>((upper ? 'A' : 'a') + (v - 1) % 26));
}

std::string FullwidthDigits(int v) {
  std::string out;
  for (char c : std::to_string(v)) {
    utf8::Append(out, static_cast<char32_t>(0xFF10 + (c - '0')));
  }
  return out;
}

std::string NumberingFor(int depth, int value, bool japanese) {
  if (japanese) {
    switch (depth) {
      case 0:
        return "第" + std::to_string(value) + "条";
      case 1:
        return "（" + FullwidthDigits(value) + "）";
      case 2: {
        std::string out;
        utf8::Append(out, static_cast<char32_t>(0x2460 + (value - 1) % 20));
        return out;
      }
      default: {
        static constexpr std::u32string_view kKana =
            U"アイウエオカキクケコサシスセソタチツテト";
        std::string out;
        utf8::Append(out, kKana[(value - 1) % kKana.size()]);
        return out + "．";
      }
    }
  }
  switch (depth) {
    case 0:
      return std::to_string(value) + ".";
    case 1:
      return "(" + Letter(value, false) + ")";
    case 2:
      return "(" + Roman(value, false) + ")";
    case 3:
      return "(" + Letter(value, true) + ")";
    default:
      return std::to_string(value) + ")";
  }
}

struct Paragraph {
  int depth = 0;
  int parent = -1;  // index into the paragraph list
  std::vector<std::string> lines;
  std::vector<int> blocks;
};

// Fills one line with words until `target` characters; the line never
// exceeds `width`.
std::string FillLine(Rng& rng, std::string line, std::size_t target,
                     std::size_t width, bool japanese) {
  while (true) {
    const std::string_view w = japanese ? rng.Pick(kJaWords) : rng.Pick(kWords);
    const std::size_t sep = (line.empty() || japanese) ? 0 : 1;
    const std::size_t len = utf8::Length(line) + sep + utf8::Length(w);
    if (len > width) break;
    if (sep) line += ' ';
    line += w;
    if (len >= target) break;
  }
  return line;
}

std::vector<std::string> ParagraphLines(Rng& rng, const SynthSpec& spec,
                                        const std::string& prefix,
                                        std::size_t width, char terminal,
                                        bool japanese) {
  const int n = rng.Uniform(spec.min_lines_per_paragraph,
                            spec.max_lines_per_paragraph);
  std::vector<std::string> lines;
  for (int k = 0; k < n; ++k) {
    const bool last = k + 1 == n;
    std::string start = k == 0 ? prefix : std::string();
    if (!start.empty() && !japanese) start += ' ';
    const std::size_t target =
        last ? static_cast<std::size_t>((0.25 + 0.45 * rng.Real()) * width)
             : width;
    std::string line = FillLine(rng, start, target, width - 1, japanese);
    if (last) {
      if (japanese) {
        line += terminal == ':' ? "：" : "。";
      } else {
        line += terminal;
      }
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<Paragraph> SampleParagraphs(Rng& rng, const SynthSpec& spec) {
  const int count = rng.Uniform(spec.min_paragraphs, spec.max_paragraphs);
  std::vector<Paragraph> paragraphs(count);
  std::vector<int> open;  // open[d] = latest paragraph at depth d
  for (int p = 0; p < count; ++p) {
    int depth = 0;
    if (p > 0) {
      const int d = paragraphs[p - 1].depth;
      const double r = rng.Real();
      if (r < 0.3 && d + 1 < spec.depth_limit) {
        depth = d + 1;
      } else if (r < 0.55 && d > 0) {
        depth = rng.Uniform(0, d - 1);
      } else {
        depth = d;
      }
    }
    open.resize(depth);
    paragraphs[p].depth = depth;
    paragraphs[p].parent = depth > 0 ? open[depth - 1] : -1;
    open.push_back(p);
  }
  return paragraphs;
}

ParagraphNode Materialize(const std::vector<Paragraph>& paragraphs,
                          const std::vector<std::vector<int>>& children,
                          int p) {
  ParagraphNode node;
  node.blocks = paragraphs[p].blocks;
  for (int c : children[p]) {
    node.children.push_back(Materialize(paragraphs, children, c));
  }
  return node;
}

class Renderer {
 public:
  Renderer(const SynthSpec& spec, SynthStyle style, Rng& rng, Document& doc)
      : spec_(spec), style_(style), rng_(rng), doc_(doc) {
    text_ = IsTextType(doc.doc_type);
    japanese_ = IsJapanese(doc.doc_type);
    step_ = spec.indent_step > 0 ? spec.indent_step : (text_ ? 4.0 : 18.0);
    char_width_ = text_ ? 1.0 : (japanese_ ? kWideCharWidth : kCharWidth);
    if (spec.debris_rate > 0) {
      per_page_ = std::max(
          1, static_cast<int>(std::lround(1.0 / spec.debris_rate)) - 1);
      with_debris_ = true;
    } else {
      per_page_ = kLinesPerPageWithoutDebris;
    }
  }

  std::size_t WidthFor(int depth) const {
    const double right = text_ ? kTextWidth : kRightMargin;
    const double left = Left(depth);
    return static_cast<std::size_t>((right - left) / char_width_);
  }

  void Render(std::vector<Paragraph>& paragraphs) {
    std::size_t total_lines = 0;
    for (const auto& p : paragraphs) total_lines += p.lines.size();
    pages_ = static_cast<int>((total_lines + per_page_ - 1) / per_page_);

    for (std::size_t p = 0; p < paragraphs.size(); ++p) {
      for (std::size_t k = 0; k < paragraphs[p].lines.size(); ++k) {
        if (on_page_ == per_page_ || page_ == 0) NewPage();
        const bool starts = k == 0 && p > 0;
        const bool last = k + 1 == paragraphs[p].lines.size();
        paragraphs[p].blocks.push_back(
            EmitLine(paragraphs[p].lines[k], paragraphs[p].depth, starts,
                     last));
      }
    }
    FinishPage();
  }

  std::vector<int> debris;

 private:
  double Left(int depth) const {
    return (text_ ? 0.0 : kLeftMargin) + depth * step_;
  }

  void NewPage() {
    FinishPage();
    ++page_;
    on_page_ = 0;
    cursor_ = kContentTop;
    footer_ = with_debris_ && rng_.Bernoulli(kFooterShare);
    if (with_debris_ && !footer_) EmitHeader();
  }

  void FinishPage() {
    if (page_ > 0 && footer_) EmitFooter();
    footer_ = false;
  }

  int Push(std::string text, BBox box, int blank_before) {
    TextBlock b;
    b.index = static_cast<int>(doc_.blocks.size());
    b.text = std::move(text);
    b.page = text_ ? 1 : page_;
    b.bbox = box;
    b.blank_lines_before = text_ && !doc_.blocks.empty() ? blank_before : 0;
    doc_.blocks.push_back(std::move(b));
    return doc_.blocks.back().index;
  }

  // Plain-text line at the given column; `blank` blank lines precede it.
  BBox TextBox(double x0, std::size_t len, int blank) {
    if (!doc_.blocks.empty()) line_no_ += blank;
    const double y0 = -static_cast<double>(line_no_);
    ++line_no_;
    return {x0, y0, x0 + static_cast<double>(len), y0 + 1};
  }

  int EmitLine(const std::string& text, int depth, bool starts_paragraph,
               bool last_line) {
    ++on_page_;
    const std::size_t len = utf8::Length(text);
    const double x0 = Left(depth);
    const bool gap = starts_paragraph && style_ == SynthStyle::kSpaced;
    if (text_) {
      const int blank = gap || pending_blank_ ? 1 : 0;
      pending_blank_ = false;
      return Push(text, TextBox(x0, len, blank), blank);
    }
    if (gap && on_page_ > 1) cursor_ -= kParagraphExtraGap;
    const double x1 =
        last_line ? x0 + static_cast<double>(len) * char_width_ : kRightMargin;
    const BBox box{x0, cursor_ - kLineHeight, std::min(x1, kRightMargin),
                   cursor_};
    cursor_ -= kLinePitch;
    return Push(text, box, 0);
  }

  void EmitFooter() {
    std::string text;
    if (japanese_) {
      text = rng_.Bernoulli(0.5) ? "- " + std::to_string(page_) + " -"
                                 : std::to_string(page_);
    } else {
      switch (rng_.Uniform(0, 3)) {
        case 0:
          text = "Page " + std::to_string(page_) + " of " +
                 std::to_string(pages_);
          break;
        case 1:
          text = std::to_string(page_);
          break;
        case 2:
          text = "- " + std::to_string(page_) + " -";
          break;
        default:
          text = "Page " + std::to_string(page_);
          break;
      }
    }
    EmitDebris(text, kFooterY, /*centered=*/true);
  }

  void EmitHeader() {
    const std::string text =
        japanese_ ? std::string("秘密保持契約書")
                  : std::string(rng_.Pick(kRunningTitles));
    EmitDebris(text, kHeaderY, rng_.Bernoulli(0.5));
  }

  void EmitDebris(const std::string& text, double y, bool centered) {
    const double len = static_cast<double>(utf8::Length(text));
    int index;
    if (text_) {
      const double x0 = std::floor((kTextWidth - len) / 2);
      index = Push(text, TextBox(x0, static_cast<std::size_t>(len), 1), 1);
      pending_blank_ = true;
    } else {
      const double w = len * char_width_;
      const double x0 = centered ? kPageCenter - w / 2 : kRightMargin - w;
      index = Push(text, {x0, y, x0 + w, y + kLineHeight}, 0);
    }
    debris.push_back(index);
  }

  const SynthSpec& spec_;
  SynthStyle style_;
  Rng& rng_;
  Document& doc_;
  bool text_ = false;
  bool japanese_ = false;
  double step_ = 0;
  double char_width_ = kCharWidth;
  int per_page_ = kLinesPerPageWithoutDebris;
  bool with_debris_ = false;
  int pages_ = 0;
  int page_ = 0;
  int on_page_ = 0;
  bool footer_ = false;
  double cursor_ = kContentTop;
  long line_no_ = 0;
  bool pending_blank_ = false;
};

}  // namespace

void ValidateSynthSpec(const SynthSpec& spec) {
  if (spec.documents < 0) throw Error("synth: negative document count");
  if (spec.depth_limit < 1) throw Error("synth: depth limit must be >= 1");
  if (spec.styles.empty()) throw Error("synth: no rendering style");
  if (!(spec.debris_rate >= 0 && spec.debris_rate <= 0.5)) {
    throw Error("synth: debris rate must lie in [0, 0.5]");
  }
  if (spec.indent_step < 0) throw Error("synth: negative indentation step");
  if (spec.min_paragraphs < 1 || spec.max_paragraphs < spec.min_paragraphs) {
    throw Error("synth: bad paragraph count range");
  }
  if (spec.min_lines_per_paragraph < 1 ||
      spec.max_lines_per_paragraph < spec.min_lines_per_paragraph) {
    throw Error("synth: bad lines-per-paragraph range");
  }
}

std::vector<SynthDocument> Synthesize(const SynthSpec& spec,
                                      std::uint64_t seed) {
  ValidateSynthSpec(spec);
  std::vector<SynthDocument> out;
  const bool japanese = IsJapanese(spec.doc_type);
  for (int d = 0; d < spec.documents; ++d) {
    Rng rng(seed * 1000003ULL + static_cast<std::uint64_t>(d));
    const SynthStyle style = spec.styles[d % spec.styles.size()];
    SynthDocument sd;
    Document& doc = sd.labeled.doc;
    doc.doc_id = "synth-" + std::to_string(d);
    doc.doc_type = spec.doc_type;

    auto paragraphs = SampleParagraphs(rng, spec);
    Renderer renderer(spec, style, rng, doc);
    std::vector<int> counters(spec.depth_limit + 1, 0);
    for (std::size_t p = 0; p < paragraphs.size(); ++p) {
      const int depth = paragraphs[p].depth;
      ++counters[depth];
      std::fill(counters.begin() + depth + 1, counters.end(), 0);
      const bool has_children = p + 1 < paragraphs.size() &&
                                paragraphs[p + 1].depth > depth;
      char terminal = '.';
      if (has_children) {
        terminal = ':';
      } else if (depth > 0 && rng.Bernoulli(0.5)) {
        terminal = ';';
      }
      const std::string prefix =
          style == SynthStyle::kNumbered
              ? NumberingFor(depth, counters[depth], japanese)
              : std::string();
      paragraphs[p].lines = ParagraphLines(rng, spec, prefix,
                                           renderer.WidthFor(depth), terminal,
                                           japanese);
    }
    renderer.Render(paragraphs);

    std::vector<std::vector<int>> children(paragraphs.size());
    DocumentTree& tree = sd.tree;
    tree.num_blocks = static_cast<int>(doc.blocks.size());
    for (std::size_t p = 0; p < paragraphs.size(); ++p) {
      if (paragraphs[p].parent >= 0) {
        children[paragraphs[p].parent].push_back(static_cast<int>(p));
      }
    }
    for (std::size_t p = 0; p < paragraphs.size(); ++p) {
      if (paragraphs[p].parent < 0) {
        tree.top_level.push_back(
            Materialize(paragraphs, children, static_cast<int>(p)));
      }
    }
    tree.debris = renderer.debris;
    sd.labeled.gold = TreeToAnnotation(tree);
    out.push_back(std::move(sd));
  }
  return out;
}

}  // namespace vsd

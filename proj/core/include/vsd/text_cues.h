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

#ifndef VSD_TEXT_CUES_H_
#define VSD_TEXT_CUES_H_

// Textual cues: numbering detection, the numbering-transition automaton, the
// regular-expression style block predicates and an edit distance.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vsd {

enum class Language { kEnglish, kJapanese };

enum class NumberingKind : std::uint8_t {
  kArabicDot,         // 1.
  kArabicParen,       // (1)
  kArabicRParen,      // 1)
  kRomanUpperDot,     // IV.
  kRomanUpperParen,   // (IV)
  kRomanUpperRParen,  // IV)
  kRomanLowerDot,     // iv.
  kRomanLowerParen,   // (iv)
  kRomanLowerRParen,  // iv)
  kAlphaUpperDot,     // A.
  kAlphaUpperParen,   // (A)
  kAlphaUpperRParen,  // A)
  kAlphaLowerDot,     // a.
  kAlphaLowerParen,   // (a)
  kAlphaLowerRParen,  // a)
  kMultilevel2,       // 1.2
  kMultilevel3,       // 1.2.3
  kMultilevel4,       // 1.2.3.4
  kJaArticle,         // 第1条
  kJaClause,          // 第1項
  kJaParen,           // （1）
  kJaCircled,         // ①
  kJaKatakana,        // ア．
};

std::string_view NumberingKindName(NumberingKind kind);

struct Numbering {
  NumberingKind kind;
  std::vector<int> value;  // one component except for multilevel kinds
  int length = 0;          // code points consumed, including leading spaces

  bool IsInitial() const { return !value.empty() && value.back() == 1; }
  // True when `next` continues this numbering (same kind, value + 1).
  bool IsFollowedBy(const Numbering& next) const;

  friend bool operator==(const Numbering&, const Numbering&) = default;
};

// Candidate readings of the numbering prefix at the head of `text` (after at
// most 8 leading spaces). Only the longest matches are kept; ambiguous
// roman/alphabetic letters yield both readings, roman first. Fullwidth
// digits and punctuation are narrowed before matching.
std::vector<Numbering> DetectNumbering(std::string_view text,
                                       Language language = Language::kEnglish);

// Length in code points of the numbering prefix plus the whitespace after
// it, or 0 when there is none.
int NumberingPrefixLength(std::string_view text, Language language);

enum class NumberingStep : std::uint8_t {
  kContinuous = 0,
  kConsecutive = 1,
  kUp = 2,
  kDown = 3,
  kOther = 4,
};
inline constexpr int kNumNumberingSteps = 5;
std::string_view NumberingStepName(NumberingStep step);

// Stack of (kind, largest value seen) pairs, deepest last. Kinds are
// distinct.
class NumberingMemory {
 public:
  struct Entry {
    NumberingKind kind;
    std::vector<int> value;
    int block = -1;  // last block that matched this entry

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  struct Result {
    NumberingStep step = NumberingStep::kContinuous;
    // For kUp and kConsecutive: the block that last matched the kind the
    // new numbering continues.
    std::optional<int> matched_block;
  };

  // Consumes the numbering candidates of the next block.
  //  1. no numbering                     -> continuous
  //  2. continues the top entry          -> consecutive
  //  3. continues a lower entry          -> up (entries above it are popped)
  //  4. initial value of an unseen kind  -> down (pushed)
  //  5. anything else                    -> other
  Result Step(const std::vector<Numbering>& candidates, int block = -1);

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const NumberingMemory&,
                         const NumberingMemory&) = default;

 private:
  enum class Fit { kNone, kTop, kLower, kNew, kStale };
  Fit Classify(const Numbering& n, std::size_t* depth) const;

  std::vector<Entry> entries_;
};

// Functional form of NumberingMemory::Step.
std::pair<NumberingStep, NumberingMemory> NumberingTransition(
    const NumberingMemory& memory, const std::vector<Numbering>& next);

// Block-level boolean predicates. Pairwise cues (blank fields, the
// dictionary-like test that needs the right margin) are combined by the
// feature layer.
struct TextualCues {
  bool punctuated = false;       // ends in . ! ? 。 (+ closing quotes)
  bool list_start = false;       // /[-;:,]$/
  bool list_element = false;     // /(;|,|and|or)$/
  bool page_number_strict = false;
  bool page_number_tolerant = false;
  bool starts_whereas = false;
  bool starts_now_therefore = false;
  bool has_colon = false;
  bool all_capital = false;
  bool blank_field = false;      // run of >= 3 underscores
  bool horizontal_line = false;  // only "*-=#%_+" characters
};

TextualCues ComputeTextualCues(std::string_view text);

// Unit-cost edit distance over code points.
std::size_t Levenshtein(std::string_view a, std::string_view b);
std::size_t Levenshtein(std::u32string_view a, std::u32string_view b);

}  // namespace vsd

#endif  // VSD_TEXT_CUES_H_

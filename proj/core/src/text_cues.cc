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

#include "vsd/text_cues.h"

#include <algorithm>
#include <array>

#include "vsd/utf8.h"

namespace vsd {

namespace {

constexpr int kMaxLeadingSpaces = 8;
constexpr std::size_t kMaxDigits = 6;

constexpr std::u32string_view kKatakanaOrder =
    U"アイウエオカキクケコサシスセソタチツテトナニヌネノハヒフヘホマミムメモヤユヨ"
    U"ラリルレロワヲン";

bool IsAsciiDigit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool IsAsciiLower(char32_t c) { return c >= U'a' && c <= U'z'; }
bool IsAsciiUpper(char32_t c) { return c >= U'A' && c <= U'Z'; }
bool IsAsciiLetter(char32_t c) { return IsAsciiLower(c) || IsAsciiUpper(c); }

// Character after a numbering that closes it: end, whitespace, or any
// non-ASCII character (Japanese text often follows without a space).
bool IsBoundary(std::u32string_view s, std::size_t pos) {
  return pos >= s.size() || utf8::IsSpace(s[pos]) || s[pos] > 0x7F;
}

int RomanDigit(char32_t c) {
  switch (c | 0x20) {
    case U'i':
      return 1;
    case U'v':
      return 5;
    case U'x':
      return 10;
    case U'l':
      return 50;
    case U'c':
      return 100;
    case U'd':
      return 500;
    case U'm':
      return 1000;
    default:
      return 0;
  }
}

std::string ToRoman(int value) {
  static constexpr std::array<std::pair<int, std::string_view>, 13> kTable = {{
      {1000, "m"}, {900, "cm"}, {500, "d"}, {400, "cd"}, {100, "c"},
      {90, "xc"}, {50, "l"}, {40, "xl"}, {10, "x"}, {9, "ix"}, {5, "v"},
      {4, "iv"}, {1, "i"},
  }};
  std::string out;
  for (const auto& [v, s] : kTable) {
    while (value >= v) {
      out += s;
      value -= v;
    }
  }
  return out;
}

// Value of a canonical lowercase/uppercase roman numeral, or 0.
int ParseRoman(std::u32string_view token) {
  if (token.empty() || token.size() > 9) return 0;
  const bool upper = IsAsciiUpper(token[0]);
  int total = 0;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (IsAsciiUpper(token[i]) != upper) return 0;
    const int v = RomanDigit(token[i]);
    if (v == 0) return 0;
    const int next = i + 1 < token.size() ? RomanDigit(token[i + 1]) : 0;
    total += v < next ? -v : v;
  }
  if (total <= 0) return 0;
  std::string lower;
  for (char32_t c : token) lower.push_back(static_cast<char>(c | 0x20));
  return ToRoman(total) == lower ? total : 0;
}

int ParseKanjiNumber(std::u32string_view token) {
  static constexpr std::u32string_view kDigits = U"〇一二三四五六七八九";
  int total = 0;
  int current = -1;
  for (char32_t c : token) {
    const auto d = kDigits.find(c);
    if (d != std::u32string_view::npos) {
      current = static_cast<int>(d);
    } else if (c == U'十') {
      total += (current < 0 ? 1 : current) * 10;
      current = -1;
    } else if (c == U'百') {
      total += (current < 0 ? 1 : current) * 100;
      current = -1;
    } else {
      return 0;
    }
  }
  if (current > 0) total += current;
  return total;
}

bool IsKanjiNumeral(char32_t c) {
  return std::u32string_view(U"〇一二三四五六七八九十百").find(c) !=
         std::u32string_view::npos;
}

struct Token {
  enum class Type { kDigits, kLetters, kKatakana } type;
  std::u32string_view text;
};

// Reads a digit run, an ASCII letter run, or a single katakana ordinal.
std::optional<Token> ReadToken(std::u32string_view s, std::size_t pos) {
  if (pos >= s.size()) return std::nullopt;
  std::size_t end = pos;
  if (IsAsciiDigit(s[pos])) {
    while (end < s.size() && IsAsciiDigit(s[end])) ++end;
    if (end - pos > kMaxDigits) return std::nullopt;
    return Token{Token::Type::kDigits, s.substr(pos, end - pos)};
  }
  if (IsAsciiLetter(s[pos])) {
    while (end < s.size() && IsAsciiLetter(s[end])) ++end;
    return Token{Token::Type::kLetters, s.substr(pos, end - pos)};
  }
  if (kKatakanaOrder.find(s[pos]) != std::u32string_view::npos) {
    return Token{Token::Type::kKatakana, s.substr(pos, 1)};
  }
  return std::nullopt;
}

int DigitsValue(std::u32string_view digits) {
  int v = 0;
  for (char32_t c : digits) v = v * 10 + static_cast<int>(c - U'0');
  return v;
}

enum class Style { kDot, kParen, kRParen };

NumberingKind Pick(Style style, NumberingKind dot, NumberingKind paren,
                   NumberingKind rparen) {
  switch (style) {
    case Style::kDot:
      return dot;
    case Style::kParen:
      return paren;
    case Style::kRParen:
      return rparen;
  }
  return dot;
}

// Readings of a single token in a given punctuation style.
void AddReadings(const Token& token, Style style, int length,
                 Language language, std::vector<Numbering>& out) {
  using K = NumberingKind;
  switch (token.type) {
    case Token::Type::kDigits: {
      const int v = DigitsValue(token.text);
      if (v < 1) return;
      K kind = Pick(style, K::kArabicDot, K::kArabicParen, K::kArabicRParen);
      if (language == Language::kJapanese && style == Style::kParen) {
        kind = K::kJaParen;
      }
      out.push_back({kind, {v}, length});
      return;
    }
    case Token::Type::kLetters: {
      const bool upper = IsAsciiUpper(token.text[0]);
      if (const int r = ParseRoman(token.text); r > 0) {
        out.push_back({upper ? Pick(style, K::kRomanUpperDot,
                                    K::kRomanUpperParen, K::kRomanUpperRParen)
                             : Pick(style, K::kRomanLowerDot,
                                    K::kRomanLowerParen, K::kRomanLowerRParen),
                       {r},
                       length});
      }
      if (token.text.size() == 1) {
        const int v = static_cast<int>((token.text[0] | 0x20) - U'a') + 1;
        out.push_back({upper ? Pick(style, K::kAlphaUpperDot,
                                    K::kAlphaUpperParen, K::kAlphaUpperRParen)
                             : Pick(style, K::kAlphaLowerDot,
                                    K::kAlphaLowerParen, K::kAlphaLowerRParen),
                       {v},
                       length});
      }
      return;
    }
    case Token::Type::kKatakana: {
      if (language != Language::kJapanese || style == Style::kRParen) return;
      const int v = static_cast<int>(kKatakanaOrder.find(token.text[0])) + 1;
      out.push_back({K::kJaKatakana, {v}, length});
      return;
    }
  }
}

void MatchAt(std::u32string_view s, std::size_t start, Language language,
             std::vector<Numbering>& out) {
  // (X)
  if (start < s.size() && s[start] == U'(') {
    if (auto tok = ReadToken(s, start + 1)) {
      const std::size_t close = start + 1 + tok->text.size();
      if (close < s.size() && s[close] == U')') {
        AddReadings(*tok, Style::kParen, static_cast<int>(close + 1), language,
                    out);
      }
    }
  }
  auto tok = ReadToken(s, start);
  if (tok) {
    const std::size_t after = start + tok->text.size();
    // X)
    if (after < s.size() && s[after] == U')' && IsBoundary(s, after + 1)) {
      AddReadings(*tok, Style::kRParen, static_cast<int>(after + 1), language,
                  out);
    }
    // X.  (the ideographic comma also closes katakana ordinals)
    if (after < s.size() &&
        (s[after] == U'.' ||
         (tok->type == Token::Type::kKatakana && s[after] == U'、')) &&
        IsBoundary(s, after + 1)) {
      AddReadings(*tok, Style::kDot, static_cast<int>(after + 1), language,
                  out);
    }
    // 1.2[.3[.4]][.]
    if (tok->type == Token::Type::kDigits) {
      std::vector<int> parts = {DigitsValue(tok->text)};
      std::size_t pos = after;
      while (pos + 1 < s.size() && s[pos] == U'.' && IsAsciiDigit(s[pos + 1])) {
        auto part = ReadToken(s, pos + 1);
        if (!part || part->type != Token::Type::kDigits) break;
        parts.push_back(DigitsValue(part->text));
        pos += 1 + part->text.size();
      }
      if (parts.size() >= 2 && parts.size() <= 4) {
        std::size_t end = pos;
        if (end < s.size() && s[end] == U'.') ++end;
        const bool positive =
            std::all_of(parts.begin(), parts.end(), [](int v) { return v > 0; });
        if (positive && IsBoundary(s, end)) {
          const auto kind = static_cast<NumberingKind>(
              static_cast<int>(NumberingKind::kMultilevel2) +
              static_cast<int>(parts.size()) - 2);
          out.push_back({kind, parts, static_cast<int>(end)});
        }
      }
    }
  }
  if (language != Language::kJapanese || start >= s.size()) return;
  // 第N条 / 第N項
  if (s[start] == U'第') {
    std::size_t pos = start + 1;
    while (pos < s.size() && (IsAsciiDigit(s[pos]) || IsKanjiNumeral(s[pos]))) {
      ++pos;
    }
    if (pos > start + 1 && pos < s.size() &&
        (s[pos] == U'条' || s[pos] == U'項')) {
      const auto digits = s.substr(start + 1, pos - start - 1);
      const int v = IsAsciiDigit(digits[0]) ? DigitsValue(digits)
                                            : ParseKanjiNumber(digits);
      if (v > 0) {
        out.push_back({s[pos] == U'条' ? NumberingKind::kJaArticle
                                        : NumberingKind::kJaClause,
                       {v},
                       static_cast<int>(pos + 1)});
      }
    }
  }
  // ①..⑳
  if (s[start] >= 0x2460 && s[start] <= 0x2473) {
    out.push_back({NumberingKind::kJaCircled,
                   {static_cast<int>(s[start] - 0x2460) + 1},
                   static_cast<int>(start + 1)});
  }
}

bool IsRoman(NumberingKind k) {
  return k >= NumberingKind::kRomanUpperDot &&
         k <= NumberingKind::kRomanLowerRParen;
}

bool ValueLess(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::u32string Prepare(std::string_view text) {
  return utf8::NarrowFullwidth(utf8::Decode(text));
}

std::u32string Lower(std::u32string_view s) {
  std::u32string out(s);
  for (char32_t& c : out) {
    if (IsAsciiUpper(c)) c = c | 0x20;
  }
  return out;
}

std::u32string TrimU32(std::u32string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && utf8::IsSpace(s[b])) ++b;
  while (e > b && utf8::IsSpace(s[e - 1])) --e;
  return std::u32string(s.substr(b, e - b));
}

std::vector<std::u32string> Tokens(std::u32string_view s) {
  std::vector<std::u32string> out;
  std::u32string cur;
  for (char32_t c : s) {
    if (utf8::IsSpace(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool AllDigits(std::u32string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), IsAsciiDigit);
}

bool IsClosingQuote(char32_t c) {
  return std::u32string_view(U"\"')]}”’」』）】").find(c) !=
         std::u32string_view::npos;
}

bool IsStrictPageNumber(std::u32string_view trimmed) {
  const auto toks = Tokens(Lower(trimmed));
  if (toks.size() == 1 && AllDigits(toks[0])) return true;
  if (toks.size() == 2 && toks[0] == U"page" && AllDigits(toks[1])) return true;
  if (toks.size() == 4 && toks[0] == U"page" && AllDigits(toks[1]) &&
      toks[2] == U"of" && AllDigits(toks[3])) {
    return true;
  }
  // - N -
  if (trimmed.size() >= 3 && trimmed.front() == U'-' && trimmed.back() == U'-') {
    return AllDigits(TrimU32(trimmed.substr(1, trimmed.size() - 2)));
  }
  return false;
}

}  // namespace

std::string_view NumberingKindName(NumberingKind kind) {
  static constexpr std::array<std::string_view, 23> kNames = {
      "arabic-dot",        "arabic-paren",      "arabic-rparen",
      "roman-upper-dot",   "roman-upper-paren", "roman-upper-rparen",
      "roman-lower-dot",   "roman-lower-paren", "roman-lower-rparen",
      "alpha-upper-dot",   "alpha-upper-paren", "alpha-upper-rparen",
      "alpha-lower-dot",   "alpha-lower-paren", "alpha-lower-rparen",
      "multilevel-2",      "multilevel-3",      "multilevel-4",
      "ja-article",        "ja-clause",         "ja-paren",
      "ja-circled",        "ja-katakana",
  };
  return kNames[static_cast<std::size_t>(kind)];
}

bool Numbering::IsFollowedBy(const Numbering& next) const {
  if (kind != next.kind || value.size() != next.value.size() || value.empty()) {
    return false;
  }
  for (std::size_t i = 0; i + 1 < value.size(); ++i) {
    if (value[i] != next.value[i]) return false;
  }
  return next.value.back() == value.back() + 1;
}

std::vector<Numbering> DetectNumbering(std::string_view text,
                                       Language language) {
  const std::u32string s = Prepare(text);
  std::size_t start = 0;
  while (start < s.size() && s[start] == U' ') ++start;
  if (start > kMaxLeadingSpaces) return {};

  std::vector<Numbering> found;
  MatchAt(s, start, language, found);
  if (found.empty()) return found;
  const int longest =
      std::max_element(found.begin(), found.end(),
                       [](const auto& a, const auto& b) {
                         return a.length < b.length;
                       })->length;
  std::erase_if(found, [&](const Numbering& n) { return n.length != longest; });
  std::stable_sort(found.begin(), found.end(),
                   [](const Numbering& a, const Numbering& b) {
                     return IsRoman(a.kind) && !IsRoman(b.kind);
                   });
  return found;
}

int NumberingPrefixLength(std::string_view text, Language language) {
  const auto found = DetectNumbering(text, language);
  if (found.empty()) return 0;
  const std::u32string s = Prepare(text);
  std::size_t end = static_cast<std::size_t>(found.front().length);
  while (end < s.size() && utf8::IsSpace(s[end])) ++end;
  return static_cast<int>(end);
}

std::string_view NumberingStepName(NumberingStep step) {
  switch (step) {
    case NumberingStep::kContinuous:
      return "continuous";
    case NumberingStep::kConsecutive:
      return "consecutive";
    case NumberingStep::kUp:
      return "up";
    case NumberingStep::kDown:
      return "down";
    case NumberingStep::kOther:
      return "other";
  }
  return "?";
}

NumberingMemory::Fit NumberingMemory::Classify(const Numbering& n,
                                               std::size_t* depth) const {
  if (!entries_.empty()) {
    const Entry& top = entries_.back();
    if (top.kind == n.kind && Numbering{top.kind, top.value, 0}.IsFollowedBy(n)) {
      *depth = entries_.size() - 1;
      return Fit::kTop;
    }
    for (std::size_t d = entries_.size() - 1; d-- > 0;) {
      const Entry& e = entries_[d];
      if (e.kind == n.kind && Numbering{e.kind, e.value, 0}.IsFollowedBy(n)) {
        *depth = d;
        return Fit::kLower;
      }
    }
  }
  const bool known =
      std::any_of(entries_.begin(), entries_.end(),
                  [&](const Entry& e) { return e.kind == n.kind; });
  if (!known && n.IsInitial()) return Fit::kNew;
  return known ? Fit::kStale : Fit::kNone;
}

NumberingMemory::Result NumberingMemory::Step(
    const std::vector<Numbering>& candidates, int block) {
  if (candidates.empty()) return {NumberingStep::kContinuous, std::nullopt};

  // Prefer a reading that continues the memory, then one that opens a new
  // kind, then the top-ranked reading.
  const Numbering* chosen = nullptr;
  Fit fit = Fit::kNone;
  std::size_t depth = 0;
  for (const Fit wanted : {Fit::kTop, Fit::kLower, Fit::kNew}) {
    for (const auto& c : candidates) {
      std::size_t d = 0;
      const Fit f = Classify(c, &d);
      const bool continues =
          wanted != Fit::kNew && (f == Fit::kTop || f == Fit::kLower);
      if ((continues && f == wanted) || (wanted == Fit::kNew && f == wanted)) {
        chosen = &c;
        fit = f;
        depth = d;
        break;
      }
    }
    if (chosen) break;
  }
  if (!chosen) {
    chosen = &candidates.front();
    fit = Classify(*chosen, &depth);
  }

  switch (fit) {
    case Fit::kTop: {
      Entry& top = entries_.back();
      const int matched = top.block;
      top.value = chosen->value;
      top.block = block;
      return {NumberingStep::kConsecutive, matched};
    }
    case Fit::kLower: {
      entries_.resize(depth + 1);
      Entry& e = entries_.back();
      const int matched = e.block;
      e.value = chosen->value;
      e.block = block;
      return {NumberingStep::kUp, matched};
    }
    case Fit::kNew:
      entries_.push_back({chosen->kind, chosen->value, block});
      return {NumberingStep::kDown, std::nullopt};
    case Fit::kStale:
      for (auto& e : entries_) {
        if (e.kind == chosen->kind && ValueLess(e.value, chosen->value)) {
          e.value = chosen->value;
          e.block = block;
        }
      }
      return {NumberingStep::kOther, std::nullopt};
    case Fit::kNone:
      break;
  }
  return {NumberingStep::kOther, std::nullopt};
}

std::pair<NumberingStep, NumberingMemory> NumberingTransition(
    const NumberingMemory& memory, const std::vector<Numbering>& next) {
  NumberingMemory updated = memory;
  const auto result = updated.Step(next);
  return {result.step, std::move(updated)};
}

TextualCues ComputeTextualCues(std::string_view text) {
  TextualCues cues;
  const std::u32string t = TrimU32(Prepare(text));
  if (t.empty()) return cues;
  const std::u32string lower = Lower(t);

  std::size_t end = t.size();
  while (end > 0 && IsClosingQuote(t[end - 1])) --end;
  if (end > 0) {
    const char32_t last = t[end - 1];
    cues.punctuated = last == U'.' || last == U'!' || last == U'?' ||
                      last == U'。';
  }

  const char32_t last = t.back();
  cues.list_start = last == U'-' || last == U';' || last == U':' ||
                    last == U',' || last == U'、';
  auto ends_with_word = [&](std::u32string_view word) {
    if (lower.size() < word.size()) return false;
    if (lower.compare(lower.size() - word.size(), word.size(), word) != 0) {
      return false;
    }
    return lower.size() == word.size() ||
           !IsAsciiLetter(lower[lower.size() - word.size() - 1]);
  };
  cues.list_element =
      last == U';' || last == U',' || ends_with_word(U"and") ||
      ends_with_word(U"or");

  cues.page_number_strict = IsStrictPageNumber(t);
  {
    const auto toks = Tokens(t);
    cues.page_number_tolerant =
        toks.size() <= 4 && t.size() <= 20 &&
        std::any_of(toks.begin(), toks.end(),
                    [](const auto& tok) { return AllDigits(tok); });
  }

  cues.starts_whereas = lower.starts_with(U"whereas");
  if (lower.starts_with(U"now")) {
    std::size_t pos = 3;
    if (pos < lower.size() && lower[pos] == U',') ++pos;
    const std::size_t ws = pos;
    while (pos < lower.size() && utf8::IsSpace(lower[pos])) ++pos;
    cues.starts_now_therefore =
        pos > ws && std::u32string_view(lower).substr(pos).starts_with(
                        U"therefore");
  }

  cues.has_colon = t.find(U':') != std::u32string::npos;

  bool any_letter = false;
  bool any_lower = false;
  for (char32_t c : t) {
    any_letter |= IsAsciiLetter(c);
    any_lower |= IsAsciiLower(c);
  }
  cues.all_capital = any_letter && !any_lower;

  cues.blank_field = t.find(U"___") != std::u32string::npos;

  cues.horizontal_line = std::all_of(t.begin(), t.end(), [](char32_t c) {
    return utf8::IsSpace(c) ||
           std::u32string_view(U"*-=#%_+").find(c) != std::u32string_view::npos;
  });
  return cues;
}

std::size_t Levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1,
                         diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t Levenshtein(std::string_view a, std::string_view b) {
  return Levenshtein(utf8::Decode(a), utf8::Decode(b));
}

}  // namespace vsd

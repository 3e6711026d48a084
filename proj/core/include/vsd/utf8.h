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

#ifndef VSD_UTF8_H_
#define VSD_UTF8_H_

#include <string>
#include <string_view>

namespace vsd::utf8 {

// Decodes UTF-8 into code points. Invalid sequences decode to U+FFFD.
std::u32string Decode(std::string_view text);

std::string Encode(std::u32string_view text);
void Append(std::string& out, char32_t cp);

// Number of code points.
std::size_t Length(std::string_view text);

// Maps fullwidth ASCII variants (U+FF01..U+FF5E) and the ideographic space
// to their ASCII counterparts. Other code points are left alone.
char32_t NarrowFullwidth(char32_t cp);
std::u32string NarrowFullwidth(std::u32string_view text);

bool IsSpace(char32_t cp);

// Strips leading and trailing whitespace (ASCII and U+3000).
std::string Trim(std::string_view text);

}  // namespace vsd::utf8

#endif  // VSD_UTF8_H_

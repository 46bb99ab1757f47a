// Copyright 2026 The lyriceval Authors
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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lyriceval::utf8 {

// Decodes UTF-8 into scalar values. Invalid bytes decode to U+FFFD, one
// replacement per offending byte, so decoding is total.
std::u32string Decode(std::string_view text);

std::string Encode(char32_t cp);
std::string Encode(std::u32string_view cps);

// Splits into one UTF-8 string per scalar value.
std::vector<std::string> SplitScalars(std::string_view text);

bool IsWhitespace(char32_t cp);

// Trims Unicode whitespace from both ends.
std::string Trim(std::string_view text);

}  // namespace lyriceval::utf8

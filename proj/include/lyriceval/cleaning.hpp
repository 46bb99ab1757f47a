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

#include <cstddef>
#include <filesystem>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "lyriceval/corpus.hpp"

namespace lyriceval {

struct LinePattern {
  std::string source;  // as written, without the "re:" prefix
  bool is_regex = false;
  std::regex compiled;

  bool Matches(const std::string& line) const;
};

// Rule file layout (UTF-8):
//
//   version = 1
//   [symbols]        one symbol string per line
//   [patterns]       one whole-line matcher per line; "re:" marks ECMAScript
//                    regex, anything else is a literal
//   [options]        max_consecutive_newlines = N
//
// Lines before the first section header other than "version = N" are
// ignored. Blank lines are ignored everywhere.
class CleaningRuleSet {
 public:
  static CleaningRuleSet Default();
  static CleaningRuleSet Parse(std::string_view content);
  static CleaningRuleSet Load(const std::filesystem::path& path);

  void AddSymbol(std::string symbol);
  // Throws kParse when a regex does not compile.
  void AddPattern(std::string_view entry);
  void set_max_consecutive_newlines(std::size_t n);

  const std::vector<std::string>& strip_symbols() const { return symbols_; }
  const std::vector<LinePattern>& drop_line_patterns() const { return patterns_; }
  std::size_t max_consecutive_newlines() const { return max_newlines_; }
  int version() const { return version_; }

  // True when a whole (already trimmed) line matches any drop pattern.
  bool DropsLine(const std::string& trimmed_line) const;
  std::string StripSymbols(std::string_view text) const;

 private:
  int version_ = 1;
  std::vector<std::string> symbols_;
  std::vector<LinePattern> patterns_;
  std::size_t max_newlines_ = 2;
};

// Contents of data/rules/default_v1.rules.
std::string_view DefaultRulesText();

// Collapses every run of more than max '\n' characters to exactly max.
std::string CompressNewlines(std::string_view text, std::size_t max);

// Removes tags, comments, and script/style bodies; decodes character
// entities. Line-level tags (br, p, div, li, tr, h1-h6) become '\n'.
std::string StripMarkup(std::string_view html);

std::string CleanText(std::string_view raw, const CleaningRuleSet& rules);
Document CleanDocument(Document doc, const CleaningRuleSet& rules);
void CleanCorpus(Corpus& corpus, const CleaningRuleSet& rules);

}  // namespace lyriceval

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

#include "lyriceval/cleaning.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "lyriceval/error.hpp"
#include "lyriceval/parallel.hpp"
#include "lyriceval/utf8.hpp"

namespace lyriceval {

namespace {

constexpr std::string_view kDefaultRules =
    "version = 1\n"
    "[symbols]\n"
    "*\n"
    "#\n"
    "＊\n"
    "＃\n"
    "﹡\n"
    "﹟\n"
    "⁎\n"
    "※\n"
    "[patterns]\n"
    "re:(-|－|—|─|━|_){3,}\n"
    "re:(=|＝){3,}\n"
    "re:更多更詳盡歌詞.*Mojim\\.com.*\n"
    "re:更多更详尽歌词.*Mojim\\.com.*\n"
    "re:Find more lyrics at.*Mojim\\.com.*\n"
    "[options]\n"
    "max_consecutive_newlines = 2\n";

constexpr int kMaxCleanPasses = 32;

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::string NormalizeLineEndings(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
    } else {
      out.push_back(text[i]);
    }
  }
  return out;
}

bool IsLineTag(std::string_view name) {
  static constexpr std::string_view kLineTags[] = {
      "br", "p", "div", "li", "tr", "h1", "h2", "h3", "h4", "h5", "h6"};
  return std::find(std::begin(kLineTags), std::end(kLineTags), name) !=
         std::end(kLineTags);
}

// Returns the decoded entity and its length in input bytes, or an empty
// optional when '&' at `pos` does not start a recognizable entity.
std::optional<std::pair<std::string, std::size_t>> DecodeEntity(
    std::string_view s, std::size_t pos) {
  const std::size_t semi = s.find(';', pos + 1);
  if (semi == std::string_view::npos || semi - pos > 12) return std::nullopt;
  const std::string_view body = s.substr(pos + 1, semi - pos - 1);
  if (body.empty()) return std::nullopt;
  const std::size_t len = semi - pos + 1;
  if (body[0] == '#') {
    const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
    const std::string digits(body.substr(hex ? 2 : 1));
    if (digits.empty()) return std::nullopt;
    for (char c : digits) {
      if (hex ? !std::isxdigit(static_cast<unsigned char>(c))
              : !std::isdigit(static_cast<unsigned char>(c))) {
        return std::nullopt;
      }
    }
    const unsigned long cp = std::strtoul(digits.c_str(), nullptr, hex ? 16 : 10);
    if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return std::make_pair(std::string("�"), len);
    }
    return std::make_pair(utf8::Encode(static_cast<char32_t>(cp)), len);
  }
  static const std::pair<std::string_view, std::string_view> kNamed[] = {
      {"amp", "&"},   {"lt", "<"},       {"gt", ">"},     {"quot", "\""},
      {"apos", "'"},  {"nbsp", " "},     {"ensp", " "},   {"emsp", " "},
      {"middot", "·"}, {"hellip", "…"},  {"mdash", "—"},  {"ndash", "–"},
      {"ldquo", "“"}, {"rdquo", "”"},    {"lsquo", "‘"},  {"rsquo", "’"},
      {"copy", "©"},  {"reg", "®"},      {"times", "×"},  {"hearts", "♥"},
  };
  for (const auto& [name, value] : kNamed) {
    if (body == name) return std::make_pair(std::string(value), len);
  }
  return std::nullopt;
}

std::string CleanPass(std::string_view raw, const CleaningRuleSet& rules) {
  const std::string text = StripMarkup(NormalizeLineEndings(raw));
  std::string joined;
  joined.reserve(text.size());
  bool first = true;
  for (std::string_view line : SplitLines(text)) {
    std::string trimmed = utf8::Trim(line);
    if (!trimmed.empty() && rules.DropsLine(trimmed)) continue;
    std::string stripped = utf8::Trim(rules.StripSymbols(trimmed));
    if (!stripped.empty() && rules.DropsLine(stripped)) continue;
    if (!first) joined.push_back('\n');
    joined += stripped;
    first = false;
  }
  std::string out = CompressNewlines(joined, rules.max_consecutive_newlines());
  const std::size_t begin = out.find_first_not_of('\n');
  if (begin == std::string::npos) return {};
  const std::size_t end = out.find_last_not_of('\n');
  return out.substr(begin, end - begin + 1);
}

}  // namespace

bool LinePattern::Matches(const std::string& line) const {
  if (is_regex) return std::regex_match(line, compiled);
  return line == source;
}

std::string_view DefaultRulesText() { return kDefaultRules; }

CleaningRuleSet CleaningRuleSet::Default() { return Parse(kDefaultRules); }

CleaningRuleSet CleaningRuleSet::Load(const std::filesystem::path& path) {
  return Parse(ReadFile(path));
}

CleaningRuleSet CleaningRuleSet::Parse(std::string_view content) {
  CleaningRuleSet rules;
  enum class Section { kPreamble, kSymbols, kPatterns, kOptions } section =
      Section::kPreamble;
  std::size_t line_no = 0;
  for (std::string_view line : SplitLines(content)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string trimmed = utf8::Trim(line);
    if (trimmed.empty()) continue;
    const std::string where = "rules line " + std::to_string(line_no) + ": ";
    if (trimmed == "[symbols]") {
      section = Section::kSymbols;
      continue;
    }
    if (trimmed == "[patterns]") {
      section = Section::kPatterns;
      continue;
    }
    if (trimmed == "[options]") {
      section = Section::kOptions;
      continue;
    }
    auto key_value = [&](std::string& key, std::string& value) {
      const auto eq = trimmed.find('=');
      if (eq == std::string::npos) return false;
      key = utf8::Trim(std::string_view(trimmed).substr(0, eq));
      value = utf8::Trim(std::string_view(trimmed).substr(eq + 1));
      return true;
    };
    switch (section) {
      case Section::kPreamble: {
        std::string key, value;
        if (key_value(key, value) && key == "version") {
          try {
            rules.version_ = std::stoi(value);
          } catch (const std::exception&) {
            Fail(ErrorCode::kParse, where + "bad version '" + value + "'");
          }
        }
        break;
      }
      case Section::kSymbols:
        rules.AddSymbol(trimmed);
        break;
      case Section::kPatterns:
        try {
          rules.AddPattern(trimmed);
        } catch (const Error& e) {
          Fail(ErrorCode::kParse, where + e.what());
        }
        break;
      case Section::kOptions: {
        std::string key, value;
        if (!key_value(key, value)) Fail(ErrorCode::kParse, where + "expected key = value");
        if (key != "max_consecutive_newlines") {
          Fail(ErrorCode::kParse, where + "unknown option '" + key + "'");
        }
        long n = 0;
        try {
          n = std::stol(value);
        } catch (const std::exception&) {
          Fail(ErrorCode::kParse, where + "bad count '" + value + "'");
        }
        if (n < 1) Fail(ErrorCode::kParse, where + "max_consecutive_newlines must be >= 1");
        rules.max_newlines_ = static_cast<std::size_t>(n);
        break;
      }
    }
  }
  return rules;
}

void CleaningRuleSet::AddSymbol(std::string symbol) {
  Require(!symbol.empty(), "strip symbol must be non-empty");
  if (std::find(symbols_.begin(), symbols_.end(), symbol) == symbols_.end()) {
    symbols_.push_back(std::move(symbol));
  }
}

void CleaningRuleSet::AddPattern(std::string_view entry) {
  LinePattern pattern;
  if (entry.substr(0, 3) == "re:") {
    pattern.is_regex = true;
    pattern.source = std::string(entry.substr(3));
    try {
      pattern.compiled = std::regex(pattern.source, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      Fail(ErrorCode::kParse, "invalid regex '" + pattern.source + "': " + e.what());
    }
  } else {
    pattern.source = std::string(entry);
  }
  Require(!pattern.source.empty(), "drop pattern must be non-empty");
  patterns_.push_back(std::move(pattern));
}

void CleaningRuleSet::set_max_consecutive_newlines(std::size_t n) {
  Require(n >= 1, "max_consecutive_newlines must be >= 1");
  max_newlines_ = n;
}

bool CleaningRuleSet::DropsLine(const std::string& trimmed_line) const {
  return std::any_of(patterns_.begin(), patterns_.end(),
                     [&](const LinePattern& p) { return p.Matches(trimmed_line); });
}

std::string CleaningRuleSet::StripSymbols(std::string_view text) const {
  std::string out(text);
  for (const auto& symbol : symbols_) {
    std::string next;
    next.reserve(out.size());
    std::size_t pos = 0;
    while (true) {
      const std::size_t hit = out.find(symbol, pos);
      if (hit == std::string::npos) {
        next.append(out, pos, std::string::npos);
        break;
      }
      next.append(out, pos, hit - pos);
      pos = hit + symbol.size();
    }
    out = std::move(next);
  }
  return out;
}

std::string CompressNewlines(std::string_view text, std::size_t max) {
  Require(max >= 1, "max consecutive newlines must be >= 1");
  std::string out;
  out.reserve(text.size());
  std::size_t run = 0;
  for (char c : text) {
    if (c == '\n') {
      if (++run > max) continue;
    } else {
      run = 0;
    }
    out.push_back(c);
  }
  return out;
}

std::string StripMarkup(std::string_view html) {
  std::string out;
  out.reserve(html.size());
  const std::string lower = Lower(html);
  std::size_t i = 0;
  const std::size_t n = html.size();
  while (i < n) {
    const char c = html[i];
    if (c == '<') {
      if (lower.compare(i, 4, "<!--") == 0) {
        const std::size_t end = lower.find("-->", i + 4);
        i = end == std::string::npos ? n : end + 3;
        continue;
      }
      const char next = i + 1 < n ? html[i + 1] : '\0';
      const bool opens_tag = std::isalpha(static_cast<unsigned char>(next)) ||
                             next == '/' || next == '!' || next == '?';
      const std::size_t close = opens_tag ? html.find('>', i + 1) : std::string::npos;
      if (close == std::string::npos) {
        out.push_back(c);
        ++i;
        continue;
      }
      std::size_t name_begin = i + 1;
      if (name_begin < close && html[name_begin] == '/') ++name_begin;
      std::size_t name_end = name_begin;
      while (name_end < close &&
             std::isalnum(static_cast<unsigned char>(html[name_end]))) {
        ++name_end;
      }
      const std::string name = lower.substr(name_begin, name_end - name_begin);
      const bool closing = html[i + 1] == '/';
      if (!closing && (name == "script" || name == "style")) {
        const std::size_t end = lower.find("</" + name, close + 1);
        if (end == std::string::npos) {
          i = n;
        } else {
          const std::size_t end_close = lower.find('>', end);
          i = end_close == std::string::npos ? n : end_close + 1;
        }
        continue;
      }
      if (IsLineTag(name)) out.push_back('\n');
      i = close + 1;
      continue;
    }
    if (c == '&') {
      if (auto decoded = DecodeEntity(html, i)) {
        out += decoded->first;
        i += decoded->second;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

std::string CleanText(std::string_view raw, const CleaningRuleSet& rules) {
  std::string current = CleanPass(raw, rules);
  // Each pass only removes or shortens content, so this reaches a fixpoint,
  // which is what makes cleaning idempotent.
  for (int pass = 1; pass < kMaxCleanPasses; ++pass) {
    std::string next = CleanPass(current, rules);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

Document CleanDocument(Document doc, const CleaningRuleSet& rules) {
  doc.clean_text = CleanText(doc.raw_text, rules);
  return doc;
}

void CleanCorpus(Corpus& corpus, const CleaningRuleSet& rules) {
  auto& docs = corpus.mutable_documents();
  ParallelFor(docs.size(), [&](std::size_t i) {
    docs[i].clean_text = CleanText(docs[i].raw_text, rules);
  });
}

}  // namespace lyriceval

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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace lyriceval {

struct Document {
  std::string id;
  std::string raw_text;
  std::optional<std::string> clean_text;
  std::string source;
  std::map<std::string, std::string> meta;

  // Cleaned text when available, otherwise the raw text.
  const std::string& text() const { return clean_text ? *clean_text : raw_text; }

  bool operator==(const Document&) const = default;
};

class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::string name) : name_(std::move(name)) {}

  // Throws on an empty or duplicate id.
  void Add(Document doc);

  const std::vector<Document>& documents() const { return documents_; }
  std::vector<Document>& mutable_documents() { return documents_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }

  bool operator==(const Corpus& other) const {
    return name_ == other.name_ && documents_ == other.documents_;
  }

 private:
  std::string name_;
  std::vector<Document> documents_;
  std::unordered_set<std::string> ids_;
};

enum class CorpusFormat { kJsonl, kPlainDir };

CorpusFormat ParseCorpusFormat(std::string_view name);

// JSONL: one object per line with "id", "text" and optional "source" and
// "meta" (string map). Blank lines are skipped. Plain-dir: one document per
// regular file, id = file name without extension, ordered by file name.
Corpus LoadCorpus(const std::filesystem::path& path, CorpusFormat format);
Corpus ParseCorpusJsonl(std::string_view content, const std::string& name);

// Writes text() for every document, so a cleaned corpus serializes its
// cleaned form.
std::string SerializeCorpusJsonl(const Corpus& corpus);
void SaveCorpusJsonl(const Corpus& corpus, const std::filesystem::path& path);

enum class TokenScheme { kUnicodeScalar, kWhitespace };

TokenScheme ParseTokenScheme(std::string_view name);
std::string_view TokenSchemeName(TokenScheme scheme);

struct TokenSequence {
  std::vector<std::string> tokens;
  TokenScheme scheme = TokenScheme::kUnicodeScalar;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

// kUnicodeScalar: one token per scalar value (newlines included).
// kWhitespace: maximal runs of non-whitespace scalars.
TokenSequence Tokenize(std::string_view text, TokenScheme scheme);

struct CorpusStats {
  std::uint64_t song_count = 0;
  std::uint64_t token_count = 0;
  std::uint64_t byte_size = 0;
  std::optional<std::uint64_t> artist_count;
};

// Counts over clean_text, or raw_text when use_raw is set. Documents without
// clean_text fall back to raw_text. artist_count is filled when documents
// carry an "artist" meta key.
CorpusStats ComputeCorpusStats(const Corpus& corpus, TokenScheme scheme,
                               bool use_raw = false);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

}  // namespace lyriceval

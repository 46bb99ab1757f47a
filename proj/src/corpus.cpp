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

#include "lyriceval/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "lyriceval/error.hpp"
#include "lyriceval/utf8.hpp"

namespace lyriceval {

using nlohmann::json;

void Corpus::Add(Document doc) {
  Require(!doc.id.empty(), "document id must be non-empty");
  Require(ids_.insert(doc.id).second, "duplicate document id '" + doc.id + "'");
  documents_.push_back(std::move(doc));
}

CorpusFormat ParseCorpusFormat(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::kJsonl;
  if (name == "plain-dir") return CorpusFormat::kPlainDir;
  Fail(ErrorCode::kInvalidArgument,
       "unknown corpus format '" + std::string(name) + "'");
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) Fail(ErrorCode::kIo, "read failed for '" + path.string() + "'");
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) Fail(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

Corpus ParseCorpusJsonl(std::string_view content, const std::string& name) {
  Corpus corpus(name);
  std::unordered_map<std::string, std::size_t> first_line;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    const std::string where = "line " + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      Fail(ErrorCode::kParse, where + ": malformed JSON: " + e.what());
    }
    if (!record.is_object()) Fail(ErrorCode::kParse, where + ": expected an object");
    if (!record.contains("id") || !record["id"].is_string()) {
      Fail(ErrorCode::kParse, where + ": missing string field \"id\"");
    }
    if (!record.contains("text") || !record["text"].is_string()) {
      Fail(ErrorCode::kParse, where + ": missing string field \"text\"");
    }
    Document doc;
    doc.id = record["id"].get<std::string>();
    doc.raw_text = record["text"].get<std::string>();
    if (doc.id.empty()) Fail(ErrorCode::kParse, where + ": empty \"id\"");
    if (record.contains("source")) {
      if (!record["source"].is_string()) {
        Fail(ErrorCode::kParse, where + ": \"source\" must be a string");
      }
      doc.source = record["source"].get<std::string>();
    }
    if (record.contains("meta")) {
      const json& meta = record["meta"];
      if (!meta.is_object()) Fail(ErrorCode::kParse, where + ": \"meta\" must be an object");
      for (const auto& [key, value] : meta.items()) {
        if (!value.is_string()) {
          Fail(ErrorCode::kParse, where + ": meta value for '" + key + "' must be a string");
        }
        doc.meta[key] = value.get<std::string>();
      }
    }
    auto [it, inserted] = first_line.emplace(doc.id, line_no);
    if (!inserted) {
      Fail(ErrorCode::kParse, "duplicate id '" + doc.id + "' on line " +
                                  std::to_string(it->second) + " and line " +
                                  std::to_string(line_no));
    }
    corpus.Add(std::move(doc));
  }
  return corpus;
}

namespace {

Corpus LoadPlainDir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    Fail(ErrorCode::kIo, "not a directory: '" + dir.string() + "'");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  Corpus corpus(dir.filename().string());
  std::unordered_map<std::string, std::string> seen;
  for (const auto& file : files) {
    Document doc;
    doc.id = file.stem().string();
    auto [it, inserted] = seen.emplace(doc.id, file.filename().string());
    if (!inserted) {
      Fail(ErrorCode::kParse, "duplicate id '" + doc.id + "' from files '" +
                                  it->second + "' and '" +
                                  file.filename().string() + "'");
    }
    doc.raw_text = ReadFile(file);
    corpus.Add(std::move(doc));
  }
  return corpus;
}

}  // namespace

Corpus LoadCorpus(const std::filesystem::path& path, CorpusFormat format) {
  if (format == CorpusFormat::kPlainDir) return LoadPlainDir(path);
  return ParseCorpusJsonl(ReadFile(path), path.stem().string());
}

std::string SerializeCorpusJsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& doc : corpus.documents()) {
    json record;
    record["id"] = doc.id;
    record["text"] = doc.text();
    if (!doc.source.empty()) record["source"] = doc.source;
    if (!doc.meta.empty()) record["meta"] = doc.meta;
    out += record.dump(-1, ' ', false, json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

void SaveCorpusJsonl(const Corpus& corpus, const std::filesystem::path& path) {
  WriteFile(path, SerializeCorpusJsonl(corpus));
}

TokenScheme ParseTokenScheme(std::string_view name) {
  if (name == "unicode-scalar") return TokenScheme::kUnicodeScalar;
  if (name == "whitespace") return TokenScheme::kWhitespace;
  Fail(ErrorCode::kInvalidArgument,
       "unknown token scheme '" + std::string(name) + "'");
}

std::string_view TokenSchemeName(TokenScheme scheme) {
  return scheme == TokenScheme::kUnicodeScalar ? "unicode-scalar" : "whitespace";
}

TokenSequence Tokenize(std::string_view text, TokenScheme scheme) {
  TokenSequence seq;
  seq.scheme = scheme;
  const std::u32string cps = utf8::Decode(text);
  if (scheme == TokenScheme::kUnicodeScalar) {
    seq.tokens.reserve(cps.size());
    for (char32_t cp : cps) seq.tokens.push_back(utf8::Encode(cp));
    return seq;
  }
  std::u32string current;
  for (char32_t cp : cps) {
    if (utf8::IsWhitespace(cp)) {
      if (!current.empty()) seq.tokens.push_back(utf8::Encode(current));
      current.clear();
    } else {
      current.push_back(cp);
    }
  }
  if (!current.empty()) seq.tokens.push_back(utf8::Encode(current));
  return seq;
}

CorpusStats ComputeCorpusStats(const Corpus& corpus, TokenScheme scheme,
                               bool use_raw) {
  CorpusStats stats;
  std::set<std::string> artists;
  for (const auto& doc : corpus.documents()) {
    const std::string& text = use_raw ? doc.raw_text : doc.text();
    ++stats.song_count;
    stats.token_count += Tokenize(text, scheme).size();
    stats.byte_size += text.size();
    if (auto it = doc.meta.find("artist"); it != doc.meta.end()) {
      artists.insert(it->second);
    }
  }
  if (!artists.empty()) stats.artist_count = artists.size();
  return stats;
}

}  // namespace lyriceval

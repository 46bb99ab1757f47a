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

#include <filesystem>
#include <string>

#include "doctest.h"
#include "lyriceval/corpus.hpp"
#include "lyriceval/error.hpp"

using namespace lyriceval;
namespace fs = std::filesystem;

namespace {

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("lyriceval_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInternal;
}

template <typename F>
std::string MessageOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  FAIL("expected an error");
  return {};
}

}  // namespace

TEST_CASE("jsonl with zero records is an empty corpus") {
  CHECK(ParseCorpusJsonl("", "x").empty());
  CHECK(ParseCorpusJsonl("\n\n", "x").empty());
}

TEST_CASE("jsonl keeps file order and raw bytes") {
  const Corpus c = ParseCorpusJsonl(
      "{\"id\":\"b\",\"text\":\"<b>x</b>\\n\"}\n"
      "{\"id\":\"a\",\"text\":\"y\",\"source\":\"human\",\"meta\":{\"artist\":\"z\"}}\n"
      "{\"id\":\"c\",\"text\":\"\"}\n",
      "t");
  REQUIRE(c.size() == 3);
  CHECK(c.documents()[0].id == "b");
  CHECK(c.documents()[0].raw_text == "<b>x</b>\n");
  CHECK_FALSE(c.documents()[0].clean_text.has_value());
  CHECK(c.documents()[1].source == "human");
  CHECK(c.documents()[1].meta.at("artist") == "z");
  CHECK(c.documents()[2].id == "c");
}

TEST_CASE("missing id cites the line") {
  const std::string content = "{\"id\":\"a\",\"text\":\"x\"}\n{\"text\":\"y\"}\n";
  CHECK(CodeOf([&] { ParseCorpusJsonl(content, "t"); }) == ErrorCode::kParse);
  CHECK(MessageOf([&] { ParseCorpusJsonl(content, "t"); }).find("line 2") != std::string::npos);
}

TEST_CASE("malformed json cites the line") {
  const std::string content = "{\"id\":\"a\",\"text\":\"x\"}\n\n{oops\n";
  CHECK(MessageOf([&] { ParseCorpusJsonl(content, "t"); }).find("line 3") != std::string::npos);
}

TEST_CASE("duplicate id names both occurrences") {
  const std::string content =
      "{\"id\":\"a\",\"text\":\"x\"}\n{\"id\":\"b\",\"text\":\"x\"}\n{\"id\":\"a\",\"text\":\"y\"}\n";
  const std::string msg = MessageOf([&] { ParseCorpusJsonl(content, "t"); });
  CHECK(msg.find("line 1") != std::string::npos);
  CHECK(msg.find("line 3") != std::string::npos);
}

TEST_CASE("corpus rejects empty and duplicate ids") {
  Corpus c("t");
  Document d;
  CHECK(CodeOf([&] { c.Add(d); }) == ErrorCode::kInvalidArgument);
  d.id = "x";
  c.Add(d);
  CHECK(CodeOf([&] { c.Add(d); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("load serialize load round trips") {
  const fs::path dir = TempDir("roundtrip");
  const Corpus a = LoadCorpus(fs::path(LE_SOURCE_DIR) / "data/fixtures/classical_zh.jsonl",
                              CorpusFormat::kJsonl);
  SaveCorpusJsonl(a, dir / "out.jsonl");
  Corpus b = LoadCorpus(dir / "out.jsonl", CorpusFormat::kJsonl);
  CHECK(b.size() == a.size());
  CHECK(b.documents() == a.documents());
  CHECK(SerializeCorpusJsonl(a) == SerializeCorpusJsonl(b));
}

TEST_CASE("plain directory loads sorted files with stem ids") {
  const fs::path dir = TempDir("plain");
  WriteFile(dir / "b.txt", "second");
  WriteFile(dir / "a.txt", "first\r\n");
  const Corpus c = LoadCorpus(dir, CorpusFormat::kPlainDir);
  REQUIRE(c.size() == 2);
  CHECK(c.documents()[0].id == "a");
  CHECK(c.documents()[0].raw_text == "first\r\n");
  CHECK(c.documents()[1].id == "b");
}

TEST_CASE("missing files are io errors") {
  CHECK(CodeOf([] { LoadCorpus("/nonexistent/x.jsonl", CorpusFormat::kJsonl); }) ==
        ErrorCode::kIo);
  CHECK(CodeOf([] { LoadCorpus("/nonexistent/dir", CorpusFormat::kPlainDir); }) == ErrorCode::kIo);
}

TEST_CASE("tokenize examples") {
  CHECK(Tokenize("你好", TokenScheme::kUnicodeScalar).tokens == std::vector<std::string>{"你", "好"});
  CHECK(Tokenize("", TokenScheme::kUnicodeScalar).empty());
  CHECK(Tokenize("ab 你", TokenScheme::kWhitespace).tokens == std::vector<std::string>{"ab", "你"});
  CHECK(Tokenize("  a　b\n\nc ", TokenScheme::kWhitespace).tokens ==
        std::vector<std::string>{"a", "b", "c"});
  CHECK(ParseTokenScheme("whitespace") == TokenScheme::kWhitespace);
  CHECK(CodeOf([] { ParseTokenScheme("bpe"); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("unicode scalar tokens reconstruct the text") {
  const std::string text = "床前明月光\n疑是 地上霜 abc";
  const TokenSequence t = Tokenize(text, TokenScheme::kUnicodeScalar);
  std::string joined;
  for (const auto& tok : t.tokens) joined += tok;
  CHECK(joined == text);
  CHECK(t.size() == 16);
}

TEST_CASE("corpus stats examples") {
  const CorpusStats empty = ComputeCorpusStats(Corpus("e"), TokenScheme::kUnicodeScalar);
  CHECK(empty.song_count == 0);
  CHECK(empty.token_count == 0);
  CHECK(empty.byte_size == 0);

  Corpus c("t");
  c.Add({"1", "你好", std::nullopt, "", {{"artist", "x"}}});
  c.Add({"2", "a b", std::nullopt, "", {{"artist", "x"}}});
  const CorpusStats s = ComputeCorpusStats(c, TokenScheme::kUnicodeScalar, true);
  CHECK(s.song_count == 2);
  CHECK(s.token_count == 5);
  CHECK(s.byte_size == 9);
  REQUIRE(s.artist_count.has_value());
  CHECK(*s.artist_count == 1);
  CHECK(ComputeCorpusStats(c, TokenScheme::kWhitespace, true).token_count == 3);
}

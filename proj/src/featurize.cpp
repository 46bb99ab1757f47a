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

#include "lyriceval/featurize.hpp"

#include <charconv>
#include <cmath>

#include "json.hpp"
#include "lyriceval/error.hpp"
#include "lyriceval/hash.hpp"
#include "lyriceval/parallel.hpp"
#include "lyriceval/utf8.hpp"

namespace lyriceval {

namespace {

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) Fail(ErrorCode::kInternal, "number formatting failed");
  return std::string(buf, ptr);
}

bool ParseDouble(std::string_view field, double& out) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
  if (field.empty()) return false;
  // from_chars rejects a leading '+'.
  if (field.front() == '+') field.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

std::vector<std::string_view> SplitComma(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

FeatureSet Assemble(std::vector<std::string> ids, const std::vector<std::vector<double>>& rows,
                    std::size_t dim) {
  FeatureSet fs;
  fs.ids = std::move(ids);
  fs.origin = FeatureOrigin::kExternal;
  fs.vectors.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      fs.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return fs;
}

}  // namespace

std::vector<double> HashedNgramVector(std::string_view text, const HashedNgramConfig& cfg) {
  Require(cfg.dim >= 2, "feature dimension must be >= 2");
  Require(cfg.min_n >= 1 && cfg.min_n <= cfg.max_n, "invalid n-gram range");
  std::u32string cps = utf8::Decode(text);
  if (cps.size() > cfg.max_length) cps.resize(cfg.max_length);
  std::vector<std::string> scalars;
  scalars.reserve(cps.size());
  for (char32_t cp : cps) scalars.push_back(utf8::Encode(cp));

  std::vector<double> v(cfg.dim, 0.0);
  std::string key;
  for (std::size_t n = cfg.min_n; n <= cfg.max_n; ++n) {
    if (scalars.size() < n) break;
    for (std::size_t i = 0; i + n <= scalars.size(); ++i) {
      key.clear();
      for (std::size_t k = 0; k < n; ++k) key += scalars[i + k];
      v[SeededBucket(key, cfg.seed, cfg.dim)] += 1.0;
    }
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

FeatureSet HashedNgramFeatures(const Corpus& corpus, const HashedNgramConfig& cfg) {
  Require(cfg.dim >= 2, "feature dimension must be >= 2");
  const auto& docs = corpus.documents();
  FeatureSet fs;
  fs.origin = FeatureOrigin::kHashedNgram;
  fs.vectors = RowMatrix::Zero(static_cast<Eigen::Index>(docs.size()),
                               static_cast<Eigen::Index>(cfg.dim));
  for (const auto& doc : docs) fs.ids.push_back(doc.id);
  ParallelFor(docs.size(), [&](std::size_t i) {
    const auto v = HashedNgramVector(docs[i].text(), cfg);
    for (std::size_t c = 0; c < cfg.dim; ++c) {
      fs.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = v[c];
    }
  });
  return fs;
}

FeatureSet ParseFeaturesCsv(std::string_view content) {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> rows;
  std::size_t dim = 0;
  bool have_header = false;
  std::size_t data_row = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fields = SplitComma(line);
    if (!have_header) {
      if (fields.empty() || fields[0] != "id" || fields.size() < 2) {
        Fail(ErrorCode::kParse, "feature CSV header must be 'id,f0,...'");
      }
      dim = fields.size() - 1;
      have_header = true;
      continue;
    }
    ++data_row;
    if (fields.size() - 1 != dim) {
      Fail(ErrorCode::kParse, "row " + std::to_string(data_row) + " has " +
                                  std::to_string(fields.size() - 1) +
                                  " values, expected " + std::to_string(dim));
    }
    std::vector<double> row(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      if (!ParseDouble(fields[c + 1], row[c])) {
        Fail(ErrorCode::kParse, "row " + std::to_string(data_row) + ", column " +
                                    std::to_string(c) + ": not a number: '" +
                                    std::string(fields[c + 1]) + "'");
      }
      if (!std::isfinite(row[c])) {
        Fail(ErrorCode::kParse, "non-finite value at (" + std::to_string(data_row) + "," +
                                    std::to_string(c) + ")");
      }
    }
    ids.emplace_back(fields[0]);
    rows.push_back(std::move(row));
  }
  if (!have_header) Fail(ErrorCode::kParse, "feature CSV is empty");
  return Assemble(std::move(ids), rows, dim);
}

FeatureSet ParseFeaturesJsonl(std::string_view content) {
  using nlohmann::json;
  std::vector<std::string> ids;
  std::vector<std::vector<double>> rows;
  std::size_t dim = 0;
  std::size_t data_row = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    ++data_row;
    const std::string where = "row " + std::to_string(data_row);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      Fail(ErrorCode::kParse, where + ": malformed JSON: " + e.what());
    }
    if (!record.is_object() || !record.contains("id") || !record["id"].is_string() ||
        !record.contains("vector") || !record["vector"].is_array()) {
      Fail(ErrorCode::kParse, where + ": expected {\"id\": string, \"vector\": [numbers]}");
    }
    const json& vec = record["vector"];
    if (data_row == 1) dim = vec.size();
    if (vec.size() != dim || dim == 0) {
      Fail(ErrorCode::kParse, where + " has " + std::to_string(vec.size()) +
                                  " values, expected " + std::to_string(dim));
    }
    std::vector<double> row(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      // JSON has no NaN literal; null and strings are how producers leak them.
      if (!vec[c].is_number()) {
        Fail(ErrorCode::kParse, "non-finite value at (" + std::to_string(data_row) + "," +
                                    std::to_string(c) + ")");
      }
      row[c] = vec[c].get<double>();
      if (!std::isfinite(row[c])) {
        Fail(ErrorCode::kParse, "non-finite value at (" + std::to_string(data_row) + "," +
                                    std::to_string(c) + ")");
      }
    }
    ids.push_back(record["id"].get<std::string>());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) Fail(ErrorCode::kParse, "feature JSONL has no rows");
  return Assemble(std::move(ids), rows, dim);
}

FeatureSet LoadFeatures(const std::filesystem::path& path) {
  const std::string content = ReadFile(path);
  const std::size_t first = content.find_first_not_of(" \t\r\n");
  const bool jsonl = path.extension() == ".jsonl" ||
                     (first != std::string::npos && content[first] == '{');
  return jsonl ? ParseFeaturesJsonl(content) : ParseFeaturesCsv(content);
}

std::string SerializeFeaturesCsv(const FeatureSet& features) {
  std::string out = "id";
  for (std::size_t c = 0; c < features.dim(); ++c) out += ",f" + std::to_string(c);
  out += '\n';
  for (std::size_t r = 0; r < features.rows(); ++r) {
    out += features.ids[r];
    for (std::size_t c = 0; c < features.dim(); ++c) {
      out += ',';
      out += FormatDouble(
          features.vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
    }
    out += '\n';
  }
  return out;
}

void SaveFeaturesCsv(const FeatureSet& features, const std::filesystem::path& path) {
  WriteFile(path, SerializeFeaturesCsv(features));
}

}  // namespace lyriceval

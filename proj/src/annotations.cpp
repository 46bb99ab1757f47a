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

#include "lyriceval/annotations.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "lyriceval/corpus.hpp"
#include "lyriceval/error.hpp"
#include "lyriceval/utf8.hpp"

namespace lyriceval {

namespace {

// Parses RFC 4180 records. Each record carries the 1-based line it began on.
struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;
};

std::vector<CsvRecord> ParseCsv(std::string_view content) {
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  current.line = 1;
  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = current.fields.size() == 1 && current.fields[0].empty();
    if (!blank) records.push_back(std::move(current));
    current = CsvRecord{};
    current.line = line;
  };
  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started && field.empty()) {
      in_quotes = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\r') {
      // CRLF handled at '\n'.
    } else if (c == '\n') {
      ++line;
      end_record();
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (in_quotes) Fail(ErrorCode::kParse, "unterminated quoted field starting on line " +
                                             std::to_string(current.line));
  if (!field.empty() || !current.fields.empty()) end_record();
  return records;
}

bool ParseBool(const std::string& raw, bool& out) {
  std::string s = utf8::Trim(raw);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "true" || s == "1" || s == "yes") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no") {
    out = false;
    return true;
  }
  return false;
}

bool ParseInt(const std::string& raw, int& out) {
  const std::string s = utf8::Trim(raw);
  if (s.empty()) return false;
  std::size_t used = 0;
  try {
    const long v = std::stol(s, &used);
    if (used != s.size() || v < -1000000 || v > 1000000) return false;
    out = static_cast<int>(v);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

bool IsBlank(const std::optional<std::string>& s) {
  return !s || utf8::Trim(*s).empty();
}

double PopulationStd(const std::vector<double>& xs, double mean) {
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

}  // namespace

std::string_view AttributeName(Attribute a) {
  switch (a) {
    case Attribute::kCoherence: return "coherence";
    case Attribute::kCreativity: return "creativity";
    case Attribute::kAffinity: return "affinity";
    case Attribute::kRecognition: return "recognition";
  }
  return "unknown";
}

Attribute ParseAttribute(std::string_view name) {
  for (Attribute a : kAllAttributes) {
    if (AttributeName(a) == name) return a;
  }
  Fail(ErrorCode::kInvalidArgument, "unknown attribute '" + std::string(name) + "'");
}

void AnnotationSet::Add(Response r) {
  Require(r.level_count >= 2, "level_count must be >= 2");
  Require(r.raw_value >= 0 && r.raw_value < r.level_count,
          "raw_value must be in [0, level_count)");
  Require(!r.worker_id.empty() && !r.sample_id.empty(), "worker_id and sample_id are required");
  samples.insert(r.sample_id);
  responses.push_back(std::move(r));
}

AnnotationSet ParseResponsesCsv(std::string_view content) {
  static const std::vector<std::string> kHeader = {
      "worker_id", "sample_id", "attribute", "raw_value", "level_count", "summary",
      "literacy_pass"};
  const auto records = ParseCsv(content);
  if (records.empty()) Fail(ErrorCode::kParse, "responses CSV is empty");
  std::vector<std::string> header;
  for (const auto& f : records[0].fields) header.push_back(utf8::Trim(f));
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) header[0].erase(0, 3);
  if (header != kHeader) {
    Fail(ErrorCode::kParse,
         "responses CSV header must be "
         "'worker_id,sample_id,attribute,raw_value,level_count,summary,literacy_pass'");
  }
  AnnotationSet set;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string where = "line " + std::to_string(rec.line) + ": ";
    if (rec.fields.size() != kHeader.size()) {
      Fail(ErrorCode::kParse, where + "expected 7 fields, got " +
                                  std::to_string(rec.fields.size()));
    }
    Response resp;
    resp.worker_id = utf8::Trim(rec.fields[0]);
    resp.sample_id = utf8::Trim(rec.fields[1]);
    try {
      resp.attribute = ParseAttribute(utf8::Trim(rec.fields[2]));
    } catch (const Error& e) {
      Fail(ErrorCode::kParse, where + e.what());
    }
    if (!ParseInt(rec.fields[3], resp.raw_value)) {
      Fail(ErrorCode::kParse, where + "raw_value is not an integer");
    }
    if (!ParseInt(rec.fields[4], resp.level_count)) {
      Fail(ErrorCode::kParse, where + "level_count is not an integer");
    }
    if (!rec.fields[5].empty()) resp.summary_text = rec.fields[5];
    if (!ParseBool(rec.fields[6], resp.literacy_pass)) {
      Fail(ErrorCode::kParse, where + "literacy_pass must be true/false");
    }
    try {
      set.Add(std::move(resp));
    } catch (const Error& e) {
      Fail(ErrorCode::kParse, where + e.what());
    }
  }
  return set;
}

AnnotationSet LoadResponses(const std::filesystem::path& path) {
  return ParseResponsesCsv(ReadFile(path));
}

AnnotationSet FilterResponses(const AnnotationSet& set) {
  using Key = std::pair<std::string, std::string>;
  std::map<Key, bool> has_summary;
  std::map<Key, bool> literate;
  for (const auto& r : set.responses) {
    const Key key{r.worker_id, r.sample_id};
    has_summary.try_emplace(key, false);
    literate.try_emplace(key, true);
    if (!IsBlank(r.summary_text)) has_summary[key] = true;
    if (!r.literacy_pass) literate[key] = false;
  }
  AnnotationSet out;
  out.samples = set.samples;
  out.expected_raters_per_sample = set.expected_raters_per_sample;
  for (const auto& r : set.responses) {
    const Key key{r.worker_id, r.sample_id};
    if (has_summary[key] && literate[key]) out.responses.push_back(r);
  }
  return out;
}

double NormalizeScore(int raw_value, int level_count) {
  Require(level_count >= 2, "level_count must be >= 2");
  Require(raw_value >= 0 && raw_value < level_count, "raw_value must be in [0, level_count)");
  return static_cast<double>(raw_value) / static_cast<double>(level_count - 1) * 10.0;
}

AgreementReport Aggregate(const AnnotationSet& filtered) {
  AgreementReport report;
  report.retained_count = filtered.responses.size();
  for (Attribute a : kAllAttributes) {
    std::map<std::string, std::vector<double>> by_sample;
    for (const auto& r : filtered.responses) {
      if (r.attribute == a) by_sample[r.sample_id].push_back(NormalizeScore(r.raw_value, r.level_count));
    }
    if (by_sample.empty()) continue;
    AttributeSummary summary;
    double mean_sum = 0.0;
    double std_sum = 0.0;
    for (const auto& [sample, scores] : by_sample) {
      double sum = 0.0;
      for (double s : scores) sum += s;
      const double mean = sum / static_cast<double>(scores.size());
      mean_sum += mean;
      ++summary.samples;
      if (scores.size() >= 2) {
        std_sum += PopulationStd(scores, mean);
        ++summary.samples_with_std;
      } else {
        report.warnings.push_back(std::string(AttributeName(a)) + ": sample '" + sample +
                                  "' has a single rater; excluded from mean_std");
      }
    }
    summary.mean = mean_sum / static_cast<double>(summary.samples);
    summary.mean_std = summary.samples_with_std == 0
                           ? 0.0
                           : std_sum / static_cast<double>(summary.samples_with_std);
    report.per_attribute[a] = summary;
  }
  return report;
}

std::optional<double> KrippendorffOrdinalAlpha(const AnnotationSet& set, Attribute attribute) {
  std::map<std::string, std::vector<int>> units;
  for (const auto& r : set.responses) {
    if (r.attribute == attribute) units[r.sample_id].push_back(r.raw_value);
  }
  std::map<int, std::size_t> value_index;
  for (const auto& [unit, values] : units) {
    if (values.size() < 2) continue;
    for (int v : values) value_index.emplace(v, 0);
  }
  if (value_index.empty()) return std::nullopt;
  std::size_t next = 0;
  for (auto& [v, idx] : value_index) idx = next++;
  const std::size_t m = value_index.size();

  // Coincidence matrix: each ordered pair of values within a unit adds
  // 1 / (m_u - 1).
  std::vector<std::vector<double>> o(m, std::vector<double>(m, 0.0));
  for (const auto& [unit, values] : units) {
    const std::size_t mu = values.size();
    if (mu < 2) continue;
    std::vector<std::size_t> counts(m, 0);
    for (int v : values) ++counts[value_index[v]];
    const double w = 1.0 / static_cast<double>(mu - 1);
    for (std::size_t c = 0; c < m; ++c) {
      if (counts[c] == 0) continue;
      for (std::size_t k = 0; k < m; ++k) {
        if (counts[k] == 0) continue;
        const double pairs = c == k ? static_cast<double>(counts[c] * (counts[c] - 1))
                                    : static_cast<double>(counts[c] * counts[k]);
        o[c][k] += pairs * w;
      }
    }
  }
  std::vector<double> marginal(m, 0.0);
  double n = 0.0;
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t k = 0; k < m; ++k) marginal[c] += o[c][k];
    n += marginal[c];
  }
  if (n < 2.0) return std::nullopt;

  // Ordinal metric over ranks of observed values:
  // (sum_{g=c..k} n_g - (n_c + n_k) / 2)^2.
  std::vector<double> prefix(m + 1, 0.0);
  for (std::size_t g = 0; g < m; ++g) prefix[g + 1] = prefix[g] + marginal[g];
  auto delta2 = [&](std::size_t c, std::size_t k) {
    if (c > k) std::swap(c, k);
    const double d = prefix[k + 1] - prefix[c] - (marginal[c] + marginal[k]) / 2.0;
    return d * d;
  };
  double observed = 0.0;
  double expected = 0.0;
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t k = 0; k < m; ++k) {
      const double d = delta2(c, k);
      observed += o[c][k] * d;
      expected += marginal[c] * marginal[k] * d;
    }
  }
  if (expected <= 0.0) return std::nullopt;
  return 1.0 - (n - 1.0) * observed / expected;
}

AgreementReport AnalyzeAnnotations(const AnnotationSet& set, bool with_alpha) {
  const AnnotationSet filtered = FilterResponses(set);
  AgreementReport report = Aggregate(filtered);
  report.filtered_count = set.responses.size() - filtered.responses.size();
  report.retained_count = filtered.responses.size();
  if (with_alpha) {
    for (auto& [attribute, summary] : report.per_attribute) {
      summary.alpha = KrippendorffOrdinalAlpha(filtered, attribute);
      if (!summary.alpha) {
        report.warnings.push_back(std::string(AttributeName(attribute)) +
                                  ": alpha undefined (too few pairable values or no variation)");
      }
    }
  }
  return report;
}

}  // namespace lyriceval

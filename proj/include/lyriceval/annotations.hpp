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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lyriceval {

enum class Attribute { kCoherence, kCreativity, kAffinity, kRecognition };

inline constexpr Attribute kAllAttributes[] = {Attribute::kCoherence, Attribute::kCreativity,
                                               Attribute::kAffinity, Attribute::kRecognition};

std::string_view AttributeName(Attribute a);
Attribute ParseAttribute(std::string_view name);

struct Response {
  std::string worker_id;
  std::string sample_id;
  Attribute attribute = Attribute::kCoherence;
  int raw_value = 0;    // 0-based ordinal level
  int level_count = 2;  // L
  std::optional<std::string> summary_text;
  bool literacy_pass = true;

  bool operator==(const Response&) const = default;
};

struct AnnotationSet {
  std::vector<Response> responses;
  std::set<std::string> samples;
  std::size_t expected_raters_per_sample = 3;

  // Adds a response, registering its sample. Throws on an invalid level.
  void Add(Response r);
  bool operator==(const AnnotationSet&) const = default;
};

// RFC 4180 CSV with header
//   worker_id,sample_id,attribute,raw_value,level_count,summary,literacy_pass
// literacy_pass accepts true/false, 1/0, yes/no. An empty summary field is
// recorded as absent.
AnnotationSet ParseResponsesCsv(std::string_view content);
AnnotationSet LoadResponses(const std::filesystem::path& path);

// Drops every (worker, sample) group where the worker failed the literacy
// check or left no non-blank summary on any of the group's rows.
AnnotationSet FilterResponses(const AnnotationSet& set);

// raw_value / (L - 1) * 10.
double NormalizeScore(int raw_value, int level_count);

struct AttributeSummary {
  double mean = 0.0;      // mean of per-sample means, 0-10
  double mean_std = 0.0;  // mean of per-sample population std, 0-10
  std::size_t samples = 0;
  std::size_t samples_with_std = 0;
  std::optional<double> alpha;  // unset when undefined or not requested
};

struct AgreementReport {
  std::map<Attribute, AttributeSummary> per_attribute;
  std::size_t filtered_count = 0;
  std::size_t retained_count = 0;
  std::vector<std::string> warnings;
};

// Means and spreads over an already-filtered set. Samples with a single
// rater contribute to the mean only and are listed in warnings.
AgreementReport Aggregate(const AnnotationSet& filtered);

// Krippendorff's alpha with the ordinal metric over raw level indices for one
// attribute. Units are sample ids; only units with at least two values are
// pairable. Returns nullopt when fewer than two pairable values exist or the
// expected disagreement is zero.
std::optional<double> KrippendorffOrdinalAlpha(const AnnotationSet& set, Attribute attribute);

// Filter, aggregate, and (optionally) alpha per attribute.
AgreementReport AnalyzeAnnotations(const AnnotationSet& set, bool with_alpha);

}  // namespace lyriceval

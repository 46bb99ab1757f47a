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
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lyriceval/corpus.hpp"

namespace lyriceval {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class FeatureOrigin { kHashedNgram, kExternal };

struct FeatureSet {
  std::vector<std::string> ids;
  RowMatrix vectors;  // ids.size() rows x dim columns
  FeatureOrigin origin = FeatureOrigin::kExternal;

  std::size_t rows() const { return static_cast<std::size_t>(vectors.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(vectors.cols()); }
};

struct HashedNgramConfig {
  std::size_t min_n = 1;
  std::size_t max_n = 3;
  std::size_t dim = 1024;
  std::size_t max_length = 128;  // scalar values kept from the start of each text
  std::uint64_t seed = 0;
};

// Character n-gram term frequencies hashed into cfg.dim buckets with
// SeededBucket (see hash.hpp), then L2-normalized. An n-gram's key is the
// UTF-8 bytes of its scalars. Empty text yields the zero vector.
std::vector<double> HashedNgramVector(std::string_view text, const HashedNgramConfig& cfg);

FeatureSet HashedNgramFeatures(const Corpus& corpus, const HashedNgramConfig& cfg);

// CSV with header "id,f0,...,f{d-1}" or JSONL of {"id":..., "vector":[...]}.
// JSONL is selected by a .jsonl extension or a first non-blank character of
// '{'. Row numbers in errors are 1-based data rows.
FeatureSet LoadFeatures(const std::filesystem::path& path);
FeatureSet ParseFeaturesCsv(std::string_view content);
FeatureSet ParseFeaturesJsonl(std::string_view content);

// Shortest round-trip decimal formatting, so save/load is lossless.
std::string SerializeFeaturesCsv(const FeatureSet& features);
void SaveFeaturesCsv(const FeatureSet& features, const std::filesystem::path& path);

}  // namespace lyriceval

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
#include <vector>

#include "lyriceval/featurize.hpp"

namespace lyriceval {

struct KMeansConfig {
  std::size_t k = 2;
  std::uint64_t seed = 0;
  std::size_t max_iterations = 100;
  std::size_t restarts = 1;  // independent starts; the lowest inertia wins
};

struct KMeansResult {
  RowMatrix centroids;
  std::vector<std::size_t> assignment;
  std::size_t iterations = 0;
  bool converged = false;
  double inertia = 0.0;  // sum of squared distances to assigned centroids
};

// Index of the nearest centroid for each point; ties go to the lower index.
std::vector<std::size_t> AssignNearest(const RowMatrix& points, const RowMatrix& centroids);

// Lloyd iterations from a seeded k-means++ start. Stops when assignments are
// unchanged or after max_iterations. An empty cluster takes the point
// farthest from its centroid in the largest cluster (lowest index on ties);
// when that point sits on its centroid the cluster stays empty.
// Start r uses seed + r; the first start with the lowest inertia is kept.
// Requires 1 <= k <= rows and restarts >= 1.
KMeansResult KMeans(const RowMatrix& points, const KMeansConfig& cfg);

}  // namespace lyriceval

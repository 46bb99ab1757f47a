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

#include <set>

#include "doctest.h"
#include "lyriceval/error.hpp"
#include "lyriceval/hash.hpp"
#include "lyriceval/kmeans.hpp"

using namespace lyriceval;

namespace {

RowMatrix Blobs(std::size_t per_blob, std::uint64_t seed) {
  Rng rng(seed);
  const double centers[3][2] = {{0, 0}, {10, 0}, {0, 10}};
  RowMatrix m(static_cast<Eigen::Index>(3 * per_blob), 2);
  for (std::size_t b = 0; b < 3; ++b) {
    for (std::size_t i = 0; i < per_blob; ++i) {
      const auto r = static_cast<Eigen::Index>(b * per_blob + i);
      m(r, 0) = centers[b][0] + rng.Uniform() - 0.5;
      m(r, 1) = centers[b][1] + rng.Uniform() - 0.5;
    }
  }
  return m;
}

}  // namespace

TEST_CASE("assign nearest breaks ties toward the lower index") {
  RowMatrix points(1, 1);
  points << 0.5;
  RowMatrix centroids(2, 1);
  centroids << 0.0, 1.0;
  CHECK(AssignNearest(points, centroids) == std::vector<std::size_t>{0});
}

TEST_CASE("k-means separates well-separated blobs") {
  const RowMatrix m = Blobs(20, 1);
  const KMeansResult r = KMeans(m, {3, 0, 100, 1});
  CHECK(r.converged);
  for (std::size_t b = 0; b < 3; ++b) {
    std::set<std::size_t> labels;
    for (std::size_t i = 0; i < 20; ++i) labels.insert(r.assignment[b * 20 + i]);
    CHECK(labels.size() == 1);
  }
  std::set<std::size_t> all(r.assignment.begin(), r.assignment.end());
  CHECK(all.size() == 3);
}

TEST_CASE("k-means is deterministic for a seed") {
  const RowMatrix m = Blobs(30, 2);
  const KMeansResult a = KMeans(m, {5, 7, 100, 3});
  const KMeansResult b = KMeans(m, {5, 7, 100, 3});
  CHECK(a.assignment == b.assignment);
  CHECK(a.centroids == b.centroids);
  CHECK(a.inertia == b.inertia);
}

TEST_CASE("restarts never increase inertia") {
  const RowMatrix m = Blobs(15, 3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double one = KMeans(m, {4, seed, 100, 1}).inertia;
    const double five = KMeans(m, {4, seed, 100, 5}).inertia;
    CHECK(five <= one);
  }
}

TEST_CASE("k equal to the number of points gives one point per cluster") {
  RowMatrix m(4, 1);
  m << 0, 1, 2, 3;
  const KMeansResult r = KMeans(m, {4, 0, 100, 1});
  std::set<std::size_t> labels(r.assignment.begin(), r.assignment.end());
  CHECK(labels.size() == 4);
  CHECK(r.inertia == 0.0);
}

TEST_CASE("k-means argument checks") {
  RowMatrix m(2, 1);
  m << 0, 1;
  CHECK_THROWS_AS(KMeans(m, {3, 0, 100, 1}), Error);
  CHECK_THROWS_AS(KMeans(m, {0, 0, 100, 1}), Error);
  CHECK_THROWS_AS(KMeans(m, {1, 0, 100, 0}), Error);
}

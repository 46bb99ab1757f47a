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

#include "lyriceval/kmeans.hpp"

#include <limits>

#include "lyriceval/error.hpp"
#include "lyriceval/hash.hpp"
#include "lyriceval/parallel.hpp"

namespace lyriceval {

namespace {

double SquaredDistance(const RowMatrix& a, Eigen::Index i, const RowMatrix& b, Eigen::Index j) {
  return (a.row(i) - b.row(j)).squaredNorm();
}

RowMatrix PlusPlusInit(const RowMatrix& points, std::size_t k, Rng& rng) {
  const auto n = points.rows();
  RowMatrix centroids(static_cast<Eigen::Index>(k), points.cols());
  std::vector<double> nearest(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  auto first = static_cast<Eigen::Index>(rng.Below(static_cast<std::uint64_t>(n)));
  centroids.row(0) = points.row(first);
  for (std::size_t c = 1; c < k; ++c) {
    const auto prev = static_cast<Eigen::Index>(c - 1);
    ParallelFor(static_cast<std::size_t>(n), [&](std::size_t i) {
      const double d = SquaredDistance(points, static_cast<Eigen::Index>(i), centroids, prev);
      if (d < nearest[i]) nearest[i] = d;
    });
    double total = 0.0;
    for (double d : nearest) total += d;
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      const double target = rng.Uniform() * total;
      double acc = 0.0;
      chosen = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += nearest[static_cast<std::size_t>(i)];
        if (target < acc) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0) {
        // Rounding left target at the total; take the last positive weight.
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (nearest[static_cast<std::size_t>(i)] > 0.0) {
            chosen = i;
            break;
          }
        }
      }
    } else {
      // Every point coincides with a centroid already.
      chosen = static_cast<Eigen::Index>(rng.Below(static_cast<std::uint64_t>(n)));
    }
    centroids.row(static_cast<Eigen::Index>(c)) = points.row(chosen);
  }
  return centroids;
}

}  // namespace

std::vector<std::size_t> AssignNearest(const RowMatrix& points, const RowMatrix& centroids) {
  Require(points.cols() == centroids.cols(), "point and centroid dimensions differ");
  const Eigen::VectorXd point_norms = points.rowwise().squaredNorm();
  const Eigen::VectorXd centroid_norms = centroids.rowwise().squaredNorm();
  const Eigen::MatrixXd cross = points * centroids.transpose();
  std::vector<std::size_t> out(static_cast<std::size_t>(points.rows()));
  ParallelFor(out.size(), [&](std::size_t i) {
    const auto row = static_cast<Eigen::Index>(i);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (Eigen::Index j = 0; j < centroids.rows(); ++j) {
      const double d = point_norms(row) + centroid_norms(j) - 2.0 * cross(row, j);
      if (d < best) {
        best = d;
        best_index = static_cast<std::size_t>(j);
      }
    }
    out[i] = best_index;
  });
  return out;
}

namespace {

KMeansResult SingleRun(const RowMatrix& points, const KMeansConfig& cfg, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(points.rows());
  Rng rng(seed);

  KMeansResult result;
  result.centroids = PlusPlusInit(points, cfg.k, rng);
  result.assignment = AssignNearest(points, result.centroids);

  for (std::size_t iter = 0; iter < cfg.max_iterations; ++iter) {
    result.iterations = iter + 1;
    RowMatrix sums = RowMatrix::Zero(result.centroids.rows(), points.cols());
    std::vector<std::size_t> sizes(cfg.k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums.row(static_cast<Eigen::Index>(result.assignment[i])) +=
          points.row(static_cast<Eigen::Index>(i));
      ++sizes[result.assignment[i]];
    }
    for (std::size_t c = 0; c < cfg.k; ++c) {
      if (sizes[c] > 0) {
        result.centroids.row(static_cast<Eigen::Index>(c)) =
            sums.row(static_cast<Eigen::Index>(c)) / static_cast<double>(sizes[c]);
      }
    }
    std::vector<std::size_t> assignment = result.assignment;
    for (std::size_t c = 0; c < cfg.k; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t largest = 0;
      for (std::size_t j = 1; j < cfg.k; ++j) {
        if (sizes[j] > sizes[largest]) largest = j;
      }
      double far = 0.0;
      std::size_t far_index = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (assignment[i] != largest) continue;
        const double d = SquaredDistance(points, static_cast<Eigen::Index>(i), result.centroids,
                                         static_cast<Eigen::Index>(largest));
        if (d > far) {
          far = d;
          far_index = i;
        }
      }
      if (far_index == n) continue;
      result.centroids.row(static_cast<Eigen::Index>(c)) =
          points.row(static_cast<Eigen::Index>(far_index));
      assignment[far_index] = c;
      --sizes[largest];
      sizes[c] = 1;
    }
    std::vector<std::size_t> next = AssignNearest(points, result.centroids);
    if (next == result.assignment) {
      result.converged = true;
      break;
    }
    result.assignment = std::move(next);
  }
  for (std::size_t i = 0; i < n; ++i) {
    result.inertia += SquaredDistance(points, static_cast<Eigen::Index>(i), result.centroids,
                                      static_cast<Eigen::Index>(result.assignment[i]));
  }
  return result;
}

}  // namespace

KMeansResult KMeans(const RowMatrix& points, const KMeansConfig& cfg) {
  const auto n = static_cast<std::size_t>(points.rows());
  Require(n > 0, "k-means needs at least one point");
  Require(cfg.k >= 1 && cfg.k <= n, "k-means requires 1 <= k <= number of points");
  Require(cfg.restarts >= 1, "k-means needs at least one start");
  KMeansResult best = SingleRun(points, cfg, cfg.seed);
  for (std::size_t r = 1; r < cfg.restarts; ++r) {
    KMeansResult candidate = SingleRun(points, cfg, cfg.seed + r);
    if (candidate.inertia < best.inertia) best = std::move(candidate);
  }
  return best;
}

}  // namespace lyriceval

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

#include "lyriceval/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lyriceval/error.hpp"
#include "lyriceval/hash.hpp"
#include "lyriceval/kmeans.hpp"

namespace lyriceval {

namespace {

std::vector<Eigen::Index> Subsample(std::size_t rows, std::size_t cap, std::uint64_t seed) {
  std::vector<Eigen::Index> idx(rows);
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  if (cap == 0 || rows <= cap) return idx;
  Rng rng(seed);
  for (std::size_t i = 0; i < cap; ++i) {
    const std::size_t j = i + rng.Below(rows - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  return idx;
}

void CheckProbability(std::span<const double> v, const char* name) {
  double sum = 0.0;
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      Fail(ErrorCode::kInvalidArgument, std::string(name) + " has a negative or non-finite entry");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    Fail(ErrorCode::kInvalidArgument, std::string(name) + " does not sum to 1");
  }
}

std::vector<double> Smooth(const std::vector<std::size_t>& counts, std::size_t total,
                           double epsilon) {
  std::vector<double> h(counts.size());
  double sum = 0.0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    h[b] = static_cast<double>(counts[b]) / static_cast<double>(total) + epsilon;
    sum += h[b];
  }
  for (double& x : h) x /= sum;
  return h;
}

}  // namespace

void MauveConfig::Validate() const {
  Require(k == 0 || k >= 2, "cluster count must be >= 2");
  Require(c > 0.0 && std::isfinite(c), "scaling constant c must be > 0");
  Require(epsilon > 0.0 && std::isfinite(epsilon), "smoothing epsilon must be > 0");
  Require(grid_size >= 3, "lambda grid size must be >= 3");
  Require(max_iterations >= 1, "k-means iterations must be >= 1");
  Require(kmeans_restarts >= 1, "k-means restarts must be >= 1");
}

std::size_t DefaultClusterCount(std::size_t p_rows, std::size_t q_rows) {
  return std::max<std::size_t>(2, std::min<std::size_t>(500, (p_rows + q_rows) / 10));
}

QuantizedPair Quantize(const FeatureSet& p, const FeatureSet& q, const MauveConfig& cfg) {
  cfg.Validate();
  Require(p.rows() > 0 && q.rows() > 0, "both feature sets must be non-empty");
  if (p.dim() != q.dim()) {
    Fail(ErrorCode::kInvalidArgument, "feature dimension mismatch: " + std::to_string(p.dim()) +
                                          " vs " + std::to_string(q.dim()));
  }
  QuantizedPair pair;
  pair.assignment_seed = cfg.seed;

  // Both sides draw from the same seed, so which set is called P never
  // affects which rows survive.
  const auto p_idx = Subsample(p.rows(), cfg.max_samples_per_side, cfg.seed);
  const auto q_idx = Subsample(q.rows(), cfg.max_samples_per_side, cfg.seed);
  if (p_idx.size() < p.rows() || q_idx.size() < q.rows()) {
    pair.warnings.push_back("subsampled to at most " + std::to_string(cfg.max_samples_per_side) +
                            " rows per side");
  }

  struct Row {
    const FeatureSet* set;
    Eigen::Index index;
    bool from_p;
  };
  std::vector<Row> rows;
  rows.reserve(p_idx.size() + q_idx.size());
  for (auto i : p_idx) rows.push_back({&p, i, true});
  for (auto i : q_idx) rows.push_back({&q, i, false});
  const auto dim = static_cast<Eigen::Index>(p.dim());
  std::stable_sort(rows.begin(), rows.end(), [dim](const Row& a, const Row& b) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double va = a.set->vectors(a.index, c);
      const double vb = b.set->vectors(b.index, c);
      if (va != vb) return va < vb;
    }
    return false;
  });

  RowMatrix points(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    points.row(static_cast<Eigen::Index>(r)) = rows[r].set->vectors.row(rows[r].index);
  }

  std::size_t k = cfg.k == 0 ? DefaultClusterCount(p_idx.size(), q_idx.size()) : cfg.k;
  if (k > rows.size()) {
    pair.warnings.push_back("k=" + std::to_string(k) + " exceeds " +
                            std::to_string(rows.size()) + " rows; clamped to " +
                            std::to_string(rows.size()));
    k = rows.size();
  }
  pair.k = k;

  const KMeansResult km = KMeans(points, {k, cfg.seed, cfg.max_iterations, cfg.kmeans_restarts});
  std::vector<std::size_t> count_p(k, 0), count_q(k, 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    (rows[r].from_p ? count_p : count_q)[km.assignment[r]]++;
  }
  pair.hist_p = Smooth(count_p, p_idx.size(), cfg.epsilon);
  pair.hist_q = Smooth(count_q, q_idx.size(), cfg.epsilon);
  return pair;
}

double KlDivergence(std::span<const double> p, std::span<const double> q) {
  Require(p.size() == q.size(), "KL inputs differ in length");
  Require(!p.empty(), "KL inputs are empty");
  CheckProbability(p, "p");
  CheckProbability(q, "q");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) {
      Fail(ErrorCode::kInvalidArgument,
           "KL is infinite: q[" + std::to_string(i) + "] = 0 where p > 0");
    }
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return std::max(0.0, kl);
}

DivergenceCurve DivergenceFrontier(const QuantizedPair& pair, const MauveConfig& cfg) {
  cfg.Validate();
  Require(pair.hist_p.size() == pair.hist_q.size() && !pair.hist_p.empty(),
          "histograms must be non-empty and equal length");
  DivergenceCurve curve;
  curve.c = cfg.c;
  curve.grid_size = cfg.grid_size;
  const std::size_t denom = cfg.grid_size + 1;
  const double d = static_cast<double>(denom);
  std::vector<double> mix(pair.hist_p.size());
  for (std::size_t i = 0; i <= denom; ++i) {
    const double wp = static_cast<double>(i);
    const double wq = static_cast<double>(denom - i);
    for (std::size_t b = 0; b < mix.size(); ++b) {
      mix[b] = (wp * pair.hist_p[b] + wq * pair.hist_q[b]) / d;
    }
    FrontierPoint pt;
    pt.lambda = wp / d;
    pt.x = std::exp(-cfg.c * KlDivergence(pair.hist_q, mix));
    pt.y = std::exp(-cfg.c * KlDivergence(pair.hist_p, mix));
    curve.points.push_back(pt);
  }
  std::stable_sort(curve.points.begin(), curve.points.end(),
                   [](const FrontierPoint& a, const FrontierPoint& b) {
                     if (a.x != b.x) return a.x < b.x;
                     return a.y > b.y;
                   });
  return curve;
}

double AreaUnderFrontier(const DivergenceCurve& curve) {
  Require(!curve.points.empty(), "empty divergence curve");
  std::vector<std::pair<double, double>> poly;
  poly.reserve(curve.points.size() + 2);
  poly.emplace_back(0.0, curve.points.front().y);
  for (const auto& pt : curve.points) poly.emplace_back(pt.x, pt.y);
  poly.emplace_back(curve.points.back().x, 0.0);
  double area = 0.0;
  for (std::size_t i = 1; i < poly.size(); ++i) {
    area += (poly[i].first - poly[i - 1].first) * (poly[i].second + poly[i - 1].second) * 0.5;
  }
  return area;
}

MauveResult ComputeMauve(const FeatureSet& p, const FeatureSet& q, const MauveConfig& cfg) {
  MauveResult result;
  result.config = cfg;
  result.pair = Quantize(p, q, cfg);
  result.curve = DivergenceFrontier(result.pair, cfg);
  result.score = AreaUnderFrontier(result.curve);
  result.p_rows_used = std::min(p.rows(), cfg.max_samples_per_side == 0
                                              ? p.rows()
                                              : cfg.max_samples_per_side);
  result.q_rows_used = std::min(q.rows(), cfg.max_samples_per_side == 0
                                              ? q.rows()
                                              : cfg.max_samples_per_side);
  return result;
}

double Entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double x : probs) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

}  // namespace lyriceval

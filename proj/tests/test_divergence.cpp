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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "lyriceval/divergence.hpp"
#include "lyriceval/error.hpp"
#include "lyriceval/hash.hpp"
#include "oracles.hpp"

using namespace lyriceval;

namespace {

double Normal(Rng& rng) {
  // Box-Muller; the test only needs a fixed, reproducible stream.
  const double u1 = 1.0 - rng.Uniform();
  const double u2 = rng.Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

FeatureSet Cloud(std::size_t n, std::size_t dim, double shift, std::uint64_t seed,
                 const std::string& prefix) {
  Rng rng(seed);
  FeatureSet f;
  f.vectors = RowMatrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    f.ids.push_back(prefix + std::to_string(i));
    for (std::size_t d = 0; d < dim; ++d) {
      f.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d)) =
          Normal(rng) + (d == 0 ? shift : 0.0);
    }
  }
  return f;
}

FeatureSet Constant(std::size_t n, double value, const std::string& prefix) {
  FeatureSet f;
  f.vectors = RowMatrix::Constant(static_cast<Eigen::Index>(n), 2, value);
  for (std::size_t i = 0; i < n; ++i) f.ids.push_back(prefix + std::to_string(i));
  return f;
}

// Area under the analytic frontier of a two-histogram pair, integrated on a
// dense lambda grid with the same axis closures.
double DenseArea(const std::vector<double>& p, const std::vector<double>& q, double c) {
  std::vector<std::pair<double, double>> pts;
  const int steps = 200000;
  for (int i = 0; i <= steps; ++i) {
    const double lambda = static_cast<double>(i) / steps;
    std::vector<double> r(p.size());
    for (std::size_t b = 0; b < p.size(); ++b) r[b] = lambda * p[b] + (1 - lambda) * q[b];
    pts.emplace_back(std::exp(-c * oracle::Kl(q, r)), std::exp(-c * oracle::Kl(p, r)));
  }
  std::sort(pts.begin(), pts.end());
  double area = 0;
  double px = 0, py = pts.front().second;
  for (const auto& [x, y] : pts) {
    area += (x - px) * (y + py) / 2;
    px = x;
    py = y;
  }
  return area;
}

}  // namespace

TEST_CASE("kl divergence closed forms") {
  const std::vector<double> a = {1.0, 0.0}, half = {0.5, 0.5}, b = {0.75, 0.25};
  CHECK(std::abs(KlDivergence(a, half) - std::log(2.0)) <= 1e-12);
  CHECK(KlDivergence(half, half) == 0.0);
  CHECK(KlDivergence(half, b) == doctest::Approx(0.5 * std::log(2.0 / 3.0) + 0.5 * std::log(2.0)));
  CHECK_THROWS_AS(KlDivergence(half, a), Error);
  CHECK_THROWS_AS(KlDivergence(a, std::vector<double>{1.0}), Error);
  CHECK_THROWS_AS(KlDivergence(std::vector<double>{0.7, 0.7}, half), Error);
}

TEST_CASE("identical sets give identical histograms and score 1") {
  const FeatureSet x = Cloud(120, 4, 0.0, 1, "x");
  const MauveResult r = ComputeMauve(x, x, {});
  CHECK(r.pair.hist_p == r.pair.hist_q);
  CHECK(std::abs(r.score - 1.0) <= 1e-6);
  for (const auto& pt : r.curve.points) {
    CHECK(pt.x == doctest::Approx(1.0));
    CHECK(pt.y == doctest::Approx(1.0));
  }
}

TEST_CASE("two-point quantization puts the sets on opposite bins") {
  MauveConfig cfg;
  cfg.k = 2;
  const QuantizedPair pair = Quantize(Constant(10, 0.0, "p"), Constant(10, 50.0, "q"), cfg);
  REQUIRE(pair.k == 2);
  const std::size_t bp = pair.hist_p[0] > pair.hist_p[1] ? 0 : 1;
  CHECK(pair.hist_p[bp] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(pair.hist_q[1 - bp] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(pair.hist_p[1 - bp] > 0.0);
  CHECK(pair.hist_q[bp] > 0.0);
}

TEST_CASE("k larger than the row count is clamped with a warning") {
  MauveConfig cfg;
  cfg.k = 25;
  const QuantizedPair pair = Quantize(Cloud(10, 3, 0, 1, "p"), Cloud(10, 3, 1, 2, "q"), cfg);
  CHECK(pair.k == 20);
  REQUIRE(pair.warnings.size() == 1);
  CHECK(pair.warnings[0] == "k=25 exceeds 20 rows; clamped to 20");
}

TEST_CASE("histograms are smoothed and normalized") {
  const QuantizedPair pair = Quantize(Cloud(50, 3, 0, 1, "p"), Cloud(50, 3, 3, 2, "q"), {});
  double sp = 0, sq = 0;
  for (std::size_t i = 0; i < pair.k; ++i) {
    CHECK(pair.hist_p[i] > 0.0);
    CHECK(pair.hist_q[i] > 0.0);
    sp += pair.hist_p[i];
    sq += pair.hist_q[i];
  }
  CHECK(std::abs(sp - 1.0) <= 1e-9);
  CHECK(std::abs(sq - 1.0) <= 1e-9);
}

TEST_CASE("dimension mismatch is an error") {
  CHECK_THROWS_AS(Quantize(Cloud(5, 3, 0, 1, "p"), Cloud(5, 4, 0, 1, "q"), {}), Error);
}

TEST_CASE("frontier is monotone in lambda and swaps under p/q exchange") {
  const QuantizedPair pair = Quantize(Cloud(80, 3, 0, 1, "p"), Cloud(80, 3, 1.5, 2, "q"), {});
  const MauveConfig cfg;
  const DivergenceCurve curve = DivergenceFrontier(pair, cfg);
  CHECK(curve.points.size() == cfg.grid_size + 2);
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    CHECK(curve.points[i].x >= curve.points[i - 1].x - 1e-9);
    CHECK(curve.points[i].y <= curve.points[i - 1].y + 1e-9);
    CHECK(curve.points[i].lambda <= curve.points[i - 1].lambda);
  }
  for (const auto& pt : curve.points) {
    CHECK(pt.x > 0.0);
    CHECK(pt.x <= 1.0);
    CHECK(pt.y > 0.0);
    CHECK(pt.y <= 1.0);
  }
  QuantizedPair swapped = pair;
  std::swap(swapped.hist_p, swapped.hist_q);
  const DivergenceCurve other = DivergenceFrontier(swapped, cfg);
  const std::size_t n = curve.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(other.points[n - 1 - i].x == curve.points[i].y);
    CHECK(other.points[n - 1 - i].y == curve.points[i].x);
  }
}

TEST_CASE("equal histograms give the all-ones frontier") {
  QuantizedPair pair;
  pair.hist_p = pair.hist_q = {0.25, 0.25, 0.5};
  pair.k = 3;
  for (const auto& pt : DivergenceFrontier(pair, {}).points) {
    CHECK(pt.x == 1.0);
    CHECK(pt.y == 1.0);
  }
}

TEST_CASE("well separated clouds score low; AUC tracks the dense analytic frontier") {
  const FeatureSet p = Cloud(200, 2, 0, 1, "p");
  FeatureSet q = Cloud(200, 2, 0, 2, "q");
  q.vectors.array() += 10.0;
  const MauveResult r = ComputeMauve(p, q, {});
  CHECK(r.score < 0.1);
  CHECK(r.score > 0.0);

  QuantizedPair two;
  two.hist_p = {0.8, 0.2};
  two.hist_q = {0.3, 0.7};
  two.k = 2;
  const MauveConfig cfg;
  const double area = AreaUnderFrontier(DivergenceFrontier(two, cfg));
  CHECK(std::abs(area - DenseArea(two.hist_p, two.hist_q, cfg.c)) < 2e-3);
}

TEST_CASE("score is symmetric, bounded, and deterministic") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const FeatureSet p = Cloud(90, 3, 0, seed, "p");
    const FeatureSet q = Cloud(70, 3, 1.0, seed + 100, "q");
    MauveConfig cfg;
    cfg.seed = seed;
    const double a = ComputeMauve(p, q, cfg).score;
    const double b = ComputeMauve(q, p, cfg).score;
    CHECK(std::abs(a - b) <= 1e-9);
    CHECK(a > 0.0);
    CHECK(a <= 1.0);
    CHECK(ComputeMauve(p, q, cfg).score == a);
  }
}

TEST_CASE("subsampling caps rows per side") {
  MauveConfig cfg;
  cfg.max_samples_per_side = 40;
  const MauveResult r = ComputeMauve(Cloud(100, 2, 0, 1, "p"), Cloud(60, 2, 0, 2, "q"), cfg);
  CHECK(r.p_rows_used == 40);
  CHECK(r.q_rows_used == 40);
  CHECK_FALSE(r.pair.warnings.empty());
}

TEST_CASE("config validation") {
  MauveConfig cfg;
  cfg.k = 1;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg = {};
  cfg.c = 0;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg = {};
  cfg.grid_size = 2;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  CHECK(DefaultClusterCount(10, 5) == 2);
  CHECK(DefaultClusterCount(1000, 1000) == 200);
  CHECK(DefaultClusterCount(5000, 5000) == 500);
}

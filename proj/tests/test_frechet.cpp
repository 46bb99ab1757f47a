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

#include "doctest.h"
#include "lyriceval/error.hpp"
#include "lyriceval/frechet.hpp"
#include "lyriceval/hash.hpp"
#include "oracles.hpp"

using namespace lyriceval;

namespace {

RowMatrix Random(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  RowMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.Uniform() * 4.0 - 2.0;
  return m;
}

GaussianStats Diagonal(const std::vector<double>& mu, const std::vector<double>& var) {
  GaussianStats g;
  g.mean = Eigen::Map<const Eigen::VectorXd>(mu.data(), static_cast<Eigen::Index>(mu.size()));
  g.cov = Eigen::Map<const Eigen::VectorXd>(var.data(), static_cast<Eigen::Index>(var.size()))
              .asDiagonal();
  g.n = 10;
  return g;
}

}  // namespace

TEST_CASE("gaussian estimate of two rows") {
  RowMatrix rows(2, 2);
  rows << 0, 0, 2, 2;
  const GaussianStats g = EstimateGaussian(rows);
  CHECK(g.mean(0) == 1.0);
  CHECK(g.mean(1) == 1.0);
  CHECK(g.cov(0, 0) == doctest::Approx(2.0));
  CHECK(g.cov(0, 1) == doctest::Approx(2.0));
  CHECK(g.cov(1, 0) == doctest::Approx(2.0));
  CHECK(g.cov(1, 1) == doctest::Approx(2.0));
  CHECK(g.n == 2);
}

TEST_CASE("a single row is an error") {
  RowMatrix rows(1, 3);
  rows << 1, 2, 3;
  CHECK_THROWS_AS(EstimateGaussian(rows), Error);
}

TEST_CASE("psd square root") {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
  CHECK((MatrixSqrtPsd(id) - id).norm() < 1e-12);
  Eigen::MatrixXd d(2, 2);
  d << 4, 0, 0, 9;
  const Eigen::MatrixXd s = MatrixSqrtPsd(d);
  CHECK(s(0, 0) == doctest::Approx(2.0));
  CHECK(s(1, 1) == doctest::Approx(3.0));
  CHECK(std::abs(s(0, 1)) < 1e-12);
  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 1, 2;
  const Eigen::MatrixXd r = MatrixSqrtPsd(m);
  CHECK((r * r - m).norm() < 1e-10);
  CHECK((r - r.transpose()).norm() < 1e-12);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0, 1;
  CHECK_THROWS_AS(MatrixSqrtPsd(asym), Error);
}

TEST_CASE("one-dimensional closed form") {
  // (0 - 3)^2 + 1 + 4 - 2 * sqrt(4) = 10
  CHECK(FrechetDistance(Diagonal({0}, {1}), Diagonal({3}, {4})) == doctest::Approx(10.0));
}

TEST_CASE("identical statistics give zero") {
  const GaussianStats g = EstimateGaussian(Random(50, 5, 1));
  CHECK(std::abs(FrechetDistance(g, g)) < 1e-8);
}

TEST_CASE("diagonal covariances match the per-coordinate oracle") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 1 + rng.Below(6);
    std::vector<double> m1(d), v1(d), m2(d), v2(d);
    for (std::size_t i = 0; i < d; ++i) {
      m1[i] = rng.Uniform() * 10 - 5;
      m2[i] = rng.Uniform() * 10 - 5;
      v1[i] = rng.Uniform() * 3;
      v2[i] = rng.Uniform() * 3;
    }
    const double got = FrechetDistance(Diagonal(m1, v1), Diagonal(m2, v2));
    CHECK(got == doctest::Approx(oracle::FrechetDiagonal(m1, v1, m2, v2)).epsilon(1e-9));
  }
}

TEST_CASE("symmetry, translation, non-negativity") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RowMatrix a = Random(40, 4, seed);
    const RowMatrix b = Random(30, 4, seed + 50);
    const GaussianStats ga = EstimateGaussian(a), gb = EstimateGaussian(b);
    const double ab = FrechetDistance(ga, gb);
    CHECK(ab >= 0.0);
    CHECK(ab == doctest::Approx(FrechetDistance(gb, ga)).epsilon(1e-9));

    RowMatrix at = a, bt = b;
    at.rowwise() += Eigen::RowVectorXd::Constant(4, 7.5);
    bt.rowwise() += Eigen::RowVectorXd::Constant(4, 7.5);
    CHECK(FrechetDistance(EstimateGaussian(at), EstimateGaussian(bt)) ==
          doctest::Approx(ab).epsilon(1e-9));
  }
}

TEST_CASE("dimension mismatch is an error") {
  CHECK_THROWS_AS(FrechetDistance(EstimateGaussian(Random(5, 2, 1)), EstimateGaussian(Random(5, 3, 1))),
                  Error);
}

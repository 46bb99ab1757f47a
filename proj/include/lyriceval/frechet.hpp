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

#include <Eigen/Dense>

#include "lyriceval/featurize.hpp"

namespace lyriceval {

struct GaussianStats {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  std::size_t n = 0;
};

// Column means and the unbiased (n - 1) sample covariance, symmetrized.
// Requires at least two rows.
GaussianStats EstimateGaussian(const FeatureSet& features);
GaussianStats EstimateGaussian(const RowMatrix& rows);

// Symmetric PSD square root through a self-adjoint eigendecomposition with
// eigenvalues clipped at zero. Throws when |m - m^T| exceeds 1e-10 scaled by
// max(1, max|m|).
Eigen::MatrixXd MatrixSqrtPsd(const Eigen::MatrixXd& m);

// Squared Frechet distance
//   |mu_a - mu_b|^2 + tr(S_a + S_b - 2 (S_a^1/2 S_b S_a^1/2)^1/2).
// The congruence form has the same trace as (S_a S_b)^1/2 and keeps every
// eigenproblem symmetric. Trace-term noise down to -1e-6 (scaled by max(1, tr S_a + tr S_b))
// is floored to 0.
double FrechetDistance(const GaussianStats& a, const GaussianStats& b);

}  // namespace lyriceval

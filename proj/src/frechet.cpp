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

#include "lyriceval/frechet.hpp"

#include <algorithm>
#include <cmath>

#include "lyriceval/error.hpp"

namespace lyriceval {

namespace {
constexpr double kAsymmetryTolerance = 1e-10;
constexpr double kTraceNoiseFloor = -1e-6;
}  // namespace

GaussianStats EstimateGaussian(const RowMatrix& rows) {
  const auto n = rows.rows();
  if (n < 2) {
    Fail(ErrorCode::kInvalidArgument,
         "need at least 2 rows for a covariance estimate, got " + std::to_string(n));
  }
  GaussianStats stats;
  stats.n = static_cast<std::size_t>(n);
  stats.mean = rows.colwise().mean().transpose();
  const Eigen::MatrixXd centered = rows.rowwise() - stats.mean.transpose();
  Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  stats.cov = 0.5 * (cov + cov.transpose());
  return stats;
}

GaussianStats EstimateGaussian(const FeatureSet& features) {
  return EstimateGaussian(features.vectors);
}

Eigen::MatrixXd MatrixSqrtPsd(const Eigen::MatrixXd& m) {
  Require(m.rows() == m.cols(), "matrix square root needs a square matrix");
  if (m.size() == 0) return m;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= kAsymmetryTolerance * scale)) {
    Fail(ErrorCode::kInvalidArgument,
         "matrix is not symmetric (max |m - m^T| = " + std::to_string(asym) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    Fail(ErrorCode::kInternal, "eigendecomposition did not converge");
  }
  const Eigen::VectorXd roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd& v = solver.eigenvectors();
  Eigen::MatrixXd r = v * roots.asDiagonal() * v.transpose();
  return 0.5 * (r + r.transpose());
}

double FrechetDistance(const GaussianStats& a, const GaussianStats& b) {
  if (a.mean.size() != b.mean.size() || a.cov.rows() != b.cov.rows()) {
    Fail(ErrorCode::kInvalidArgument,
         "dimension mismatch: " + std::to_string(a.mean.size()) + " vs " +
             std::to_string(b.mean.size()));
  }
  const double mean_term = (a.mean - b.mean).squaredNorm();
  const Eigen::MatrixXd root_a = MatrixSqrtPsd(a.cov);
  Eigen::MatrixXd inner = root_a * b.cov * root_a;
  inner = 0.5 * (inner + inner.transpose());
  const double cross = MatrixSqrtPsd(inner).trace();
  const double total = a.cov.trace() + b.cov.trace();
  double trace_term = total - 2.0 * cross;
  if (trace_term < 0.0 && trace_term >= kTraceNoiseFloor * std::max(1.0, total)) {
    trace_term = 0.0;
  }
  return mean_term + trace_term;
}

}  // namespace lyriceval

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
#include <span>
#include <string>
#include <vector>

#include "lyriceval/featurize.hpp"

namespace lyriceval {

struct MauveConfig {
  std::size_t k = 0;  // 0: max(2, min(500, (|P| + |Q|) / 10))
  double c = 5.0;
  double epsilon = 1e-6;
  std::size_t grid_size = 100;  // interior mixture weights
  std::uint64_t seed = 0;
  std::size_t max_iterations = 100;
  std::size_t kmeans_restarts = 5;
  std::size_t max_samples_per_side = 3000;  // 0 disables subsampling

  void Validate() const;
};

std::size_t DefaultClusterCount(std::size_t p_rows, std::size_t q_rows);

struct QuantizedPair {
  std::vector<double> hist_p;
  std::vector<double> hist_q;
  std::size_t k = 0;
  std::uint64_t assignment_seed = 0;
  std::vector<std::string> warnings;
};

struct FrontierPoint {
  double lambda = 0.0;  // mixture weight on P
  double x = 0.0;       // exp(-c KL(Q || R))
  double y = 0.0;       // exp(-c KL(P || R))
};

struct DivergenceCurve {
  std::vector<FrontierPoint> points;  // ascending x, descending lambda
  double c = 0.0;
  std::size_t grid_size = 0;
};

// Joint k-means over both sets, then per-set bin frequencies, plus epsilon,
// renormalized. Rows are put in a canonical (lexicographic) order before
// clustering, so swapping P and Q swaps the histograms exactly.
QuantizedPair Quantize(const FeatureSet& p, const FeatureSet& q, const MauveConfig& cfg);

// sum p_i ln(p_i / q_i) in nats, with 0 ln(0/q) = 0. Throws when q_i = 0
// where p_i > 0, on length mismatch, or when either input is not a
// probability vector within 1e-9.
double KlDivergence(std::span<const double> p, std::span<const double> q);

// Mixtures R = lambda P + (1 - lambda) Q for lambda = i / (G + 1),
// i = 0..G+1: G interior points plus both limits.
DivergenceCurve DivergenceFrontier(const QuantizedPair& pair, const MauveConfig& cfg);

// Trapezoidal area under the curve, closed with a horizontal segment to
// x = 0 at the first point and a vertical segment to y = 0 at the last.
double AreaUnderFrontier(const DivergenceCurve& curve);

struct MauveResult {
  double score = 0.0;
  QuantizedPair pair;
  DivergenceCurve curve;
  MauveConfig config;
  std::size_t p_rows_used = 0;
  std::size_t q_rows_used = 0;
};

MauveResult ComputeMauve(const FeatureSet& p, const FeatureSet& q, const MauveConfig& cfg);

double Entropy(std::span<const double> probs);

}  // namespace lyriceval

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

// Brute-force reference implementations used only by the tests. Each one
// follows the textbook definition directly and shares no code with the
// library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace oracle {

// Every overlapping n-gram materialized as its own list.
inline std::vector<std::vector<std::string>> NGrams(const std::vector<std::string>& tokens,
                                                    std::size_t n) {
  std::vector<std::vector<std::string>> grams;
  if (n == 0 || tokens.size() < n) return grams;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    grams.emplace_back(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                       tokens.begin() + static_cast<std::ptrdiff_t>(i + n));
  }
  return grams;
}

// Unique count by pairwise comparison against earlier entries.
inline std::size_t CountUnique(const std::vector<std::vector<std::string>>& grams) {
  std::size_t unique = 0;
  for (std::size_t i = 0; i < grams.size(); ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i && !seen; ++j) seen = grams[j] == grams[i];
    if (!seen) ++unique;
  }
  return unique;
}

inline double RepN(const std::vector<std::string>& tokens, std::size_t n) {
  const auto grams = NGrams(tokens, n);
  if (grams.empty()) return 0.0;
  return 1.0 - static_cast<double>(CountUnique(grams)) / static_cast<double>(grams.size());
}

inline double DistinctN(const std::vector<std::string>& tokens, std::size_t n) {
  return static_cast<double>(CountUnique(NGrams(tokens, n))) /
         static_cast<double>(tokens.size());
}

inline double Diversity(const std::vector<std::string>& tokens) {
  return (1.0 - RepN(tokens, 2)) * (1.0 - RepN(tokens, 3)) * (1.0 - RepN(tokens, 4));
}

inline double Kl(const std::vector<double>& p, const std::vector<double>& q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) sum += p[i] * std::log(p[i] / q[i]);
  }
  return sum;
}

// Smallest-cardinality token set with mass >= p - slack found by scanning all
// 2^m subsets. Among minimum-size qualifying subsets the one made of the
// largest probabilities (ties to lower index) is returned as a sorted index
// list; `min_size` reports the minimum size found by the scan.
struct NucleusScan {
  std::vector<std::size_t> support;
  std::size_t min_size = 0;
};

inline NucleusScan MinimalNucleus(const std::vector<double>& probs, double p, double slack) {
  const std::size_t m = probs.size();
  NucleusScan best;
  best.min_size = m + 1;
  double best_mass = -1.0;
  std::vector<std::size_t> best_set;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::size_t> set;
    double mass = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) {
        set.push_back(i);
        mass += probs[i];
      }
    }
    if (mass < p - slack) continue;
    // Zero-probability members never make a set minimal.
    bool has_zero = false;
    for (auto i : set) has_zero = has_zero || probs[i] == 0.0;
    if (has_zero) continue;
    auto ranks_before = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
      // Prefer the set whose sorted-by-(prob desc, index asc) sequence is
      // lexicographically first.
      auto key = [&](std::vector<std::size_t> s) {
        std::sort(s.begin(), s.end(), [&](std::size_t x, std::size_t y) {
          return probs[x] != probs[y] ? probs[x] > probs[y] : x < y;
        });
        return s;
      };
      const auto ka = key(a), kb = key(b);
      for (std::size_t i = 0; i < ka.size(); ++i) {
        if (ka[i] == kb[i]) continue;
        if (probs[ka[i]] != probs[kb[i]]) return probs[ka[i]] > probs[kb[i]];
        return ka[i] < kb[i];
      }
      return false;
    };
    if (set.size() < best.min_size ||
        (set.size() == best.min_size && ranks_before(set, best_set))) {
      best.min_size = set.size();
      best_set = set;
      best_mass = mass;
    }
  }
  (void)best_mass;
  best.support = best_set;
  return best;
}

// Krippendorff's alpha, ordinal metric, straight from the pairable-value
// definition: every ordered pair of distinct values within a unit counts
// 1/(m_u - 1) toward observed disagreement, every ordered pair of distinct
// pairable values anywhere counts toward expected disagreement.
// Returns NaN when undefined.
inline double KrippendorffOrdinal(const std::vector<std::vector<int>>& units, int levels) {
  std::vector<std::vector<int>> pairable;
  for (const auto& u : units) {
    if (u.size() >= 2) pairable.push_back(u);
  }
  std::vector<double> n_g(static_cast<std::size_t>(levels), 0.0);
  std::vector<int> all;
  for (const auto& u : pairable) {
    for (int v : u) {
      n_g[static_cast<std::size_t>(v)] += 1.0;
      all.push_back(v);
    }
  }
  const double n = static_cast<double>(all.size());
  if (n < 2) return std::nan("");
  auto delta2 = [&](int c, int k) {
    if (c == k) return 0.0;
    const int lo = std::min(c, k), hi = std::max(c, k);
    double s = 0.0;
    for (int g = lo; g <= hi; ++g) s += n_g[static_cast<std::size_t>(g)];
    s -= (n_g[static_cast<std::size_t>(c)] + n_g[static_cast<std::size_t>(k)]) / 2.0;
    return s * s;
  };
  double d_o = 0.0;
  for (const auto& u : pairable) {
    const double m = static_cast<double>(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (i != j) d_o += delta2(u[i], u[j]) / (m - 1.0);
      }
    }
  }
  d_o /= n;
  double d_e = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i != j) d_e += delta2(all[i], all[j]);
    }
  }
  d_e /= n * (n - 1.0);
  if (d_e == 0.0) return std::nan("");
  return 1.0 - d_o / d_e;
}

// Squared Frechet distance between Gaussians with diagonal covariances.
inline double FrechetDiagonal(const std::vector<double>& mu1, const std::vector<double>& var1,
                              const std::vector<double>& mu2, const std::vector<double>& var2) {
  double d = 0.0;
  for (std::size_t i = 0; i < mu1.size(); ++i) {
    const double diff = mu1[i] - mu2[i];
    d += diff * diff + var1[i] + var2[i] - 2.0 * std::sqrt(var1[i] * var2[i]);
  }
  return d;
}

// Spearman rank correlation with average ranks for ties.
inline std::vector<double> Ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
    i = j + 1;
  }
  return r;
}

inline double Spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = Ranks(x), ry = Ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nan("");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace oracle

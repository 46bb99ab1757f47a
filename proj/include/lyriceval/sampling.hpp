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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lyriceval/corpus.hpp"

namespace lyriceval {

// Probabilities indexed by token position in some vocabulary. Index order is
// the tie-break order for nucleus sorting.
struct Distribution {
  std::vector<double> probs;

  double Sum() const;
  std::vector<std::size_t> Support() const;
};

// Throws unless every entry is finite, >= 0, and the total is 1 within 1e-9.
void ValidateDistribution(const Distribution& dist);

// Cumulative mass comparisons allow this much rounding slack, so a prefix
// whose exact mass equals p is always accepted.
inline constexpr double kNucleusSlack = 1e-12;

// Indices by descending probability, ties by ascending index.
std::vector<std::size_t> NucleusOrder(const Distribution& dist);

// Keeps the shortest prefix of NucleusOrder whose cumulative mass reaches p
// (the crossing token is kept) and renormalizes it; all other entries become
// 0. p >= 1 returns the input unchanged.
Distribution TopPFilter(const Distribution& dist, double p);

inline constexpr std::string_view kEndOfText = "<|endoftext|>";

struct SamplingConfig {
  double p = 0.95;
  std::size_t max_tokens = 128;
  std::uint64_t seed = 0;
  std::vector<std::string> prompt;  // unicode-scalar tokens

  void Validate() const;
};

class NgramLM {
 public:
  // Each document is read as EOT, its tokens, EOT, so the marker doubles as
  // the document separator. Counts the next token after every preceding
  // context of length 1..order-1. Vocabulary is ordered by descending training
  // frequency, ties by token bytes. order must be in [2, 6].
  static NgramLM Fit(const Corpus& corpus, std::size_t order, double alpha = 0.1);

  std::size_t order() const { return order_; }
  double alpha() const { return alpha_; }
  const std::vector<std::string>& vocab() const { return vocab_; }
  std::size_t eot_index() const { return eot_; }
  std::optional<std::size_t> TokenIndex(std::string_view token) const;

  // Raw count of token after context (tokens given as strings; use
  // kEndOfText for the marker). 0 when either is unknown.
  std::uint64_t Count(const std::vector<std::string>& context, std::string_view token) const;

  // Additive smoothing over the whole vocabulary at the longest suffix of
  // the context (at most order-1 tokens) that was seen in training:
  //   (count(ctx, w) + alpha) / (total(ctx) + alpha * |V|).
  // Uniform over the vocabulary when no suffix of length >= 1 is known.
  Distribution NextDistribution(std::span<const std::uint32_t> context) const;
  Distribution NextDistribution(const std::vector<std::string>& context) const;

  // Token ids for a token sequence; unknown tokens map to kUnknown.
  std::vector<std::uint32_t> Encode(const std::vector<std::string>& tokens) const;

  static constexpr std::uint32_t kUnknown = 0xFFFFFFFFu;

  bool operator==(const NgramLM&) const = default;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const;
  };
  struct ContextCounts {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> next;  // sorted by id
    std::uint64_t total = 0;
    bool operator==(const ContextCounts&) const = default;
  };

  std::size_t order_ = 2;
  double alpha_ = 0.1;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t eot_ = 0;
  std::unordered_map<std::vector<std::uint32_t>, ContextCounts, KeyHash> counts_;
};

// Autoregressive loop: NextDistribution -> TopPFilter -> categorical draw
// from Rng(cfg.seed). The context starts as EOT followed by the prompt.
// Stops at end-of-text (not emitted) or max_tokens. The prompt is not part of
// the returned tokens.
std::vector<std::string> Generate(const NgramLM& lm, const SamplingConfig& cfg);

// Index of the token drawn with uniform variate u in [0, 1): walks the
// support in NucleusOrder accumulating mass.
std::size_t DrawCategorical(const Distribution& dist, double u);

std::string SourceTagForP(double p);

// n sequences; sequence i uses seed cfg.seed + i. Documents are ids
// "gen-p{p}-{i:06}" with source "generated-p{p}".
Corpus SampleCorpus(const NgramLM& lm, const SamplingConfig& cfg, std::size_t n);

}  // namespace lyriceval

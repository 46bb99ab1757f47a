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
#include <string>
#include <vector>

#include "lyriceval/cleaning.hpp"
#include "lyriceval/corpus.hpp"
#include "lyriceval/divergence.hpp"
#include "lyriceval/featurize.hpp"
#include "lyriceval/ngram_metrics.hpp"

namespace lyriceval {

struct SweepConfig {
  std::vector<double> ps = {0.80, 0.85, 0.90, 0.95, 0.99};
  std::size_t samples_per_p = 200;
  std::size_t max_tokens = 128;
  std::size_t order = 4;
  double alpha = 0.1;
  std::uint64_t seed = 0;
  std::vector<std::string> prompt;
  // Every holdout_every-th document (1-based positions holdout_every,
  // 2*holdout_every, ...) is the human reference; the rest train the model.
  std::size_t holdout_every = 5;
  TokenScheme scheme = TokenScheme::kUnicodeScalar;
  HashedNgramConfig features;
  MauveConfig mauve;
};

struct SweepRow {
  std::string label;              // "Human" or "LLM_p=0.80"
  std::optional<double> p;        // unset for the human row
  DegenerationMetrics metrics;    // corpus means with ns {2, 3, 4}
  std::optional<double> mauve;    // unset for the human row
};

struct SweepReport {
  std::vector<SweepRow> rows;  // human row first, then ascending p
  std::size_t train_documents = 0;
  std::size_t reference_documents = 0;
  std::vector<std::string> warnings;
};

void SplitHoldout(const Corpus& corpus, std::size_t every, Corpus& train, Corpus& reference);

// Cleans the corpus, splits it, fits the character model, samples at each p,
// and scores every sample set against the held-out reference.
SweepReport RunSweep(const Corpus& corpus, const CleaningRuleSet& rules, const SweepConfig& cfg);

// Aligned plain-text table with columns
// Source, rep-2, rep-3, rep-4, diversity, distinct-2, mauve.
std::string FormatSweepTable(const SweepReport& report);

}  // namespace lyriceval

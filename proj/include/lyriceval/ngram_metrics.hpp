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
#include <map>
#include <string>
#include <vector>

#include "lyriceval/corpus.hpp"

namespace lyriceval {

// Overlapping n-gram windows. 1 - unique/total; 0 when the sequence is
// shorter than n. Throws kInvalidArgument for n == 0.
double RepN(const TokenSequence& tokens, std::size_t n);

// unique n-grams / token count. Throws kUndefined for an empty sequence.
double DistinctN(const TokenSequence& tokens, std::size_t n);

// Product of (1 - rep_n) for n = 2, 3, 4.
double Diversity(const TokenSequence& tokens);

struct DegenerationMetrics {
  std::map<std::size_t, double> rep;       // n -> rep_n
  std::map<std::size_t, double> distinct;  // n -> distinct_n
  double diversity = 0.0;
};

struct DegenerationReport {
  std::vector<std::string> ids;                   // document order
  std::vector<DegenerationMetrics> per_document;  // aligned with ids
  DegenerationMetrics corpus_mean;
  std::vector<std::size_t> n_values;
  std::vector<std::string> warnings;
  bool pooled = false;
};

DegenerationMetrics ComputeMetrics(const TokenSequence& tokens,
                                   const std::vector<std::size_t>& ns);

// Per-document metrics averaged arithmetically in document order. Empty
// documents are skipped with a warning. In pooled mode the corpus row is
// computed from n-gram counts pooled over all documents instead (windows
// never cross document boundaries); per-document rows are still filled.
DegenerationReport CorpusDegeneration(const Corpus& corpus, TokenScheme scheme,
                                      std::vector<std::size_t> ns = {2, 3, 4},
                                      bool pooled = false);

}  // namespace lyriceval

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

#include "lyriceval/ngram_metrics.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "lyriceval/error.hpp"
#include "lyriceval/hash.hpp"
#include "lyriceval/parallel.hpp"

namespace lyriceval {

namespace {

// Token strings interned to dense ids so n-grams can be keyed by a
// contiguous id window.
struct NgramKey {
  std::vector<std::uint32_t> ids;
  bool operator==(const NgramKey&) const = default;
};

struct NgramKeyHash {
  std::size_t operator()(const NgramKey& key) const {
    std::uint64_t h = 0x84222325cbf29ce4ULL;
    for (std::uint32_t id : key.ids) h = SplitMix64(h ^ id);
    return static_cast<std::size_t>(h);
  }
};

using NgramSet = std::unordered_set<NgramKey, NgramKeyHash>;

std::vector<std::uint32_t> Intern(const TokenSequence& tokens,
                                  std::unordered_map<std::string, std::uint32_t>& table) {
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& tok : tokens.tokens) {
    auto [it, inserted] = table.emplace(tok, static_cast<std::uint32_t>(table.size()));
    ids.push_back(it->second);
  }
  return ids;
}

// Inserts every window of the sequence; returns the window count.
std::size_t CollectNgrams(const std::vector<std::uint32_t>& ids, std::size_t n,
                          NgramSet& set) {
  if (ids.size() < n) return 0;
  const std::size_t total = ids.size() - n + 1;
  for (std::size_t i = 0; i < total; ++i) {
    set.insert(NgramKey{{ids.begin() + static_cast<std::ptrdiff_t>(i),
                         ids.begin() + static_cast<std::ptrdiff_t>(i + n)}});
  }
  return total;
}

struct NgramCounts {
  std::size_t unique = 0;
  std::size_t total = 0;
};

NgramCounts Count(const TokenSequence& tokens, std::size_t n) {
  Require(n >= 1, "n-gram order must be >= 1");
  std::unordered_map<std::string, std::uint32_t> table;
  const auto ids = Intern(tokens, table);
  NgramSet set;
  const std::size_t total = CollectNgrams(ids, n, set);
  return {set.size(), total};
}

double RepFromCounts(NgramCounts c) {
  if (c.total == 0) return 0.0;
  return 1.0 - static_cast<double>(c.unique) / static_cast<double>(c.total);
}

DegenerationMetrics MeanOf(const std::vector<const DegenerationMetrics*>& rows,
                           const std::vector<std::size_t>& ns) {
  DegenerationMetrics mean;
  for (std::size_t n : ns) {
    mean.rep[n] = 0.0;
    mean.distinct[n] = 0.0;
  }
  if (rows.empty()) return mean;
  for (const auto* row : rows) {
    for (std::size_t n : ns) {
      mean.rep[n] += row->rep.at(n);
      mean.distinct[n] += row->distinct.at(n);
    }
    mean.diversity += row->diversity;
  }
  const double count = static_cast<double>(rows.size());
  for (std::size_t n : ns) {
    mean.rep[n] /= count;
    mean.distinct[n] /= count;
  }
  mean.diversity /= count;
  return mean;
}

}  // namespace

double RepN(const TokenSequence& tokens, std::size_t n) {
  return RepFromCounts(Count(tokens, n));
}

double DistinctN(const TokenSequence& tokens, std::size_t n) {
  const NgramCounts c = Count(tokens, n);
  if (tokens.empty()) Fail(ErrorCode::kUndefined, "distinct-n is undefined for an empty sequence");
  return static_cast<double>(c.unique) / static_cast<double>(tokens.size());
}

double Diversity(const TokenSequence& tokens) {
  double product = 1.0;
  for (std::size_t n = 2; n <= 4; ++n) product *= 1.0 - RepN(tokens, n);
  return product;
}

DegenerationMetrics ComputeMetrics(const TokenSequence& tokens,
                                   const std::vector<std::size_t>& ns) {
  DegenerationMetrics m;
  for (std::size_t n : ns) {
    m.rep[n] = RepN(tokens, n);
    m.distinct[n] = DistinctN(tokens, n);
  }
  m.diversity = Diversity(tokens);
  return m;
}

DegenerationReport CorpusDegeneration(const Corpus& corpus, TokenScheme scheme,
                                      std::vector<std::size_t> ns, bool pooled) {
  if (corpus.empty()) Fail(ErrorCode::kInvalidArgument, "corpus is empty");
  Require(!ns.empty(), "at least one n is required");
  for (std::size_t n : ns) Require(n >= 1, "n-gram order must be >= 1");
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  const auto& docs = corpus.documents();
  std::vector<TokenSequence> sequences(docs.size());
  std::vector<DegenerationMetrics> metrics(docs.size());
  ParallelFor(docs.size(), [&](std::size_t i) {
    sequences[i] = Tokenize(docs[i].text(), scheme);
    if (!sequences[i].empty()) metrics[i] = ComputeMetrics(sequences[i], ns);
  });

  DegenerationReport report;
  report.n_values = ns;
  report.pooled = pooled;
  std::vector<const DegenerationMetrics*> rows;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (sequences[i].empty()) {
      report.warnings.push_back("document '" + docs[i].id + "' is empty; skipped");
      continue;
    }
    report.ids.push_back(docs[i].id);
    report.per_document.push_back(metrics[i]);
  }
  if (report.per_document.empty()) {
    Fail(ErrorCode::kInvalidArgument, "every document in the corpus is empty");
  }
  for (const auto& m : report.per_document) rows.push_back(&m);

  if (!pooled) {
    report.corpus_mean = MeanOf(rows, ns);
    return report;
  }

  std::vector<std::size_t> all_ns = ns;
  for (std::size_t n = 2; n <= 4; ++n) {
    if (std::find(all_ns.begin(), all_ns.end(), n) == all_ns.end()) all_ns.push_back(n);
  }
  std::unordered_map<std::string, std::uint32_t> table;
  std::vector<std::vector<std::uint32_t>> ids;
  std::size_t token_total = 0;
  for (const auto& seq : sequences) {
    if (seq.empty()) continue;
    ids.push_back(Intern(seq, table));
    token_total += seq.size();
  }
  std::map<std::size_t, NgramCounts> pooled_counts;
  for (std::size_t n : all_ns) {
    NgramSet set;
    std::size_t total = 0;
    for (const auto& seq_ids : ids) total += CollectNgrams(seq_ids, n, set);
    pooled_counts[n] = {set.size(), total};
  }
  for (std::size_t n : ns) {
    report.corpus_mean.rep[n] = RepFromCounts(pooled_counts[n]);
    report.corpus_mean.distinct[n] =
        static_cast<double>(pooled_counts[n].unique) / static_cast<double>(token_total);
  }
  report.corpus_mean.diversity = 1.0;
  for (std::size_t n = 2; n <= 4; ++n) {
    report.corpus_mean.diversity *= 1.0 - RepFromCounts(pooled_counts[n]);
  }
  return report;
}

}  // namespace lyriceval

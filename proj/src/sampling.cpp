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

#include "lyriceval/sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>

#include "lyriceval/error.hpp"
#include "lyriceval/hash.hpp"
#include "lyriceval/parallel.hpp"

namespace lyriceval {

double Distribution::Sum() const {
  double sum = 0.0;
  for (double x : probs) sum += x;
  return sum;
}

std::vector<std::size_t> Distribution::Support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) out.push_back(i);
  }
  return out;
}

void ValidateDistribution(const Distribution& dist) {
  Require(!dist.probs.empty(), "distribution is empty");
  for (double x : dist.probs) {
    Require(std::isfinite(x) && x >= 0.0, "distribution has a negative or non-finite entry");
  }
  Require(std::abs(dist.Sum() - 1.0) <= 1e-9, "distribution does not sum to 1");
}

std::vector<std::size_t> NucleusOrder(const Distribution& dist) {
  std::vector<std::size_t> order(dist.probs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dist.probs[a] > dist.probs[b];
  });
  return order;
}

Distribution TopPFilter(const Distribution& dist, double p) {
  Require(p > 0.0 && p <= 1.0, "top-p threshold must be in (0, 1]");
  ValidateDistribution(dist);
  if (p >= 1.0) return dist;
  const auto order = NucleusOrder(dist);
  double cumulative = 0.0;
  std::size_t keep = 0;
  while (keep < order.size()) {
    cumulative += dist.probs[order[keep]];
    ++keep;
    if (cumulative >= p - kNucleusSlack) break;
  }
  Distribution out;
  out.probs.assign(dist.probs.size(), 0.0);
  double kept = 0.0;
  for (std::size_t i = 0; i < keep; ++i) kept += dist.probs[order[i]];
  for (std::size_t i = 0; i < keep; ++i) out.probs[order[i]] = dist.probs[order[i]] / kept;
  return out;
}

void SamplingConfig::Validate() const {
  Require(p > 0.0 && p <= 1.0, "top-p threshold must be in (0, 1]");
  Require(max_tokens >= 1, "max_tokens must be >= 1");
}

std::size_t NgramLM::KeyHash::operator()(const std::vector<std::uint32_t>& key) const {
  std::uint64_t h = key.size();
  for (std::uint32_t id : key) h = SplitMix64(h ^ id);
  return static_cast<std::size_t>(h);
}

NgramLM NgramLM::Fit(const Corpus& corpus, std::size_t order, double alpha) {
  Require(!corpus.empty(), "cannot fit a language model on an empty corpus");
  Require(order >= 2 && order <= 6, "model order must be in [2, 6]");
  Require(alpha > 0.0 && std::isfinite(alpha), "smoothing constant must be > 0");

  std::vector<std::vector<std::string>> docs;
  std::map<std::string, std::uint64_t> freq;
  for (const auto& doc : corpus.documents()) {
    auto tokens = Tokenize(doc.text(), TokenScheme::kUnicodeScalar).tokens;
    for (const auto& t : tokens) ++freq[t];
    ++freq[std::string(kEndOfText)];
    docs.push_back(std::move(tokens));
  }

  NgramLM lm;
  lm.order_ = order;
  lm.alpha_ = alpha;
  std::vector<std::pair<std::string, std::uint64_t>> ranked(freq.begin(), freq.end());
  // freq is byte-ordered already, so a stable sort leaves byte order on ties.
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (const auto& [token, count] : ranked) {
    lm.index_.emplace(token, static_cast<std::uint32_t>(lm.vocab_.size()));
    lm.vocab_.push_back(token);
  }
  lm.eot_ = lm.index_.at(std::string(kEndOfText));

  std::map<std::vector<std::uint32_t>, std::map<std::uint32_t, std::uint64_t>> counts;
  for (const auto& tokens : docs) {
    std::vector<std::uint32_t> ids{static_cast<std::uint32_t>(lm.eot_)};
    const std::vector<std::uint32_t> body = lm.Encode(tokens);
    ids.insert(ids.end(), body.begin(), body.end());
    ids.push_back(static_cast<std::uint32_t>(lm.eot_));
    for (std::size_t i = 1; i < ids.size(); ++i) {
      const std::size_t max_len = std::min(order - 1, i);
      for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::uint32_t> ctx(ids.begin() + static_cast<std::ptrdiff_t>(i - len),
                                       ids.begin() + static_cast<std::ptrdiff_t>(i));
        ++counts[std::move(ctx)][ids[i]];
      }
    }
  }
  for (auto& [ctx, next] : counts) {
    ContextCounts cc;
    for (const auto& [id, c] : next) {
      cc.next.emplace_back(id, c);
      cc.total += c;
    }
    lm.counts_.emplace(ctx, std::move(cc));
  }
  return lm;
}

std::optional<std::size_t> NgramLM::TokenIndex(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> NgramLM::Encode(const std::vector<std::string>& tokens) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto it = index_.find(t);
    ids.push_back(it == index_.end() ? kUnknown : it->second);
  }
  return ids;
}

std::uint64_t NgramLM::Count(const std::vector<std::string>& context,
                             std::string_view token) const {
  const auto tok = TokenIndex(token);
  if (!tok) return 0;
  const auto ids = Encode(context);
  auto it = counts_.find(ids);
  if (it == counts_.end()) return 0;
  for (const auto& [id, c] : it->second.next) {
    if (id == *tok) return c;
  }
  return 0;
}

Distribution NgramLM::NextDistribution(std::span<const std::uint32_t> context) const {
  const std::size_t v = vocab_.size();
  Distribution dist;
  const std::size_t max_len = std::min(order_ - 1, context.size());
  for (std::size_t len = max_len; len >= 1; --len) {
    std::vector<std::uint32_t> key(context.end() - static_cast<std::ptrdiff_t>(len),
                                   context.end());
    auto it = counts_.find(key);
    if (it == counts_.end()) continue;
    const double denom = static_cast<double>(it->second.total) + alpha_ * static_cast<double>(v);
    dist.probs.assign(v, alpha_ / denom);
    for (const auto& [id, c] : it->second.next) {
      dist.probs[id] = (static_cast<double>(c) + alpha_) / denom;
    }
    return dist;
  }
  dist.probs.assign(v, 1.0 / static_cast<double>(v));
  return dist;
}

Distribution NgramLM::NextDistribution(const std::vector<std::string>& context) const {
  const auto ids = Encode(context);
  return NextDistribution(std::span<const std::uint32_t>(ids));
}

std::size_t DrawCategorical(const Distribution& dist, double u) {
  const auto order = NucleusOrder(dist);
  double cumulative = 0.0;
  std::size_t last = order.front();
  for (std::size_t idx : order) {
    if (dist.probs[idx] <= 0.0) break;
    cumulative += dist.probs[idx];
    last = idx;
    if (u < cumulative) return idx;
  }
  return last;
}

std::vector<std::string> Generate(const NgramLM& lm, const SamplingConfig& cfg) {
  cfg.Validate();
  Rng rng(cfg.seed);
  std::vector<std::uint32_t> context{static_cast<std::uint32_t>(lm.eot_index())};
  const std::vector<std::uint32_t> prompt = lm.Encode(cfg.prompt);
  context.insert(context.end(), prompt.begin(), prompt.end());
  std::vector<std::string> out;
  for (std::size_t step = 0; step < cfg.max_tokens; ++step) {
    const Distribution next = TopPFilter(lm.NextDistribution(context), cfg.p);
    const std::size_t token = DrawCategorical(next, rng.Uniform());
    if (token == lm.eot_index()) break;
    out.push_back(lm.vocab()[token]);
    context.push_back(static_cast<std::uint32_t>(token));
  }
  return out;
}

std::string SourceTagForP(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", p);
  if (std::strtod(buf, nullptr) != p) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, p);
    *ptr = '\0';
  }
  return std::string("generated-p") + buf;
}

Corpus SampleCorpus(const NgramLM& lm, const SamplingConfig& cfg, std::size_t n) {
  cfg.Validate();
  const std::string source = SourceTagForP(cfg.p);
  const std::string tag = source.substr(std::string("generated-").size());
  std::vector<std::string> texts(n);
  ParallelFor(n, [&](std::size_t i) {
    SamplingConfig local = cfg;
    local.seed = cfg.seed + i;
    std::string text;
    for (const auto& t : Generate(lm, local)) text += t;
    texts[i] = std::move(text);
  });
  Corpus corpus(source);
  for (std::size_t i = 0; i < n; ++i) {
    char id[64];
    std::snprintf(id, sizeof id, "gen-%s-%06zu", tag.c_str(), i);
    Document doc;
    doc.id = id;
    doc.raw_text = std::move(texts[i]);
    doc.source = source;
    corpus.Add(std::move(doc));
  }
  return corpus;
}

}  // namespace lyriceval

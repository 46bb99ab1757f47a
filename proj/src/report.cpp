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

#include "lyriceval/report.hpp"

#include <algorithm>
#include <cstdio>

#include "lyriceval/error.hpp"
#include "lyriceval/sampling.hpp"

namespace lyriceval {

void SplitHoldout(const Corpus& corpus, std::size_t every, Corpus& train, Corpus& reference) {
  Require(every >= 2, "holdout interval must be >= 2");
  train = Corpus(corpus.name() + "-train");
  reference = Corpus(corpus.name() + "-reference");
  const auto& docs = corpus.documents();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    ((i + 1) % every == 0 ? reference : train).Add(docs[i]);
  }
}

SweepReport RunSweep(const Corpus& corpus, const CleaningRuleSet& rules, const SweepConfig& cfg) {
  Require(!cfg.ps.empty(), "at least one p is required");
  Require(cfg.samples_per_p >= 1, "samples per p must be >= 1");
  Corpus cleaned = corpus;
  CleanCorpus(cleaned, rules);

  Corpus train, reference;
  SplitHoldout(cleaned, cfg.holdout_every, train, reference);
  if (train.empty() || reference.empty()) {
    Fail(ErrorCode::kInvalidArgument, "corpus too small to split into train and reference");
  }

  SweepReport report;
  report.train_documents = train.size();
  report.reference_documents = reference.size();

  const std::vector<std::size_t> ns = {2, 3, 4};
  const auto human = CorpusDegeneration(reference, cfg.scheme, ns);
  report.warnings.insert(report.warnings.end(), human.warnings.begin(), human.warnings.end());
  report.rows.push_back({"Human", std::nullopt, human.corpus_mean, std::nullopt});

  const NgramLM lm = NgramLM::Fit(train, cfg.order, cfg.alpha);
  const FeatureSet reference_features = HashedNgramFeatures(reference, cfg.features);

  std::vector<double> ps = cfg.ps;
  std::sort(ps.begin(), ps.end());
  for (double p : ps) {
    SamplingConfig sc;
    sc.p = p;
    sc.max_tokens = cfg.max_tokens;
    sc.seed = cfg.seed;
    sc.prompt = cfg.prompt;
    const Corpus generated = SampleCorpus(lm, sc, cfg.samples_per_p);
    SweepRow row;
    char label[32];
    std::snprintf(label, sizeof label, "LLM_p=%.2f", p);
    row.label = label;
    row.p = p;
    const auto degeneration = CorpusDegeneration(generated, cfg.scheme, ns);
    for (const auto& w : degeneration.warnings) report.warnings.push_back(row.label + ": " + w);
    row.metrics = degeneration.corpus_mean;
    const FeatureSet generated_features = HashedNgramFeatures(generated, cfg.features);
    row.mauve = ComputeMauve(reference_features, generated_features, cfg.mauve).score;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string FormatSweepTable(const SweepReport& report) {
  const std::vector<std::string> header = {"Source", "rep-2", "rep-3", "rep-4",
                                           "diversity", "distinct-2", "mauve"};
  std::vector<std::vector<std::string>> cells;
  cells.push_back(header);
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  for (const auto& row : report.rows) {
    cells.push_back({row.label, fmt(row.metrics.rep.at(2)), fmt(row.metrics.rep.at(3)),
                     fmt(row.metrics.rep.at(4)), fmt(row.metrics.diversity),
                     fmt(row.metrics.distinct.at(2)), row.mauve ? fmt(*row.mauve) : "-"});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::string out;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out += "  ";
      out += line[c];
      if (c + 1 < line.size()) out.append(width[c] - line[c].size(), ' ');
    }
    out += '\n';
  }
  return out;
}

}  // namespace lyriceval

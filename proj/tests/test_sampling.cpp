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

#include <cmath>
#include <map>

#include "doctest.h"
#include "lyriceval/error.hpp"
#include "lyriceval/hash.hpp"
#include "lyriceval/sampling.hpp"
#include "oracles.hpp"

using namespace lyriceval;

namespace {

Corpus OneDoc(const std::string& text) {
  Corpus c("train");
  c.Add({"d1", text, std::nullopt, "human", {}});
  return c;
}

Distribution Random(std::size_t n, Rng& rng, bool with_ties) {
  Distribution d;
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = with_ties ? static_cast<double>(rng.Below(4)) : rng.Uniform();
    d.probs.push_back(v);
    total += v;
  }
  if (total == 0) {
    d.probs[0] = 1;
    total = 1;
  }
  for (double& v : d.probs) v /= total;
  return d;
}

}  // namespace

TEST_CASE("bigram counts include the document boundaries") {
  const NgramLM lm = NgramLM::Fit(OneDoc("abab"), 2, 0.1);
  const std::string eot(kEndOfText);
  CHECK(lm.Count({"a"}, "b") == 2);
  CHECK(lm.Count({"b"}, "a") == 1);
  CHECK(lm.Count({"b"}, eot) == 1);
  CHECK(lm.Count({eot}, "a") == 1);
  CHECK(lm.Count({"a"}, "a") == 0);
  CHECK(lm.Count({"z"}, "a") == 0);
  CHECK(lm.vocab().size() == 3);
  CHECK(*lm.TokenIndex("a") < *lm.TokenIndex("b"));
}

TEST_CASE("additive smoothing at the longest known suffix") {
  const NgramLM lm = NgramLM::Fit(OneDoc("abab"), 2, 0.1);
  const Distribution d = lm.NextDistribution(std::vector<std::string>{"a"});
  CHECK(d.probs[*lm.TokenIndex("b")] == doctest::Approx(2.1 / 2.3));
  CHECK(d.probs[*lm.TokenIndex("a")] == doctest::Approx(0.1 / 2.3));
  CHECK(d.Sum() == doctest::Approx(1.0));
  const Distribution unseen = lm.NextDistribution(std::vector<std::string>{"q"});
  for (double v : unseen.probs) CHECK(v == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("fit argument checks") {
  CHECK_THROWS_AS(NgramLM::Fit(OneDoc("ab"), 1, 0.1), Error);
  CHECK_THROWS_AS(NgramLM::Fit(OneDoc("ab"), 7, 0.1), Error);
  CHECK_THROWS_AS(NgramLM::Fit(OneDoc("ab"), 2, 0.0), Error);
}

TEST_CASE("top-p examples") {
  const Distribution d{{0.5, 0.3, 0.2}};
  const Distribution f = TopPFilter(d, 0.8);
  CHECK(f.probs[0] == doctest::Approx(0.625));
  CHECK(f.probs[1] == doctest::Approx(0.375));
  CHECK(f.probs[2] == 0.0);
  CHECK(TopPFilter(d, 1.0).probs == d.probs);
  const Distribution g = TopPFilter(d, 0.4);
  CHECK(g.probs[0] == 1.0);
  const Distribution ties{{0.25, 0.25, 0.25, 0.25}};
  const Distribution t = TopPFilter(ties, 0.5);
  CHECK(t.probs == std::vector<double>{0.5, 0.5, 0.0, 0.0});
  CHECK_THROWS_AS(TopPFilter(d, 0.0), Error);
  CHECK_THROWS_AS(TopPFilter(Distribution{{0.5, 0.6}}, 0.9), Error);
}

TEST_CASE("top-p keeps a minimal, highest-mass nucleus") {
  Rng rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const Distribution d = Random(1 + rng.Below(10), rng, trial % 2 == 0);
    const double p = 0.05 + 0.94 * rng.Uniform();
    const Distribution f = TopPFilter(d, p);
    const auto scan = oracle::MinimalNucleus(d.probs, p, kNucleusSlack);
    const auto support = f.Support();
    CHECK(support.size() == scan.min_size);
    std::vector<std::size_t> expected = scan.support;
    std::sort(expected.begin(), expected.end());
    CHECK(support == expected);
    CHECK(f.Sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i : support) {
      for (std::size_t j = 0; j < d.probs.size(); ++j) {
        if (std::find(support.begin(), support.end(), j) == support.end()) {
          CHECK(d.probs[i] >= d.probs[j]);
        }
      }
    }
  }
}

TEST_CASE("nucleus support grows with p") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Distribution d = Random(2 + rng.Below(30), rng, false);
    std::size_t last = 0;
    for (double p : {0.1, 0.3, 0.5, 0.8, 0.9, 0.95, 0.99, 1.0}) {
      const std::size_t size = TopPFilter(d, p).Support().size();
      CHECK(size >= last);
      last = size;
    }
  }
}

TEST_CASE("draws follow the distribution") {
  const Distribution d{{0.1, 0.2, 0.3, 0.4}};
  Rng rng(2024);
  const int n = 10000;
  std::vector<int> counts(4, 0);
  for (int i = 0; i < n; ++i) ++counts[DrawCategorical(d, rng.Uniform())];
  for (std::size_t i = 0; i < 4; ++i) {
    const double expected = n * d.probs[i];
    const double sigma = std::sqrt(n * d.probs[i] * (1 - d.probs[i]));
    CHECK(std::abs(counts[i] - expected) <= 3 * sigma);
  }
  CHECK(DrawCategorical(d, 0.0) == 3);
  CHECK(DrawCategorical(Distribution{{0.0, 1.0}}, 0.999999) == 1);
}

TEST_CASE("generation is deterministic and stays in the nucleus") {
  const NgramLM lm = NgramLM::Fit(OneDoc("床前明月光，疑是地上霜。举头望明月，低头思故乡。"), 3, 0.01);
  SamplingConfig cfg;
  cfg.p = 0.9;
  cfg.seed = 42;
  cfg.max_tokens = 40;
  const auto a = Generate(lm, cfg);
  CHECK(a == Generate(lm, cfg));
  CHECK(a.size() <= 40);
  for (const auto& t : a) CHECK(t != kEndOfText);

  cfg.p = 0.01;
  const auto greedy = Generate(lm, cfg);
  cfg.seed = 7;
  CHECK(Generate(lm, cfg) == greedy);
  REQUIRE_FALSE(greedy.empty());
  CHECK(greedy[0] == "床");
}

TEST_CASE("sample corpus naming and seeds") {
  const NgramLM lm = NgramLM::Fit(OneDoc("abcabcabd"), 2, 0.1);
  SamplingConfig cfg;
  cfg.p = 0.95;
  cfg.seed = 10;
  cfg.max_tokens = 16;
  const Corpus c = SampleCorpus(lm, cfg, 3);
  REQUIRE(c.size() == 3);
  CHECK(c.documents()[0].id == "gen-p0.95-000000");
  CHECK(c.documents()[2].id == "gen-p0.95-000002");
  CHECK(c.documents()[1].source == "generated-p0.95");
  SamplingConfig one = cfg;
  one.seed = 11;
  std::string text;
  for (const auto& t : Generate(lm, one)) text += t;
  CHECK(c.documents()[1].raw_text == text);
  CHECK(SourceTagForP(0.8) == "generated-p0.80");
  CHECK(SourceTagForP(0.925) == "generated-p0.925");
}

TEST_CASE("sampling config validation") {
  SamplingConfig cfg;
  cfg.p = 0;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg.p = 1.5;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg.p = 0.9;
  cfg.max_tokens = 0;
  CHECK_THROWS_AS(cfg.Validate(), Error);
}

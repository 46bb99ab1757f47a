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

#include "lyriceval/lyriceval.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include "lyriceval/annotations.hpp"
#include "lyriceval/cleaning.hpp"
#include "lyriceval/corpus.hpp"
#include "lyriceval/divergence.hpp"
#include "lyriceval/error.hpp"
#include "lyriceval/featurize.hpp"
#include "lyriceval/frechet.hpp"
#include "lyriceval/hash.hpp"
#include "lyriceval/json_io.hpp"
#include "lyriceval/ngram_metrics.hpp"
#include "lyriceval/parallel.hpp"
#include "lyriceval/report.hpp"
#include "lyriceval/sampling.hpp"

struct le_corpus {
  lyriceval::Corpus value;
};
struct le_rules {
  lyriceval::CleaningRuleSet value;
};
struct le_features {
  lyriceval::FeatureSet value;
};
struct le_lm {
  lyriceval::NgramLM value;
};
struct le_annotations {
  lyriceval::AnnotationSet value;
};

namespace {

thread_local std::string g_last_error;

le_status ToStatus(lyriceval::ErrorCode code) {
  switch (code) {
    case lyriceval::ErrorCode::kInvalidArgument: return LE_ERR_INVALID_ARGUMENT;
    case lyriceval::ErrorCode::kIo: return LE_ERR_IO;
    case lyriceval::ErrorCode::kParse: return LE_ERR_PARSE;
    case lyriceval::ErrorCode::kUndefined: return LE_ERR_UNDEFINED;
    case lyriceval::ErrorCode::kInternal: return LE_ERR_INTERNAL;
  }
  return LE_ERR_INTERNAL;
}

template <typename F>
le_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return LE_OK;
  } catch (const lyriceval::Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LE_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return LE_ERR_INTERNAL;
  }
}

void NeedPointer(const void* p, const char* name) {
  if (p == nullptr) {
    lyriceval::Fail(lyriceval::ErrorCode::kInvalidArgument, std::string(name) + " is NULL");
  }
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

lyriceval::HashedNgramConfig FromC(const le_hash_config* cfg) {
  lyriceval::HashedNgramConfig out;
  if (cfg != nullptr) {
    out.min_n = cfg->min_n;
    out.max_n = cfg->max_n;
    out.dim = cfg->dim;
    out.max_length = cfg->max_length;
    out.seed = cfg->seed;
  }
  return out;
}

lyriceval::MauveConfig FromC(const le_mauve_config* cfg) {
  lyriceval::MauveConfig out;
  if (cfg != nullptr) {
    out.k = cfg->k;
    out.c = cfg->c;
    out.epsilon = cfg->epsilon;
    out.grid_size = cfg->grid_size;
    out.seed = cfg->seed;
    out.max_iterations = cfg->max_iterations;
    out.kmeans_restarts = cfg->kmeans_restarts;
    out.max_samples_per_side = cfg->max_samples_per_side;
  }
  return out;
}

std::vector<std::string> PromptTokens(const char* prompt) {
  if (prompt == nullptr) return {};
  return lyriceval::Tokenize(prompt, lyriceval::TokenScheme::kUnicodeScalar).tokens;
}

lyriceval::TokenSequence TokensOf(const char* text, const char* scheme) {
  NeedPointer(text, "text");
  NeedPointer(scheme, "scheme");
  return lyriceval::Tokenize(text, lyriceval::ParseTokenScheme(scheme));
}

}  // namespace

extern "C" {

const char* le_version(void) { return "0.1.0"; }

const char* le_last_error(void) { return g_last_error.c_str(); }

void le_string_free(char* s) { std::free(s); }

void le_set_threads(unsigned n) { lyriceval::SetThreadCount(n); }

void le_hash_config_init(le_hash_config* cfg) {
  if (cfg == nullptr) return;
  const lyriceval::HashedNgramConfig d;
  cfg->min_n = static_cast<uint32_t>(d.min_n);
  cfg->max_n = static_cast<uint32_t>(d.max_n);
  cfg->dim = static_cast<uint32_t>(d.dim);
  cfg->max_length = static_cast<uint32_t>(d.max_length);
  cfg->seed = d.seed;
}

void le_mauve_config_init(le_mauve_config* cfg) {
  if (cfg == nullptr) return;
  const lyriceval::MauveConfig d;
  cfg->k = static_cast<uint32_t>(d.k);
  cfg->c = d.c;
  cfg->epsilon = d.epsilon;
  cfg->grid_size = static_cast<uint32_t>(d.grid_size);
  cfg->seed = d.seed;
  cfg->max_iterations = static_cast<uint32_t>(d.max_iterations);
  cfg->kmeans_restarts = static_cast<uint32_t>(d.kmeans_restarts);
  cfg->max_samples_per_side = static_cast<uint32_t>(d.max_samples_per_side);
}

void le_sample_config_init(le_sample_config* cfg) {
  if (cfg == nullptr) return;
  cfg->p = 0.95;
  cfg->max_tokens = 128;
  cfg->seed = 0;
  cfg->prompt = nullptr;
  cfg->count = 200;
}

void le_sweep_config_init(le_sweep_config* cfg) {
  if (cfg == nullptr) return;
  const lyriceval::SweepConfig d;
  cfg->ps = nullptr;
  cfg->ps_count = 0;
  cfg->samples_per_p = static_cast<uint32_t>(d.samples_per_p);
  cfg->max_tokens = static_cast<uint32_t>(d.max_tokens);
  cfg->order = static_cast<uint32_t>(d.order);
  cfg->alpha = d.alpha;
  cfg->seed = d.seed;
  cfg->prompt = nullptr;
  cfg->holdout_every = static_cast<uint32_t>(d.holdout_every);
  cfg->scheme = "unicode-scalar";
  le_hash_config_init(&cfg->features);
  le_mauve_config_init(&cfg->mauve);
}

le_status le_corpus_load(const char* path, const char* format, le_corpus** out) {
  return Guard([&] {
    NeedPointer(path, "path");
    NeedPointer(out, "out");
    const auto fmt = lyriceval::ParseCorpusFormat(format == nullptr ? "jsonl" : format);
    *out = new le_corpus{lyriceval::LoadCorpus(path, fmt)};
  });
}

le_status le_corpus_save(const le_corpus* corpus, const char* path) {
  return Guard([&] {
    NeedPointer(corpus, "corpus");
    NeedPointer(path, "path");
    lyriceval::SaveCorpusJsonl(corpus->value, path);
  });
}

size_t le_corpus_size(const le_corpus* corpus) {
  return corpus == nullptr ? 0 : corpus->value.size();
}

void le_corpus_free(le_corpus* corpus) { delete corpus; }

le_status le_rules_default(le_rules** out) {
  return Guard([&] {
    NeedPointer(out, "out");
    *out = new le_rules{lyriceval::CleaningRuleSet::Default()};
  });
}

le_status le_rules_load(const char* path, le_rules** out) {
  return Guard([&] {
    NeedPointer(path, "path");
    NeedPointer(out, "out");
    *out = new le_rules{lyriceval::CleaningRuleSet::Load(path)};
  });
}

void le_rules_free(le_rules* rules) { delete rules; }

le_status le_clean_text(const char* raw, const le_rules* rules, char** out) {
  return Guard([&] {
    NeedPointer(raw, "raw");
    NeedPointer(rules, "rules");
    NeedPointer(out, "out");
    *out = CopyString(lyriceval::CleanText(raw, rules->value));
  });
}

le_status le_corpus_clean(le_corpus* corpus, const le_rules* rules) {
  return Guard([&] {
    NeedPointer(corpus, "corpus");
    NeedPointer(rules, "rules");
    lyriceval::CleanCorpus(corpus->value, rules->value);
  });
}

le_status le_corpus_stats_json(const le_corpus* corpus, const char* scheme, int use_raw,
                               char** json_out) {
  return Guard([&] {
    NeedPointer(corpus, "corpus");
    NeedPointer(scheme, "scheme");
    NeedPointer(json_out, "json_out");
    const auto s = lyriceval::ParseTokenScheme(scheme);
    const auto stats = lyriceval::ComputeCorpusStats(corpus->value, s, use_raw != 0);
    *json_out = CopyString(lyriceval::DumpJson(lyriceval::ToJson(stats, s, use_raw != 0)));
  });
}

le_status le_rep_n(const char* text, const char* scheme, unsigned n, double* out) {
  return Guard([&] {
    NeedPointer(out, "out");
    *out = lyriceval::RepN(TokensOf(text, scheme), n);
  });
}

le_status le_distinct_n(const char* text, const char* scheme, unsigned n, double* out) {
  return Guard([&] {
    NeedPointer(out, "out");
    *out = lyriceval::DistinctN(TokensOf(text, scheme), n);
  });
}

le_status le_diversity(const char* text, const char* scheme, double* out) {
  return Guard([&] {
    NeedPointer(out, "out");
    *out = lyriceval::Diversity(TokensOf(text, scheme));
  });
}

le_status le_metrics_json(const le_corpus* corpus, const char* scheme, const unsigned* ns,
                          size_t ns_count, int pooled, char** json_out) {
  return Guard([&] {
    NeedPointer(corpus, "corpus");
    NeedPointer(scheme, "scheme");
    NeedPointer(json_out, "json_out");
    std::vector<std::size_t> orders = {2, 3, 4};
    if (ns != nullptr && ns_count > 0) orders.assign(ns, ns + ns_count);
    const auto s = lyriceval::ParseTokenScheme(scheme);
    const auto report = lyriceval::CorpusDegeneration(corpus->value, s, orders, pooled != 0);
    *json_out = CopyString(lyriceval::DumpJson(lyriceval::ToJson(report, s)));
  });
}

le_status le_features_hashed(const le_corpus* corpus, const le_hash_config* cfg,
                             le_features** out) {
  return Guard([&] {
    NeedPointer(corpus, "corpus");
    NeedPointer(out, "out");
    *out = new le_features{lyriceval::HashedNgramFeatures(corpus->value, FromC(cfg))};
  });
}

le_status le_features_load(const char* path, le_features** out) {
  return Guard([&] {
    NeedPointer(path, "path");
    NeedPointer(out, "out");
    *out = new le_features{lyriceval::LoadFeatures(path)};
  });
}

le_status le_features_save_csv(const le_features* features, const char* path) {
  return Guard([&] {
    NeedPointer(features, "features");
    NeedPointer(path, "path");
    lyriceval::SaveFeaturesCsv(features->value, path);
  });
}

size_t le_features_rows(const le_features* f) { return f == nullptr ? 0 : f->value.rows(); }

size_t le_features_dim(const le_features* f) { return f == nullptr ? 0 : f->value.dim(); }

void le_features_free(le_features* features) { delete features; }

le_status le_kl_divergence(const double* p, const double* q, size_t n, double* out) {
  return Guard([&] {
    NeedPointer(p, "p");
    NeedPointer(q, "q");
    NeedPointer(out, "out");
    *out = lyriceval::KlDivergence({p, n}, {q, n});
  });
}

le_status le_mauve(const le_features* p, const le_features* q, const le_mauve_config* cfg,
                   double* score) {
  return Guard([&] {
    NeedPointer(p, "p");
    NeedPointer(q, "q");
    NeedPointer(score, "score");
    *score = lyriceval::ComputeMauve(p->value, q->value, FromC(cfg)).score;
  });
}

le_status le_mauve_json(const le_features* p, const le_features* q, const le_mauve_config* cfg,
                        char** json_out) {
  return Guard([&] {
    NeedPointer(p, "p");
    NeedPointer(q, "q");
    NeedPointer(json_out, "json_out");
    const auto result = lyriceval::ComputeMauve(p->value, q->value, FromC(cfg));
    *json_out = CopyString(lyriceval::DumpJson(lyriceval::ToJson(result, true)));
  });
}

le_status le_frechet(const le_features* a, const le_features* b, double* out) {
  return Guard([&] {
    NeedPointer(a, "a");
    NeedPointer(b, "b");
    NeedPointer(out, "out");
    *out = lyriceval::FrechetDistance(lyriceval::EstimateGaussian(a->value),
                                      lyriceval::EstimateGaussian(b->value));
  });
}

le_status le_frechet_json(const le_features* a, const le_features* b, char** json_out) {
  return Guard([&] {
    NeedPointer(a, "a");
    NeedPointer(b, "b");
    NeedPointer(json_out, "json_out");
    const auto ga = lyriceval::EstimateGaussian(a->value);
    const auto gb = lyriceval::EstimateGaussian(b->value);
    const double d = lyriceval::FrechetDistance(ga, gb);
    *json_out = CopyString(lyriceval::DumpJson(lyriceval::FrechetJson(ga, gb, d)));
  });
}

le_status le_top_p_filter(const double* probs, size_t n, double p, double* out) {
  return Guard([&] {
    NeedPointer(probs, "probs");
    NeedPointer(out, "out");
    lyriceval::Distribution dist{{probs, probs + n}};
    const auto filtered = lyriceval::TopPFilter(dist, p);
    std::copy(filtered.probs.begin(), filtered.probs.end(), out);
  });
}

le_status le_lm_fit(const le_corpus* corpus, unsigned order, double alpha, le_lm** out) {
  return Guard([&] {
    NeedPointer(corpus, "corpus");
    NeedPointer(out, "out");
    *out = new le_lm{lyriceval::NgramLM::Fit(corpus->value, order, alpha)};
  });
}

size_t le_lm_vocab_size(const le_lm* lm) { return lm == nullptr ? 0 : lm->value.vocab().size(); }

le_status le_lm_sample(const le_lm* lm, const le_sample_config* cfg, le_corpus** out) {
  return Guard([&] {
    NeedPointer(lm, "lm");
    NeedPointer(cfg, "cfg");
    NeedPointer(out, "out");
    lyriceval::SamplingConfig sc;
    sc.p = cfg->p;
    sc.max_tokens = cfg->max_tokens;
    sc.seed = cfg->seed;
    sc.prompt = PromptTokens(cfg->prompt);
    *out = new le_corpus{lyriceval::SampleCorpus(lm->value, sc, cfg->count)};
  });
}

void le_lm_free(le_lm* lm) { delete lm; }

le_status le_annotations_load(const char* path, le_annotations** out) {
  return Guard([&] {
    NeedPointer(path, "path");
    NeedPointer(out, "out");
    *out = new le_annotations{lyriceval::LoadResponses(path)};
  });
}

size_t le_annotations_size(const le_annotations* set) {
  return set == nullptr ? 0 : set->value.responses.size();
}

le_status le_normalize_score(int raw_value, int level_count, double* out) {
  return Guard([&] {
    NeedPointer(out, "out");
    *out = lyriceval::NormalizeScore(raw_value, level_count);
  });
}

le_status le_agreement_json(const le_annotations* set, int with_alpha, char** json_out) {
  return Guard([&] {
    NeedPointer(set, "set");
    NeedPointer(json_out, "json_out");
    const auto report = lyriceval::AnalyzeAnnotations(set->value, with_alpha != 0);
    *json_out = CopyString(lyriceval::DumpJson(lyriceval::ToJson(report, with_alpha != 0)));
  });
}

void le_annotations_free(le_annotations* set) { delete set; }

le_status le_sweep_report(const le_corpus* corpus, const le_rules* rules,
                          const le_sweep_config* cfg, char** json_out, char** table_out) {
  return Guard([&] {
    NeedPointer(corpus, "corpus");
    NeedPointer(cfg, "cfg");
    lyriceval::SweepConfig sc;
    if (cfg->ps != nullptr && cfg->ps_count > 0) sc.ps.assign(cfg->ps, cfg->ps + cfg->ps_count);
    sc.samples_per_p = cfg->samples_per_p;
    sc.max_tokens = cfg->max_tokens;
    sc.order = cfg->order;
    sc.alpha = cfg->alpha;
    sc.seed = cfg->seed;
    sc.prompt = PromptTokens(cfg->prompt);
    sc.holdout_every = cfg->holdout_every;
    sc.scheme = lyriceval::ParseTokenScheme(cfg->scheme == nullptr ? "unicode-scalar"
                                                                   : cfg->scheme);
    sc.features = FromC(&cfg->features);
    sc.mauve = FromC(&cfg->mauve);
    const auto default_rules = lyriceval::CleaningRuleSet::Default();
    const auto report =
        lyriceval::RunSweep(corpus->value, rules != nullptr ? rules->value : default_rules, sc);
    if (json_out != nullptr) {
      *json_out = CopyString(lyriceval::DumpJson(lyriceval::ToJson(report, sc)));
    }
    if (table_out != nullptr) *table_out = CopyString(lyriceval::FormatSweepTable(report));
  });
}

le_status le_digest_file(const char* path, char** hex_out) {
  return Guard([&] {
    NeedPointer(path, "path");
    NeedPointer(hex_out, "hex_out");
    namespace fs = std::filesystem;
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      std::string joined;
      for (const auto& f : files) {
        joined += f.filename().string();
        joined.push_back('\0');
        joined += lyriceval::HexDigest(lyriceval::Fnv1a64(lyriceval::ReadFile(f)));
        joined.push_back('\n');
      }
      *hex_out = CopyString(lyriceval::HexDigest(lyriceval::Fnv1a64(joined)));
      return;
    }
    *hex_out = CopyString(lyriceval::HexDigest(lyriceval::Fnv1a64(lyriceval::ReadFile(path))));
  });
}

}  // extern "C"

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

/* C interface to lyriceval. Objects are opaque handles created by *_load /
 * *_fit style calls and released with the matching *_free. Every call that
 * can fail returns an le_status; on failure le_last_error() describes the
 * problem (per thread). Strings returned through char** out-parameters are
 * owned by the caller and released with le_string_free. */
#ifndef LYRICEVAL_LYRICEVAL_H_
#define LYRICEVAL_LYRICEVAL_H_

#include <stddef.h>
#include <stdint.h>

#if defined(LE_BUILDING_LIBRARY)
#define LE_API __attribute__((visibility("default")))
#else
#define LE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum le_status {
  LE_OK = 0,
  LE_ERR_INVALID_ARGUMENT = 1,
  LE_ERR_IO = 2,
  LE_ERR_PARSE = 3,
  LE_ERR_UNDEFINED = 4,
  LE_ERR_INTERNAL = 5
} le_status;

typedef struct le_corpus le_corpus;
typedef struct le_rules le_rules;
typedef struct le_features le_features;
typedef struct le_lm le_lm;
typedef struct le_annotations le_annotations;

typedef struct le_hash_config {
  uint32_t min_n;      /* default 1 */
  uint32_t max_n;      /* default 3 */
  uint32_t dim;        /* default 1024 */
  uint32_t max_length; /* default 128 */
  uint64_t seed;       /* default 0 */
} le_hash_config;

typedef struct le_mauve_config {
  uint32_t k; /* 0 selects max(2, min(500, (|P| + |Q|) / 10)) */
  double c;   /* default 5 */
  double epsilon;
  uint32_t grid_size;
  uint64_t seed;
  uint32_t max_iterations;
  uint32_t kmeans_restarts;
  uint32_t max_samples_per_side; /* 0 disables subsampling */
} le_mauve_config;

typedef struct le_sample_config {
  double p;
  uint32_t max_tokens;
  uint64_t seed;      /* sequence i uses seed + i */
  const char* prompt; /* UTF-8, may be NULL */
  uint32_t count;
} le_sample_config;

typedef struct le_sweep_config {
  const double* ps;
  size_t ps_count;
  uint32_t samples_per_p;
  uint32_t max_tokens;
  uint32_t order;
  double alpha;
  uint64_t seed;
  const char* prompt;
  uint32_t holdout_every;
  const char* scheme;
  le_hash_config features;
  le_mauve_config mauve;
} le_sweep_config;

LE_API const char* le_version(void);
LE_API const char* le_last_error(void);
LE_API void le_string_free(char* s);
/* 0 selects the hardware concurrency. */
LE_API void le_set_threads(unsigned n);

LE_API void le_hash_config_init(le_hash_config* cfg);
LE_API void le_mauve_config_init(le_mauve_config* cfg);
LE_API void le_sample_config_init(le_sample_config* cfg);
/* Leaves ps NULL (meaning 0.80, 0.85, 0.90, 0.95, 0.99). */
LE_API void le_sweep_config_init(le_sweep_config* cfg);

/* Corpus. format is "jsonl" or "plain-dir". */
LE_API le_status le_corpus_load(const char* path, const char* format, le_corpus** out);
LE_API le_status le_corpus_save(const le_corpus* corpus, const char* path);
LE_API size_t le_corpus_size(const le_corpus* corpus);
LE_API void le_corpus_free(le_corpus* corpus);

LE_API le_status le_rules_default(le_rules** out);
LE_API le_status le_rules_load(const char* path, le_rules** out);
LE_API void le_rules_free(le_rules* rules);

LE_API le_status le_clean_text(const char* raw, const le_rules* rules, char** out);
LE_API le_status le_corpus_clean(le_corpus* corpus, const le_rules* rules);
/* scheme is "unicode-scalar" or "whitespace". */
LE_API le_status le_corpus_stats_json(const le_corpus* corpus, const char* scheme, int use_raw,
                                      char** json_out);

/* Degeneration metrics. */
LE_API le_status le_rep_n(const char* text, const char* scheme, unsigned n, double* out);
LE_API le_status le_distinct_n(const char* text, const char* scheme, unsigned n, double* out);
LE_API le_status le_diversity(const char* text, const char* scheme, double* out);
LE_API le_status le_metrics_json(const le_corpus* corpus, const char* scheme, const unsigned* ns,
                                 size_t ns_count, int pooled, char** json_out);

/* Features. */
LE_API le_status le_features_hashed(const le_corpus* corpus, const le_hash_config* cfg,
                                    le_features** out);
LE_API le_status le_features_load(const char* path, le_features** out);
LE_API le_status le_features_save_csv(const le_features* features, const char* path);
LE_API size_t le_features_rows(const le_features* features);
LE_API size_t le_features_dim(const le_features* features);
LE_API void le_features_free(le_features* features);

/* Divergence scoring. */
LE_API le_status le_kl_divergence(const double* p, const double* q, size_t n, double* out);
LE_API le_status le_mauve(const le_features* p, const le_features* q, const le_mauve_config* cfg,
                          double* score);
LE_API le_status le_mauve_json(const le_features* p, const le_features* q,
                               const le_mauve_config* cfg, char** json_out);

/* Frechet distance (squared) between Gaussian fits of two feature sets. */
LE_API le_status le_frechet(const le_features* a, const le_features* b, double* out);
LE_API le_status le_frechet_json(const le_features* a, const le_features* b, char** json_out);

/* Sampling. */
LE_API le_status le_top_p_filter(const double* probs, size_t n, double p, double* out);
LE_API le_status le_lm_fit(const le_corpus* corpus, unsigned order, double alpha, le_lm** out);
LE_API size_t le_lm_vocab_size(const le_lm* lm);
LE_API le_status le_lm_sample(const le_lm* lm, const le_sample_config* cfg, le_corpus** out);
LE_API void le_lm_free(le_lm* lm);

/* Annotations. */
LE_API le_status le_annotations_load(const char* path, le_annotations** out);
LE_API size_t le_annotations_size(const le_annotations* set);
LE_API le_status le_normalize_score(int raw_value, int level_count, double* out);
/* Filters, aggregates, and with with_alpha != 0 adds Krippendorff's ordinal
 * alpha per attribute. */
LE_API le_status le_agreement_json(const le_annotations* set, int with_alpha, char** json_out);
LE_API void le_annotations_free(le_annotations* set);

/* End-to-end p sweep over a training corpus. Both outputs are optional. */
LE_API le_status le_sweep_report(const le_corpus* corpus, const le_rules* rules,
                                 const le_sweep_config* cfg, char** json_out, char** table_out);

/* Content digest of a file (FNV-1a 64, lowercase hex). */
LE_API le_status le_digest_file(const char* path, char** hex_out);

#ifdef __cplusplus
}
#endif

#endif /* LYRICEVAL_LYRICEVAL_H_ */

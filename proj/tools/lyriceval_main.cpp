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

// lyriceval command-line driver. Every subcommand goes through the C API in
// liblyriceval; this file only parses flags, moves files, and writes run
// manifests.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lyriceval/lyriceval.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct CliError {
  int exit_code;
  std::string kind;
  std::string message;
};

void Check(le_status status) {
  if (status == LE_OK) return;
  const std::string message = le_last_error();
  switch (status) {
    case LE_ERR_IO: throw CliError{kExitIo, "io", message};
    case LE_ERR_PARSE: throw CliError{kExitValidation, "parse", message};
    case LE_ERR_UNDEFINED: throw CliError{kExitValidation, "undefined", message};
    case LE_ERR_INVALID_ARGUMENT: throw CliError{kExitValidation, "invalid-argument", message};
    default: throw CliError{kExitValidation, "internal", message};
  }
}

// Owning wrappers for C handles and strings.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (ptr != nullptr) Free(ptr);
  }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Corpus = Handle<le_corpus, le_corpus_free>;
using Rules = Handle<le_rules, le_rules_free>;
using Features = Handle<le_features, le_features_free>;
using Lm = Handle<le_lm, le_lm_free>;
using Annotations = Handle<le_annotations, le_annotations_free>;
using CString = Handle<char, le_string_free>;

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitIo, "io", "cannot open '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteText(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError{kExitIo, "io", "cannot write '" + path + "'"};
  out << content;
  if (!out) throw CliError{kExitIo, "io", "write failed for '" + path + "'"};
}

std::string Digest(const std::string& path) {
  CString hex;
  Check(le_digest_file(path.c_str(), hex.out()));
  return hex.get();
}

// Resolved configuration and input digests for one run. Written next to the
// primary output as <out>.manifest.json.
class Manifest {
 public:
  explicit Manifest(std::string subcommand) : subcommand_(std::move(subcommand)) {}

  template <typename T>
  void Set(const std::string& key, const T& value) {
    config_[key] = value;
  }
  void Input(const std::string& role, const std::string& path) {
    inputs_[role] = {{"path", path}, {"digest", "fnv1a64:" + Digest(path)}};
  }
  void Output(const std::string& path) { outputs_.push_back(path); }

  void WriteFor(const std::string& out_path) const {
    json j;
    j["subcommand"] = subcommand_;
    j["tool_version"] = le_version();
    j["config"] = config_;
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    WriteText(out_path + ".manifest.json", j.dump(2) + "\n");
  }

 private:
  std::string subcommand_;
  json config_ = json::object();
  json inputs_ = json::object();
  json outputs_ = json::array();
};

std::string CorpusFormatFor(const std::string& path, const std::string& requested) {
  if (!requested.empty()) return requested;
  std::error_code ec;
  return std::filesystem::is_directory(path, ec) ? "plain-dir" : "jsonl";
}

void LoadCorpus(const std::string& path, const std::string& format, Corpus& corpus) {
  Check(le_corpus_load(path.c_str(), CorpusFormatFor(path, format).c_str(), corpus.out()));
}

std::vector<unsigned> ParseUnsignedList(const std::string& text) {
  std::vector<unsigned> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw CliError{kExitValidation, "invalid-argument", "bad n value '" + item + "'"};
    }
  }
  if (out.empty()) throw CliError{kExitValidation, "invalid-argument", "--ns is empty"};
  return out;
}

std::vector<double> ParseDoubleList(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw CliError{kExitValidation, "invalid-argument", "bad p value '" + item + "'"};
    }
  }
  if (out.empty()) throw CliError{kExitValidation, "invalid-argument", "--ps is empty"};
  return out;
}

// Features for mauve/fid: feature CSV/JSONL directly, or a corpus (JSONL with
// "text", or a directory) featurized with the hashed n-gram featurizer.
bool LooksLikeCorpus(const std::string& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) return true;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitIo, "io", "cannot open '" + path + "'"};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line, nullptr, false);
    return j.is_object() && j.contains("text") && !j.contains("vector");
  }
  return false;
}

void LoadFeaturesOrCorpus(const std::string& path, const le_hash_config& hash, Features& out) {
  if (!LooksLikeCorpus(path)) {
    Check(le_features_load(path.c_str(), out.out()));
    return;
  }
  Corpus corpus;
  LoadCorpus(path, "", corpus);
  Check(le_features_hashed(corpus.get(), &hash, out.out()));
}

std::string ReadPrompt(const std::string& prompt_file) {
  if (prompt_file.empty()) return {};
  std::string prompt = ReadText(prompt_file);
  while (!prompt.empty() && (prompt.back() == '\n' || prompt.back() == '\r')) prompt.pop_back();
  return prompt;
}

void PrintError(const CliError& e) {
  json j;
  j["error"] = e.kind;
  j["exit"] = e.exit_code;
  j["message"] = e.message;
  std::cerr << j.dump(-1, ' ', false, json::error_handler_t::replace) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lyriceval: evaluation toolkit for open-ended text generation"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = available parallelism)");

  // clean
  std::string clean_in, clean_out, clean_rules, clean_format;
  auto* clean = app.add_subcommand("clean", "strip markup and site boilerplate from a corpus");
  clean->add_option("--in", clean_in, "input corpus (JSONL or directory)")->required();
  clean->add_option("--out", clean_out, "output corpus JSONL")->required();
  clean->add_option("--rules", clean_rules, "cleaning rules file (default: built-in v1)");
  clean->add_option("--format", clean_format, "jsonl | plain-dir (default: by path)");

  // stats
  std::string stats_in, stats_scheme = "unicode-scalar", stats_out, stats_format;
  bool stats_raw = false;
  auto* stats = app.add_subcommand("stats", "corpus statistics");
  stats->add_option("--in", stats_in, "input corpus")->required();
  stats->add_option("--scheme", stats_scheme, "unicode-scalar | whitespace");
  stats->add_flag("--raw", stats_raw, "count raw text instead of cleaned text");
  stats->add_option("--format", stats_format, "jsonl | plain-dir (default: by path)");
  stats->add_option("--out", stats_out, "write JSON here as well as stdout");

  // metrics
  std::string metrics_in, metrics_scheme = "unicode-scalar", metrics_ns = "2,3,4", metrics_out;
  bool metrics_pooled = false;
  auto* metrics = app.add_subcommand("metrics", "rep-n, distinct-n, and diversity");
  metrics->add_option("--in", metrics_in, "input corpus JSONL")->required();
  metrics->add_option("--scheme", metrics_scheme, "unicode-scalar | whitespace");
  metrics->add_option("--ns", metrics_ns, "comma-separated n values");
  metrics->add_flag("--pooled", metrics_pooled, "pool n-gram counts over the corpus");
  metrics->add_option("--out", metrics_out, "report JSON")->required();

  // featurize
  std::string feat_in, feat_out;
  le_hash_config hash;
  le_hash_config_init(&hash);
  auto* featurize = app.add_subcommand("featurize", "hashed character n-gram features");
  featurize->add_option("--in", feat_in, "input corpus")->required();
  featurize->add_option("--dim", hash.dim, "feature dimension");
  featurize->add_option("--max-len", hash.max_length, "characters kept per text");
  featurize->add_option("--min-n", hash.min_n, "smallest n-gram");
  featurize->add_option("--max-n", hash.max_n, "largest n-gram");
  featurize->add_option("--seed", hash.seed, "hash seed");
  featurize->add_option("--out", feat_out, "feature CSV")->required();

  // mauve
  std::string mauve_p, mauve_q, mauve_out;
  le_mauve_config mcfg;
  le_mauve_config_init(&mcfg);
  le_hash_config mauve_hash;
  le_hash_config_init(&mauve_hash);
  auto* mauve = app.add_subcommand("mauve", "divergence-frontier score between two sets");
  mauve->add_option("--p", mauve_p, "reference features or corpus")->required();
  mauve->add_option("--q", mauve_q, "model features or corpus")->required();
  mauve->add_option("--k", mcfg.k, "cluster count (0 = automatic)");
  mauve->add_option("--c", mcfg.c, "scaling constant");
  mauve->add_option("--epsilon", mcfg.epsilon, "histogram smoothing");
  mauve->add_option("--grid", mcfg.grid_size, "interior mixture weights");
  mauve->add_option("--max-iter", mcfg.max_iterations, "k-means iterations");
  mauve->add_option("--restarts", mcfg.kmeans_restarts, "k-means starts (lowest inertia kept)");
  mauve->add_option("--max-samples", mcfg.max_samples_per_side, "rows per side (0 = all)");
  mauve->add_option("--seed", mcfg.seed, "k-means and subsampling seed");
  mauve->add_option("--max-len", mauve_hash.max_length, "characters kept when featurizing");
  mauve->add_option("--dim", mauve_hash.dim, "dimension when featurizing");
  mauve->add_option("--out", mauve_out, "score JSON")->required();

  // fid
  std::string fid_a, fid_b, fid_out;
  auto* fid = app.add_subcommand("fid", "squared Frechet distance between feature sets");
  fid->add_option("--a", fid_a, "first feature file")->required();
  fid->add_option("--b", fid_b, "second feature file")->required();
  fid->add_option("--out", fid_out, "result JSON")->required();

  // sample
  std::string sample_train, sample_prompt_file, sample_out;
  unsigned sample_order = 4;
  double sample_alpha = 0.1;
  le_sample_config scfg;
  le_sample_config_init(&scfg);
  auto* sample = app.add_subcommand("sample", "nucleus sampling from a character n-gram model");
  sample->add_option("--train", sample_train, "training corpus")->required();
  sample->add_option("--order", sample_order, "model order (2-6)");
  sample->add_option("--alpha", sample_alpha, "additive smoothing");
  sample->add_option("--p", scfg.p, "nucleus mass");
  sample->add_option("--n", scfg.count, "sequences to generate");
  sample->add_option("--max-tokens", scfg.max_tokens, "tokens per sequence");
  sample->add_option("--seed", scfg.seed, "first seed; sequence i uses seed + i");
  sample->add_option("--prompt-file", sample_prompt_file, "UTF-8 prompt");
  sample->add_option("--out", sample_out, "generated corpus JSONL")->required();

  // agreement / aggregate
  std::string agree_in, agree_out, aggr_in, aggr_out;
  auto* agreement = app.add_subcommand("agreement", "filter, aggregate, Krippendorff alpha");
  agreement->add_option("--in", agree_in, "responses CSV")->required();
  agreement->add_option("--out", agree_out, "report JSON")->required();
  auto* aggregate = app.add_subcommand("aggregate", "filter and aggregate survey scores");
  aggregate->add_option("--in", aggr_in, "responses CSV")->required();
  aggregate->add_option("--out", aggr_out, "report JSON")->required();

  // report
  std::string report_train, report_ps = "0.80,0.85,0.90,0.95,0.99", report_out, report_table,
                            report_prompt_file, report_rules;
  le_sweep_config wcfg;
  le_sweep_config_init(&wcfg);
  std::string report_scheme = "unicode-scalar";
  auto* report = app.add_subcommand("report", "p sweep: degeneration metrics and mauve table");
  report->add_option("--train", report_train, "corpus to train on and hold out from")->required();
  report->add_option("--ps", report_ps, "comma-separated nucleus masses");
  report->add_option("--seed", wcfg.seed, "first seed");
  report->add_option("--n", wcfg.samples_per_p, "sequences per p");
  report->add_option("--max-tokens", wcfg.max_tokens, "tokens per sequence");
  report->add_option("--order", wcfg.order, "model order (2-6)");
  report->add_option("--alpha", wcfg.alpha, "additive smoothing");
  report->add_option("--holdout-every", wcfg.holdout_every, "every n-th document is reference");
  report->add_option("--scheme", report_scheme, "unicode-scalar | whitespace");
  report->add_option("--dim", wcfg.features.dim, "feature dimension");
  report->add_option("--min-n", wcfg.features.min_n, "smallest feature n-gram");
  report->add_option("--max-n", wcfg.features.max_n, "largest feature n-gram");
  report->add_option("--max-len", wcfg.features.max_length, "characters kept when featurizing");
  report->add_option("--k", wcfg.mauve.k, "cluster count (0 = automatic)");
  report->add_option("--c", wcfg.mauve.c, "scaling constant");
  report->add_option("--restarts", wcfg.mauve.kmeans_restarts, "k-means starts");
  report->add_option("--prompt-file", report_prompt_file, "UTF-8 prompt");
  report->add_option("--rules", report_rules, "cleaning rules file");
  report->add_option("--out", report_out, "report JSON");
  report->add_option("--table", report_table, "aligned text table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << app.help() << "\n";
    PrintError({kExitValidation, "usage", e.what()});
    return kExitValidation;
  }

  le_set_threads(threads);
  const unsigned resolved_threads =
      threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());

  try {
    if (*clean) {
      Manifest m("clean");
      m.Set("format", CorpusFormatFor(clean_in, clean_format));
      m.Set("rules", clean_rules.empty() ? std::string("builtin:default_v1") : clean_rules);
      m.Set("threads", resolved_threads);
      m.Input("in", clean_in);
      if (!clean_rules.empty()) m.Input("rules", clean_rules);
      Corpus corpus;
      LoadCorpus(clean_in, clean_format, corpus);
      Rules rules;
      if (clean_rules.empty()) {
        Check(le_rules_default(rules.out()));
      } else {
        Check(le_rules_load(clean_rules.c_str(), rules.out()));
      }
      Check(le_corpus_clean(corpus.get(), rules.get()));
      Check(le_corpus_save(corpus.get(), clean_out.c_str()));
      m.Output(clean_out);
      m.WriteFor(clean_out);
    } else if (*stats) {
      Corpus corpus;
      LoadCorpus(stats_in, stats_format, corpus);
      CString out;
      Check(le_corpus_stats_json(corpus.get(), stats_scheme.c_str(), stats_raw ? 1 : 0,
                                 out.out()));
      std::cout << out.get();
      if (!stats_out.empty()) {
        Manifest m("stats");
        m.Set("scheme", stats_scheme);
        m.Set("raw", stats_raw);
        m.Set("threads", resolved_threads);
        m.Input("in", stats_in);
        WriteText(stats_out, out.get());
        m.Output(stats_out);
        m.WriteFor(stats_out);
      }
    } else if (*metrics) {
      const auto ns = ParseUnsignedList(metrics_ns);
      Manifest m("metrics");
      m.Set("scheme", metrics_scheme);
      m.Set("ns", ns);
      m.Set("pooled", metrics_pooled);
      m.Set("threads", resolved_threads);
      m.Input("in", metrics_in);
      Corpus corpus;
      LoadCorpus(metrics_in, "", corpus);
      CString out;
      Check(le_metrics_json(corpus.get(), metrics_scheme.c_str(), ns.data(), ns.size(),
                            metrics_pooled ? 1 : 0, out.out()));
      WriteText(metrics_out, out.get());
      m.Output(metrics_out);
      m.WriteFor(metrics_out);
    } else if (*featurize) {
      Manifest m("featurize");
      m.Set("dim", hash.dim);
      m.Set("max_len", hash.max_length);
      m.Set("min_n", hash.min_n);
      m.Set("max_n", hash.max_n);
      m.Set("seed", hash.seed);
      m.Set("hash", "fnv1a64+splitmix64");
      m.Set("threads", resolved_threads);
      m.Input("in", feat_in);
      Corpus corpus;
      LoadCorpus(feat_in, "", corpus);
      Features features;
      Check(le_features_hashed(corpus.get(), &hash, features.out()));
      Check(le_features_save_csv(features.get(), feat_out.c_str()));
      m.Output(feat_out);
      m.WriteFor(feat_out);
    } else if (*mauve) {
      Manifest m("mauve");
      m.Set("k", mcfg.k);
      m.Set("c", mcfg.c);
      m.Set("epsilon", mcfg.epsilon);
      m.Set("grid_size", mcfg.grid_size);
      m.Set("max_iterations", mcfg.max_iterations);
      m.Set("kmeans_restarts", mcfg.kmeans_restarts);
      m.Set("max_samples_per_side", mcfg.max_samples_per_side);
      m.Set("seed", mcfg.seed);
      m.Set("featurize_dim", mauve_hash.dim);
      m.Set("featurize_max_len", mauve_hash.max_length);
      m.Set("threads", resolved_threads);
      m.Input("p", mauve_p);
      m.Input("q", mauve_q);
      Features p, q;
      LoadFeaturesOrCorpus(mauve_p, mauve_hash, p);
      LoadFeaturesOrCorpus(mauve_q, mauve_hash, q);
      CString out;
      Check(le_mauve_json(p.get(), q.get(), &mcfg, out.out()));
      WriteText(mauve_out, out.get());
      m.Output(mauve_out);
      m.WriteFor(mauve_out);
    } else if (*fid) {
      Manifest m("fid");
      m.Set("threads", resolved_threads);
      m.Input("a", fid_a);
      m.Input("b", fid_b);
      Features a, b;
      Check(le_features_load(fid_a.c_str(), a.out()));
      Check(le_features_load(fid_b.c_str(), b.out()));
      CString out;
      Check(le_frechet_json(a.get(), b.get(), out.out()));
      WriteText(fid_out, out.get());
      m.Output(fid_out);
      m.WriteFor(fid_out);
    } else if (*sample) {
      Manifest m("sample");
      m.Set("order", sample_order);
      m.Set("alpha", sample_alpha);
      m.Set("p", scfg.p);
      m.Set("n", scfg.count);
      m.Set("max_tokens", scfg.max_tokens);
      m.Set("seed", scfg.seed);
      m.Set("threads", resolved_threads);
      m.Input("train", sample_train);
      if (!sample_prompt_file.empty()) m.Input("prompt", sample_prompt_file);
      const std::string prompt = ReadPrompt(sample_prompt_file);
      scfg.prompt = prompt.c_str();
      Corpus train;
      LoadCorpus(sample_train, "", train);
      Lm lm;
      Check(le_lm_fit(train.get(), sample_order, sample_alpha, lm.out()));
      Corpus generated;
      Check(le_lm_sample(lm.get(), &scfg, generated.out()));
      Check(le_corpus_save(generated.get(), sample_out.c_str()));
      m.Output(sample_out);
      m.WriteFor(sample_out);
    } else if (*agreement || *aggregate) {
      const bool with_alpha = agreement->parsed();
      const std::string& in = with_alpha ? agree_in : aggr_in;
      const std::string& out_path = with_alpha ? agree_out : aggr_out;
      Manifest m(with_alpha ? "agreement" : "aggregate");
      m.Set("std_convention", "population");
      m.Set("threads", resolved_threads);
      m.Input("in", in);
      Annotations set;
      Check(le_annotations_load(in.c_str(), set.out()));
      CString out;
      Check(le_agreement_json(set.get(), with_alpha ? 1 : 0, out.out()));
      WriteText(out_path, out.get());
      m.Output(out_path);
      m.WriteFor(out_path);
    } else if (*report) {
      const auto ps = ParseDoubleList(report_ps);
      wcfg.ps = ps.data();
      wcfg.ps_count = ps.size();
      wcfg.scheme = report_scheme.c_str();
      const std::string prompt = ReadPrompt(report_prompt_file);
      wcfg.prompt = prompt.c_str();
      Manifest m("report");
      m.Set("ps", ps);
      m.Set("seed", wcfg.seed);
      m.Set("n", wcfg.samples_per_p);
      m.Set("max_tokens", wcfg.max_tokens);
      m.Set("order", wcfg.order);
      m.Set("alpha", wcfg.alpha);
      m.Set("holdout_every", wcfg.holdout_every);
      m.Set("scheme", report_scheme);
      m.Set("dim", wcfg.features.dim);
      m.Set("min_n", wcfg.features.min_n);
      m.Set("max_n", wcfg.features.max_n);
      m.Set("max_len", wcfg.features.max_length);
      m.Set("k", wcfg.mauve.k);
      m.Set("c", wcfg.mauve.c);
      m.Set("kmeans_restarts", wcfg.mauve.kmeans_restarts);
      m.Set("rules", report_rules.empty() ? std::string("builtin:default_v1") : report_rules);
      m.Set("threads", resolved_threads);
      m.Input("train", report_train);
      if (!report_prompt_file.empty()) m.Input("prompt", report_prompt_file);
      if (!report_rules.empty()) m.Input("rules", report_rules);
      Corpus corpus;
      LoadCorpus(report_train, "", corpus);
      Rules rules;
      if (report_rules.empty()) {
        Check(le_rules_default(rules.out()));
      } else {
        Check(le_rules_load(report_rules.c_str(), rules.out()));
      }
      CString json_text, table;
      Check(le_sweep_report(corpus.get(), rules.get(), &wcfg, json_text.out(), table.out()));
      std::cout << table.get();
      if (!report_out.empty()) {
        WriteText(report_out, json_text.get());
        m.Output(report_out);
      }
      if (!report_table.empty()) {
        WriteText(report_table, table.get());
        m.Output(report_table);
      }
      if (!report_out.empty()) {
        m.WriteFor(report_out);
      } else if (!report_table.empty()) {
        m.WriteFor(report_table);
      }
    }
  } catch (const CliError& e) {
    PrintError(e);
    return e.exit_code;
  } catch (const std::exception& e) {
    PrintError({kExitValidation, "internal", e.what()});
    return kExitValidation;
  }
  return kExitOk;
}

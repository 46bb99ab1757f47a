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

#include "lyriceval/json_io.hpp"

namespace lyriceval {

using nlohmann::json;

json ToJson(const CorpusStats& stats, TokenScheme scheme, bool use_raw) {
  json j;
  j["song_count"] = stats.song_count;
  j["token_count"] = stats.token_count;
  j["byte_size"] = stats.byte_size;
  j["artist_count"] = stats.artist_count ? json(*stats.artist_count) : json(nullptr);
  j["scheme"] = std::string(TokenSchemeName(scheme));
  j["text"] = use_raw ? "raw" : "clean";
  return j;
}

json ToJson(const DegenerationMetrics& m) {
  json j;
  for (const auto& [n, v] : m.rep) j["rep_" + std::to_string(n)] = v;
  for (const auto& [n, v] : m.distinct) j["distinct_" + std::to_string(n)] = v;
  j["diversity"] = m.diversity;
  return j;
}

json ToJson(const DegenerationReport& report, TokenScheme scheme) {
  json j;
  j["n_values"] = report.n_values;
  j["scheme"] = std::string(TokenSchemeName(scheme));
  j["aggregation"] = report.pooled ? "pooled" : "mean-of-documents";
  j["corpus_mean"] = ToJson(report.corpus_mean);
  json docs = json::array();
  for (std::size_t i = 0; i < report.ids.size(); ++i) {
    json d = ToJson(report.per_document[i]);
    d["id"] = report.ids[i];
    docs.push_back(std::move(d));
  }
  j["per_document"] = std::move(docs);
  j["warnings"] = report.warnings;
  return j;
}

json ToJson(const MauveConfig& cfg) {
  json j;
  j["k"] = cfg.k;
  j["c"] = cfg.c;
  j["epsilon"] = cfg.epsilon;
  j["grid_size"] = cfg.grid_size;
  j["seed"] = cfg.seed;
  j["max_iterations"] = cfg.max_iterations;
  j["kmeans_restarts"] = cfg.kmeans_restarts;
  j["max_samples_per_side"] = cfg.max_samples_per_side;
  return j;
}

json ToJson(const MauveResult& result, bool with_curve) {
  json j;
  j["score"] = result.score;
  j["config"] = ToJson(result.config);
  j["k_used"] = result.pair.k;
  j["p_rows"] = result.p_rows_used;
  j["q_rows"] = result.q_rows_used;
  j["hist_p_entropy"] = Entropy(result.pair.hist_p);
  j["hist_q_entropy"] = Entropy(result.pair.hist_q);
  j["hist_p"] = result.pair.hist_p;
  j["hist_q"] = result.pair.hist_q;
  j["warnings"] = result.pair.warnings;
  if (with_curve) {
    json pts = json::array();
    for (const auto& pt : result.curve.points) {
      pts.push_back({{"lambda", pt.lambda}, {"x", pt.x}, {"y", pt.y}});
    }
    j["frontier"] = std::move(pts);
  }
  return j;
}

json FrechetJson(const GaussianStats& a, const GaussianStats& b, double distance) {
  json j;
  j["fid"] = distance;
  j["dim"] = a.mean.size();
  j["n_a"] = a.n;
  j["n_b"] = b.n;
  j["convention"] = "squared distance; unbiased covariance (n-1)";
  return j;
}

json ToJson(const AgreementReport& report, bool with_alpha) {
  json j;
  json attrs = json::object();
  for (const auto& [attribute, s] : report.per_attribute) {
    json a;
    a["mean"] = s.mean;
    a["mean_std"] = s.mean_std;
    a["samples"] = s.samples;
    a["samples_with_std"] = s.samples_with_std;
    if (with_alpha) a["alpha"] = s.alpha ? json(*s.alpha) : json(nullptr);
    attrs[std::string(AttributeName(attribute))] = std::move(a);
  }
  j["per_attribute"] = std::move(attrs);
  j["filtered_count"] = report.filtered_count;
  j["retained_count"] = report.retained_count;
  j["std_convention"] = "population";
  j["scale"] = "0-10";
  if (with_alpha) j["alpha_metric"] = "ordinal";
  j["warnings"] = report.warnings;
  return j;
}

json ToJson(const SweepReport& report, const SweepConfig& cfg) {
  json j;
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["source"] = row.label;
    r["p"] = row.p ? json(*row.p) : json(nullptr);
    r["rep_2"] = row.metrics.rep.at(2);
    r["rep_3"] = row.metrics.rep.at(3);
    r["rep_4"] = row.metrics.rep.at(4);
    r["diversity"] = row.metrics.diversity;
    r["distinct_2"] = row.metrics.distinct.at(2);
    r["mauve"] = row.mauve ? json(*row.mauve) : json(nullptr);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["columns"] = {"rep_2", "rep_3", "rep_4", "diversity", "distinct_2", "mauve"};
  j["train_documents"] = report.train_documents;
  j["reference_documents"] = report.reference_documents;
  j["warnings"] = report.warnings;
  json c;
  c["ps"] = cfg.ps;
  c["samples_per_p"] = cfg.samples_per_p;
  c["max_tokens"] = cfg.max_tokens;
  c["order"] = cfg.order;
  c["alpha"] = cfg.alpha;
  c["seed"] = cfg.seed;
  c["holdout_every"] = cfg.holdout_every;
  c["scheme"] = std::string(TokenSchemeName(cfg.scheme));
  c["feature_dim"] = cfg.features.dim;
  c["feature_max_length"] = cfg.features.max_length;
  c["mauve"] = ToJson(cfg.mauve);
  j["config"] = std::move(c);
  return j;
}

std::string DumpJson(const json& j) {
  return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

}  // namespace lyriceval

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

#include "json.hpp"
#include "lyriceval/annotations.hpp"
#include "lyriceval/corpus.hpp"
#include "lyriceval/divergence.hpp"
#include "lyriceval/frechet.hpp"
#include "lyriceval/ngram_metrics.hpp"
#include "lyriceval/report.hpp"

// JSON views of the result types. Keys are sorted (nlohmann::json default),
// so dumps are stable.
namespace lyriceval {

nlohmann::json ToJson(const CorpusStats& stats, TokenScheme scheme, bool use_raw);
nlohmann::json ToJson(const DegenerationMetrics& metrics);
nlohmann::json ToJson(const DegenerationReport& report, TokenScheme scheme);
nlohmann::json ToJson(const MauveConfig& cfg);
// Frontier points are included when with_curve is set.
nlohmann::json ToJson(const MauveResult& result, bool with_curve);
nlohmann::json FrechetJson(const GaussianStats& a, const GaussianStats& b, double distance);
nlohmann::json ToJson(const AgreementReport& report, bool with_alpha);
nlohmann::json ToJson(const SweepReport& report, const SweepConfig& cfg);

// Pretty-printed with two-space indent and a trailing newline.
std::string DumpJson(const nlohmann::json& j);

}  // namespace lyriceval

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
#include <functional>

namespace lyriceval {

// Process-wide worker count used by ParallelFor. 0 selects the hardware
// concurrency.
void SetThreadCount(unsigned n);
unsigned ThreadCount();

// Runs body(i) for i in [0, n) across worker threads. Each index is visited
// exactly once; callers write results into per-index slots so output never
// depends on scheduling.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lyriceval

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

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace lyriceval {

// FNV-1a, 64-bit. Test vectors: "" -> 0xcbf29ce484222325,
// "a" -> 0xaf63dc4c8601ec8c, "foobar" -> 0x85944171f73967e8.
std::uint64_t Fnv1a64(std::string_view bytes);

// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t SplitMix64(std::uint64_t x);

// Bucket for a feature string: SplitMix64(Fnv1a64(s) ^ SplitMix64(seed)) mod
// buckets.
std::uint64_t SeededBucket(std::string_view bytes, std::uint64_t seed,
                           std::uint64_t buckets);

std::string HexDigest(std::uint64_t h);

// Portable random stream. The engine is fully specified by the standard;
// distributions are derived here by hand because std distributions are
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(SplitMix64(seed)) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by rejection.
  std::uint64_t Below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace lyriceval

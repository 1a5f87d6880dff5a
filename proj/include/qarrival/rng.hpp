// Copyright 2026 The qarrival Authors
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

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace qarrival {

// splitmix64: hashes an incrementing counter, so streams can be split by
// rekeying. Distributions below are hand-rolled to keep sequences identical
// across standard libraries.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Independent stream keyed by (seed, stream); used to fan sampling out
  // over workers without losing reproducibility. Streams occupy disjoint
  // 2^32-wide counter windows of the scrambled seed's sequence; nearby
  // windows of the same Weyl counter would otherwise correlate.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed);
    const std::uint64_t base = g();
    return SplitMix64(base + 0x9e3779b97f4a7c15ull * (stream << 32));
  }

 private:
  std::uint64_t state_;
};

// Uniform double in (0, 1); never returns an endpoint.
inline double uniform01(SplitMix64& g) {
  return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform(SplitMix64& g, double lo, double hi) {
  return lo + (hi - lo) * uniform01(g);
}

// Box-Muller pair of standard normals.
inline std::pair<double, double> normal_pair(SplitMix64& g) {
  const double u1 = uniform01(g);
  const double u2 = uniform01(g);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace qarrival

// Copyright 2026 The Authors.
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

#ifndef AMPO_RNG_HPP_
#define AMPO_RNG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ampo {

// All randomized steps in this library draw from std::mt19937_64 through the
// helpers below. mt19937_64 output is fully specified by the standard and the
// helpers avoid std::*_distribution, whose results are implementation
// defined, so a seed reproduces the same bytes on every platform.

inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
  // Modulo bias is ~n/2^64; irrelevant at the pool sizes used here.
  return rng() % n;
}

// Uniform double in [0, 1).
inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller.
inline double normal_draw(std::mt19937_64& rng) {
  double u1 = 0.0;
  do {
    u1 = unit_double(rng);
  } while (u1 <= 0.0);
  const double u2 = unit_double(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

// Uniform k-subset of {0,...,m-1}, returned sorted ascending.
// Partial Fisher-Yates: at step t, swap slot t with a slot drawn from [t, m).
inline std::vector<int> sample_k_subset(int m, int k, std::mt19937_64& rng) {
  std::vector<int> pool(m);
  for (int i = 0; i < m; ++i) pool[i] = i;
  for (int t = 0; t < k; ++t) {
    const int j = t + static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(m - t)));
    std::swap(pool[t], pool[j]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ampo

#endif  // AMPO_RNG_HPP_

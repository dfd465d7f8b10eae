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

// Test-only oracle for the renormalizing opt-select path: a from-scratch
// reimplementation of the same procedure end to end. Min-max rating
// normalization (0.5 fallback), top-index exclusion, reduced pairwise
// distances scaled so the max is 1, exp(mean - r) weights over the reduced
// ratings, then best-improving 1-swap descent with a 1e-12 threshold. Kept
// independent of the library: its own normalization, distance, objective,
// and swap code. Only the seeded-subset protocol (partial Fisher-Yates over
// mt19937_64 with modulo draws) is shared by contract so both sides start
// from the same subset.

#ifndef AMPO_TESTS_REFERENCE_PIPELINE_HPP_
#define AMPO_TESTS_REFERENCE_PIPELINE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace ampo_test {

inline std::vector<int> reference_pipeline(const std::vector<std::vector<double>>& vectors,
                                           const std::vector<double>& rating, int k,
                                           std::uint64_t seed) {
  const int n = static_cast<int>(rating.size());
  std::vector<double> normalized(n);
  const double lo = *std::min_element(rating.begin(), rating.end());
  const double hi = *std::max_element(rating.begin(), rating.end());
  for (int i = 0; i < n; ++i) normalized[i] = hi > lo ? (rating[i] - lo) / (hi - lo) : 0.5;

  int top = 0;
  for (int i = 1; i < n; ++i) {
    if (normalized[i] > normalized[top]) top = i;
  }

  std::vector<int> new_to_old;
  for (int i = 0; i < n; ++i) {
    if (i != top) new_to_old.push_back(i);
  }
  const int m = n - 1;

  std::vector<std::vector<double>> dist(m, std::vector<double>(m, 0.0));
  double mx = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double sq = 0.0;
      const auto& a = vectors[new_to_old[i]];
      const auto& b = vectors[new_to_old[j]];
      for (std::size_t t = 0; t < a.size(); ++t) sq += (a[t] - b[t]) * (a[t] - b[t]);
      dist[i][j] = std::sqrt(sq);
      mx = std::max(mx, dist[i][j]);
    }
  }
  if (mx > 1e-12) {
    for (auto& row : dist) {
      for (double& v : row) v /= mx;
    }
  }

  double mean = 0.0;
  for (int i = 0; i < m; ++i) mean += normalized[new_to_old[i]];
  mean /= m;
  std::vector<double> w(m);
  for (int i = 0; i < m; ++i) w[i] = std::exp(mean - normalized[new_to_old[i]]);

  const auto objective = [&](const std::vector<int>& chosen) {
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int j : chosen) best = std::min(best, dist[i][j]);
      total += w[i] * best;
    }
    return total;
  };

  std::mt19937_64 rng(seed);
  std::vector<int> pool(m);
  for (int i = 0; i < m; ++i) pool[i] = i;
  for (int t = 0; t < k && t < m; ++t) {
    const int j = t + static_cast<int>(rng() % static_cast<std::uint64_t>(m - t));
    std::swap(pool[t], pool[j]);
  }
  std::vector<int> current(pool.begin(), pool.begin() + std::min(k, m));
  std::sort(current.begin(), current.end());
  double current_cost = objective(current);

  bool improved = true;
  while (improved) {
    improved = false;
    int best_out = -1, best_in = -1;
    double best_improvement = 0.0;
    for (int j_out : current) {
      for (int j_in = 0; j_in < m; ++j_in) {
        if (std::find(current.begin(), current.end(), j_in) != current.end()) continue;
        std::vector<int> candidate = current;
        candidate.erase(std::find(candidate.begin(), candidate.end(), j_out));
        candidate.push_back(j_in);
        const double improvement = current_cost - objective(candidate);
        if (improvement > best_improvement) {
          best_improvement = improvement;
          best_out = j_out;
          best_in = j_in;
        }
      }
    }
    if (best_improvement > 1e-12) {
      current.erase(std::find(current.begin(), current.end(), best_out));
      current.insert(std::upper_bound(current.begin(), current.end(), best_in), best_in);
      current_cost -= best_improvement;
      improved = true;
    }
  }

  std::vector<int> chosen_original;
  for (int j : current) chosen_original.push_back(new_to_old[j]);
  std::sort(chosen_original.begin(), chosen_original.end());
  return chosen_original;
}

}  // namespace ampo_test

#endif  // AMPO_TESTS_REFERENCE_PIPELINE_HPP_

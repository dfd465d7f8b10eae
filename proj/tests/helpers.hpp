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

// Test-only oracles and builders. Everything here is written from scratch
// against the documented behavior (naive enumeration, plain objective sums)
// and stays independent of the library's solver internals.

#ifndef AMPO_TESTS_HELPERS_HPP_
#define AMPO_TESTS_HELPERS_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ampo/core.hpp"
#include "ampo/optselect.hpp"

namespace ampo_test {

inline ampo::Candidate cand(std::string id, double reward, std::vector<double> embedding) {
  ampo::Candidate c;
  c.id = std::move(id);
  c.reward = reward;
  c.embedding = std::move(embedding);
  return c;
}

// Pool over 1-D points; ids are p0, p1, ...
inline ampo::CandidatePool line_pool(const std::vector<double>& xs,
                                     const std::vector<double>& rewards,
                                     bool normalize_distances = false) {
  std::vector<ampo::Candidate> cs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    cs.push_back(cand("p" + std::to_string(i), rewards[i], {xs[i]}));
  }
  return ampo::build_pool("line", std::move(cs), normalize_distances);
}

// Plain-sum objective, the wording of the cost definition and nothing else.
inline double naive_cost(const ampo::CoverageInstance& inst, const std::vector<int>& s) {
  double total = 0.0;
  for (int i = 0; i < inst.m; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j : s) best = std::min(best, inst.distance(i, j));
    total += inst.weights[i] * best;
  }
  return total;
}

// Unpruned enumeration oracle: every size-k subset in lexicographic order,
// strict improvement keeps the first (lex-smallest) optimum.
inline std::pair<std::vector<int>, double> naive_exact(const ampo::CoverageInstance& inst) {
  std::vector<int> pick(inst.k);
  for (int t = 0; t < inst.k; ++t) pick[t] = t;
  std::vector<int> best_set;
  double best_cost = std::numeric_limits<double>::infinity();
  while (true) {
    const double cost = naive_cost(inst, pick);
    if (cost < best_cost) {
      best_cost = cost;
      best_set = pick;
    }
    int t = inst.k - 1;
    while (t >= 0 && pick[t] == inst.m - inst.k + t) --t;
    if (t < 0) break;
    pick[t]++;
    for (int u = t + 1; u < inst.k; ++u) pick[u] = pick[u - 1] + 1;
  }
  return {best_set, best_cost};
}

inline ampo::CoverageInstance line_instance(const std::vector<double>& xs,
                                            const std::vector<double>& weights, int k) {
  ampo::CoverageInstance inst;
  inst.m = static_cast<int>(xs.size());
  inst.k = k;
  inst.weights = weights;
  inst.dist.resize(static_cast<std::size_t>(inst.m) * inst.m);
  for (int i = 0; i < inst.m; ++i) {
    for (int j = 0; j < inst.m; ++j) {
      inst.dist[static_cast<std::size_t>(i) * inst.m + j] = std::abs(xs[i] - xs[j]);
    }
  }
  return inst;
}

}  // namespace ampo_test

#endif  // AMPO_TESTS_HELPERS_HPP_

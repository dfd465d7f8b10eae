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

#include "ampo/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ampo/weights.hpp"

namespace ampo {

namespace {

constexpr double kFeasibilityTolerance = 1e-12;
constexpr double kTieTolerance = 1e-12;

double min_dist_into(const CandidatePool& pool, int i, const std::vector<int>& s) {
  double best = std::numeric_limits<double>::infinity();
  for (int j : s) best = std::min(best, pool.distance(i, j));
  return best;
}

void check_negative_set(const CandidatePool& pool, const std::vector<int>& s, int top) {
  if (s.empty()) throw std::invalid_argument("lipschitz: empty negative set");
  for (int j : s) {
    if (j < 0 || j >= pool.size()) {
      throw std::invalid_argument("lipschitz: negative index out of range");
    }
    if (j == top) throw std::invalid_argument("lipschitz: negative set contains the top index");
  }
}

double capped_mass(const CandidatePool& pool, const std::vector<int>& s, int top) {
  std::vector<char> in_s(pool.size(), 0);
  for (int j : s) in_s[j] = 1;
  double total = 0.0;
  for (int i = 0; i < pool.size(); ++i) {
    if (i == top || in_s[i]) continue;
    total += min_dist_into(pool, i, s);
  }
  return total;
}

}  // namespace

bool feasibility_check(const CandidatePool& pool, const std::vector<int>& s, double l) {
  const int top = top_reward_index(pool);
  check_negative_set(pool, s, top);
  if (l <= 0.0) throw std::invalid_argument("feasibility_check: l must be positive");
  return capped_mass(pool, s, top) <= 1.0 / l;
}

LipschitzPolicy make_saturating_policy(const CandidatePool& pool, const std::vector<int>& s,
                                       double l) {
  const int top = top_reward_index(pool);
  check_negative_set(pool, s, top);
  if (l <= 0.0) throw std::invalid_argument("make_saturating_policy: l must be positive");

  std::vector<char> in_s(pool.size(), 0);
  for (int j : s) in_s[j] = 1;

  LipschitzPolicy policy;
  policy.probabilities.assign(pool.size(), 0.0);
  policy.lipschitz_constant = l;
  policy.negative_set = s;
  policy.positive_index = top;

  double mass = 0.0;
  for (int i = 0; i < pool.size(); ++i) {
    if (i == top || in_s[i]) continue;
    policy.probabilities[i] = l * min_dist_into(pool, i, s);
    mass += policy.probabilities[i];
  }
  const double remainder = 1.0 - mass;
  if (remainder < -kFeasibilityTolerance) {
    throw std::invalid_argument("make_saturating_policy: infeasible (capped mass " +
                                std::to_string(mass) + " exceeds 1)");
  }
  policy.probabilities[top] = std::max(0.0, remainder);
  return policy;
}

double saturating_reward(const CandidatePool& pool, const std::vector<int>& s, double l) {
  const LipschitzPolicy policy = make_saturating_policy(pool, s, l);
  double reward = 0.0;
  for (int i = 0; i < pool.size(); ++i) reward += pool.reward(i) * policy.probabilities[i];
  return reward;
}

double coverage_cost_max_gap(const CandidatePool& pool, const std::vector<int>& s) {
  const double r_max = pool.reward(top_reward_index(pool));
  double cost = 0.0;
  for (int i = 0; i < pool.size(); ++i) {
    cost += (r_max - pool.reward(i)) * min_dist_into(pool, i, s);
  }
  return cost;
}

double coverage_cost_max_gap_normalized(const CandidatePool& pool, const std::vector<int>& s) {
  const WeightVector w = weights_max_gap_normalized(pool.rewards());
  double cost = 0.0;
  for (int i = 0; i < pool.size(); ++i) cost += w.values[i] * min_dist_into(pool, i, s);
  return cost;
}

EquivalenceReport verify_optimality_equivalence(const CandidatePool& pool, int k, double l) {
  const int n = pool.size();
  if (n > 14) {
    throw std::invalid_argument("verify_optimality_equivalence: N <= 14 required for enumeration");
  }
  const int top = top_reward_index(pool);
  std::vector<int> eligible;
  for (int i = 0; i < n; ++i) {
    if (i != top) eligible.push_back(i);
  }
  const int m = static_cast<int>(eligible.size());
  if (k < 1 || k > m) throw std::invalid_argument("verify_optimality_equivalence: k out of range");

  EquivalenceReport report;
  std::vector<std::vector<int>> feasible_sets;

  std::vector<int> pick(k);
  for (int t = 0; t < k; ++t) pick[t] = t;
  while (true) {
    report.enumerated_subsets++;
    std::vector<int> s(k);
    for (int t = 0; t < k; ++t) s[t] = eligible[pick[t]];
    if (feasibility_check(pool, s, l)) {
      report.feasible_subsets++;
      feasible_sets.push_back(s);
      report.costs.push_back(coverage_cost_max_gap(pool, s));
      report.rewards.push_back(saturating_reward(pool, s, l));
    }
    int t = k - 1;
    while (t >= 0 && pick[t] == m - k + t) --t;
    if (t < 0) break;
    pick[t]++;
    for (int u = t + 1; u < k; ++u) pick[u] = pick[u - 1] + 1;
  }

  report.any_feasible = report.feasible_subsets > 0;
  if (!report.any_feasible) return report;

  report.min_cost = *std::min_element(report.costs.begin(), report.costs.end());
  report.max_reward = *std::max_element(report.rewards.begin(), report.rewards.end());
  for (std::size_t t = 0; t < feasible_sets.size(); ++t) {
    if (report.costs[t] <= report.min_cost + kTieTolerance) {
      report.cost_minimizers.push_back(feasible_sets[t]);
    }
    if (report.rewards[t] >= report.max_reward - kTieTolerance) {
      report.reward_maximizers.push_back(feasible_sets[t]);
    }
  }
  report.families_match = report.cost_minimizers == report.reward_maximizers;
  return report;
}

AdditiveBoundReport verify_additive_bound(const CandidatePool& pool,
                                          const std::vector<std::vector<int>>& clusters,
                                          double l) {
  const int n = pool.size();
  const int top = top_reward_index(pool);
  std::vector<int> owner(n, -1);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].empty()) {
      throw std::invalid_argument("verify_additive_bound: cluster " + std::to_string(c) +
                                  " is empty");
    }
    for (int i : clusters[c]) {
      if (i < 0 || i >= n || i == top || owner[i] >= 0) {
        throw std::invalid_argument("verify_additive_bound: cluster " + std::to_string(c) +
                                    " is not part of a partition of the non-top candidates");
      }
      owner[i] = static_cast<int>(c);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (i != top && owner[i] < 0) {
      throw std::invalid_argument("verify_additive_bound: candidate " + std::to_string(i) +
                                  " missing from the partition");
    }
  }

  AdditiveBoundReport report;
  for (const std::vector<int>& cluster : clusters) {
    int rep = cluster[0];
    for (int i : cluster) {
      if (pool.reward(i) < pool.reward(rep) || (pool.reward(i) == pool.reward(rep) && i < rep)) {
        rep = i;
      }
      for (int j : cluster) report.d_max = std::max(report.d_max, pool.distance(i, j));
    }
    report.representatives.push_back(rep);
  }
  std::sort(report.representatives.begin(), report.representatives.end());

  report.normalized_cost = coverage_cost_max_gap_normalized(pool, report.representatives);
  report.slack = report.d_max - report.normalized_cost;
  const double r_max = pool.reward(top);
  report.reward_bound = r_max - l * report.normalized_cost;
  report.reward_floor = r_max - l * report.d_max;
  report.holds = report.normalized_cost <= report.d_max + kFeasibilityTolerance;
  return report;
}

}  // namespace ampo

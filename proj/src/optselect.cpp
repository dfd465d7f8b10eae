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

#include "ampo/optselect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ampo/kernels.hpp"
#include "ampo/rng.hpp"

namespace ampo {

namespace {

constexpr double kSwapImprovementThreshold = 1e-12;
constexpr double kEnumerationBudget = 2e6;

void check_subset(const CoverageInstance& instance, const std::vector<int>& s) {
  if (s.empty()) throw std::invalid_argument("coverage_cost: empty subset");
  for (int j : s) {
    if (j < 0 || j >= instance.m) {
      throw std::invalid_argument("coverage_cost: index " + std::to_string(j) + " out of range");
    }
  }
}

double binomial_estimate(int m, int k) {
  double v = 1.0;
  for (int t = 0; t < k; ++t) v = v * (m - t) / (t + 1);
  return v;
}

// Depth-first lexicographic enumeration of one top-level branch. `chosen`
// already holds the branch prefix; candidates for deeper slots are strictly
// larger indices. cur_min[i] is min distance of i into `chosen`.
struct BranchSearch {
  const CoverageInstance& inst;
  const std::vector<double>& suffix_min;  // m * (m+1): min dist of i to centers >= t
  double shared_upper;                    // read-only snapshot of a bound from other branches

  std::vector<int> chosen;
  std::vector<double> cur_min;
  std::vector<int> best_set;
  double best_cost = std::numeric_limits<double>::infinity();

  double lower_bound(int next_candidate) const {
    const int m = inst.m;
    double lb = 0.0;
    for (int i = 0; i < m; ++i) {
      lb += inst.weights[i] *
            std::min(cur_min[i], suffix_min[static_cast<std::size_t>(i) * (m + 1) + next_candidate]);
    }
    return lb;
  }

  void dfs(int next_candidate) {
    const int m = inst.m;
    const int k = inst.k;
    if (static_cast<int>(chosen.size()) == k) {
      double cost = 0.0;
      for (int i = 0; i < m; ++i) cost += inst.weights[i] * cur_min[i];
      if (cost < best_cost) {
        best_cost = cost;
        best_set = chosen;
      }
      return;
    }
    const int remaining = k - static_cast<int>(chosen.size());
    for (int c = next_candidate; c <= m - remaining; ++c) {
      chosen.push_back(c);
      std::vector<double> saved = cur_min;
      for (int i = 0; i < m; ++i) {
        cur_min[i] = std::min(cur_min[i], inst.distance(i, c));
      }
      // Strict > keeps every global optimum alive, so cross-branch pruning
      // cannot disturb the deterministic lexicographic tie-break.
      const double lb = lower_bound(c + 1);
      if (!(lb > best_cost) && !(lb > shared_upper)) {
        dfs(c + 1);
      }
      cur_min = std::move(saved);
      chosen.pop_back();
    }
  }
};

std::vector<int> eligible_indices(const CandidatePool& pool, int exclude) {
  std::vector<int> idx;
  idx.reserve(pool.size() - 1);
  for (int i = 0; i < pool.size(); ++i) {
    if (i != exclude) idx.push_back(i);
  }
  return idx;
}

}  // namespace

double coverage_cost(const CoverageInstance& instance, const std::vector<int>& s) {
  check_subset(instance, s);
  return kernels::coverage_cost(instance.weights.data(), instance.dist.data(), instance.m, s);
}

CoverageSolution solve_exact(const CoverageInstance& instance, int exact_cap) {
  const int m = instance.m;
  const int k = instance.k;
  if (k < 1 || k > m) throw std::invalid_argument("solve_exact: k out of range");
  if (m > exact_cap || binomial_estimate(m, k) > kEnumerationBudget) {
    throw ExactSolverCapExceeded(
        "solve_exact: instance too large (m=" + std::to_string(m) + ", k=" + std::to_string(k) +
        ", cap=" + std::to_string(exact_cap) + "); use the local-search solver");
  }

  // suffix_min[i][t] = min distance from i to any center index >= t.
  std::vector<double> suffix_min(static_cast<std::size_t>(m) * (m + 1),
                                 std::numeric_limits<double>::infinity());
  for (int i = 0; i < m; ++i) {
    for (int t = m - 1; t >= 0; --t) {
      suffix_min[static_cast<std::size_t>(i) * (m + 1) + t] =
          std::min(suffix_min[static_cast<std::size_t>(i) * (m + 1) + t + 1], instance.distance(i, t));
    }
  }

  const int branches = m - k + 1;
  std::vector<double> branch_cost(branches, std::numeric_limits<double>::infinity());
  std::vector<std::vector<int>> branch_set(branches);
  double shared_upper = std::numeric_limits<double>::infinity();

#pragma omp parallel for schedule(dynamic)
  for (int first = 0; first < branches; ++first) {
    double upper;
#pragma omp atomic read
    upper = shared_upper;
    BranchSearch search{instance, suffix_min, upper, {}, {}, {},};
    search.chosen.reserve(k);
    search.chosen.push_back(first);
    search.cur_min.resize(m);
    for (int i = 0; i < m; ++i) search.cur_min[i] = instance.distance(i, first);
    search.dfs(first + 1);
    branch_cost[first] = search.best_cost;
    branch_set[first] = std::move(search.best_set);
#pragma omp critical(ampo_exact_bound)
    {
      if (search.best_cost < shared_upper) shared_upper = search.best_cost;
    }
  }

  CoverageSolution best;
  best.cost = std::numeric_limits<double>::infinity();
  for (int b = 0; b < branches; ++b) {
    if (branch_cost[b] < best.cost) {
      best.cost = branch_cost[b];
      best.selected = branch_set[b];
    }
  }
  return best;
}

CoverageSolution solve_local_search_from(const CoverageInstance& instance, std::vector<int> start,
                                         int max_sweeps) {
  const int m = instance.m;
  const int k = instance.k;
  if (k < 1 || k > m) throw std::invalid_argument("solve_local_search: k out of range");
  std::sort(start.begin(), start.end());
  if (static_cast<int>(start.size()) != k || start.front() < 0 || start.back() >= m ||
      std::adjacent_find(start.begin(), start.end()) != start.end()) {
    throw std::invalid_argument("solve_local_search: start must be k distinct indices in [0, m)");
  }

  CoverageSolution sol;
  sol.selected = std::move(start);
  sol.cost = coverage_cost(instance, sol.selected);
  if (k == m) return sol;

  std::vector<int> nearest_member;
  std::vector<double> nearest_dist, second_dist;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    kernels::nearest_two(instance.dist.data(), m, sol.selected, nearest_member, nearest_dist,
                         second_dist);
    const kernels::SwapCandidate swap =
        kernels::best_swap(instance.weights.data(), instance.dist.data(), m, sol.selected,
                           nearest_member, nearest_dist, second_dist, sol.cost);
    if (swap.improvement <= kSwapImprovementThreshold) break;
    sol.selected.erase(std::find(sol.selected.begin(), sol.selected.end(), swap.out));
    sol.selected.insert(std::upper_bound(sol.selected.begin(), sol.selected.end(), swap.in),
                        swap.in);
    sol.cost -= swap.improvement;
    sol.sweeps = sweep + 1;
  }
  return sol;
}

CoverageSolution solve_local_search(const CoverageInstance& instance, std::uint64_t seed,
                                    int max_sweeps) {
  std::mt19937_64 rng(seed);
  return solve_local_search_from(instance, sample_k_subset(instance.m, instance.k, rng),
                                 max_sweeps);
}

CoverageInstance make_coverage_instance(const CandidatePool& pool, int k, int exclude,
                                        WeightScheme scheme, bool renormalize_inputs) {
  const std::vector<int> idx = eligible_indices(pool, exclude);
  const int m = static_cast<int>(idx.size());

  std::vector<double> rewards(m);
  for (int i = 0; i < m; ++i) rewards[i] = pool.reward(idx[i]);
  if (renormalize_inputs) {
    // The full-pool rewards get min-max rescaled before the top index is
    // removed, so renormalize against the pool-wide extremes here.
    std::vector<double> all = normalize_rewards(pool.rewards());
    for (int i = 0; i < m; ++i) rewards[i] = all[idx[i]];
  }

  CoverageInstance instance;
  instance.m = m;
  instance.k = k;
  instance.original_indices = idx;
  instance.weights = make_weights(scheme, rewards).values;
  instance.dist.resize(static_cast<std::size_t>(m) * m);

  if (renormalize_inputs) {
    const int dim = pool.dim();
    std::vector<double> pts(static_cast<std::size_t>(m) * dim);
    for (int i = 0; i < m; ++i) {
      const std::vector<double>& e = pool.candidates()[idx[i]].embedding;
      std::copy(e.begin(), e.end(), pts.begin() + static_cast<std::size_t>(i) * dim);
    }
    kernels::pairwise_distances(pts.data(), m, dim, instance.dist.data());
    const double mx = *std::max_element(instance.dist.begin(), instance.dist.end());
    if (mx > 1e-12) {
      for (double& v : instance.dist) v /= mx;
    }
  } else {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        instance.dist[static_cast<std::size_t>(i) * m + j] = pool.distance(idx[i], idx[j]);
      }
    }
  }
  return instance;
}

SelectionResult select_optselect(const CandidatePool& pool, int k, const OptSelectOptions& opts) {
  const int n = pool.size();
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("select_optselect: k must be in [1, N-1], got " + std::to_string(k));
  }
  const int top = top_reward_index(pool);
  const CoverageInstance instance =
      make_coverage_instance(pool, k, top, opts.scheme, opts.renormalize_inputs);

  CoverageSolution sol;
  if (opts.mode == OptSelectMode::kExact) {
    sol = solve_exact(instance, opts.exact_cap);
  } else {
    std::mt19937_64 rng(opts.seed);
    sol.cost = std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
      CoverageSolution cand = solve_local_search_from(
          instance, sample_k_subset(instance.m, instance.k, rng), opts.max_sweeps);
      if (cand.cost < sol.cost) sol = std::move(cand);
    }
  }

  SelectionResult result;
  result.positive_index = top;
  result.negative_indices.reserve(k);
  for (int j : sol.selected) result.negative_indices.push_back(instance.original_indices[j]);
  std::sort(result.negative_indices.begin(), result.negative_indices.end());
  result.method = opts.mode == OptSelectMode::kExact ? SelectionMethod::kOptSelectExact
                                                     : SelectionMethod::kOptSelectLocal;
  result.objective_value = sol.cost;
  result.seed = opts.seed;
  result.restarts = std::max(1, opts.restarts);
  return result;
}

}  // namespace ampo

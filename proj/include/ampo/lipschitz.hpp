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

#ifndef AMPO_LIPSCHITZ_HPP_
#define AMPO_LIPSCHITZ_HPP_

#include <vector>

#include "ampo/core.hpp"

namespace ampo {

// Suppressing a negative set S pins p_j = 0 on S and caps every other
// non-top candidate at L times its distance to the nearest member of S.
// The saturating policy sits every capped candidate exactly at its cap and
// gives the top candidate the remainder.
struct LipschitzPolicy {
  std::vector<double> probabilities;
  double lipschitz_constant = 0.0;
  std::vector<int> negative_set;
  int positive_index = -1;
};

// True iff sum over uncapped, non-top candidates of their min distance into
// s stays within 1/l, i.e. the constrained simplex is nonempty.
bool feasibility_check(const CandidatePool& pool, const std::vector<int>& s, double l);

LipschitzPolicy make_saturating_policy(const CandidatePool& pool, const std::vector<int>& s,
                                       double l);

// Expected reward of the saturating policy. Equals
// r_max - l * sum_i (r_max - r_i) * min_{j in s} dist(i, j) exactly.
double saturating_reward(const CandidatePool& pool, const std::vector<int>& s, double l);

// Unnormalized max-gap coverage cost sum_i (r_max - r_i) * min_{j in s} d(i,j).
double coverage_cost_max_gap(const CandidatePool& pool, const std::vector<int>& s);

// Same with weights normalized to sum 1 (uniform fallback when all rewards
// are equal).
double coverage_cost_max_gap_normalized(const CandidatePool& pool, const std::vector<int>& s);

struct EquivalenceReport {
  int feasible_subsets = 0;
  int enumerated_subsets = 0;
  bool any_feasible = false;
  bool families_match = false;
  std::vector<std::vector<int>> cost_minimizers;
  std::vector<std::vector<int>> reward_maximizers;
  double min_cost = 0.0;
  double max_reward = 0.0;
  std::vector<double> costs;    // aligned with enumeration order, feasible only
  std::vector<double> rewards;  // idem
};

// Enumerates every size-k negative set over the non-top candidates (N <= 14)
// and checks that the subsets minimizing the max-gap coverage cost are
// exactly the ones maximizing the saturating reward. Optima collect with a
// 1e-12 tie tolerance. No feasible subset is reported, not an error.
EquivalenceReport verify_optimality_equivalence(const CandidatePool& pool, int k, double l);

struct AdditiveBoundReport {
  double d_max = 0.0;            // measured max cluster diameter
  double normalized_cost = 0.0;  // of the per-cluster reward-argmin set
  double slack = 0.0;            // d_max - normalized_cost
  double reward_bound = 0.0;     // r_max - l * normalized_cost
  double reward_floor = 0.0;     // r_max - l * d_max
  bool holds = false;
  std::vector<int> representatives;
};

// For a partition of the non-top candidates, picks the per-cluster
// reward-argmin representatives and checks that their normalized max-gap
// coverage cost stays within the measured cluster diameter. Throws when the
// partition does not cover the non-top candidates exactly.
AdditiveBoundReport verify_additive_bound(const CandidatePool& pool,
                                          const std::vector<std::vector<int>>& clusters, double l);

}  // namespace ampo

#endif  // AMPO_LIPSCHITZ_HPP_

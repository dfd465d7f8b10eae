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

#include "ampo/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "ampo/kernels.hpp"
#include "ampo/refa.hpp"
#include "ampo/rng.hpp"
#include "ampo/weights.hpp"

namespace ampo::verify {

namespace {

std::vector<Candidate> gaussian_candidates(std::mt19937_64& rng, int n, int dim,
                                           bool with_logprobs) {
  std::vector<Candidate> candidates(n);
  std::vector<double> raw_logits(n);
  for (int i = 0; i < n; ++i) {
    candidates[i].id = "c" + std::to_string(i);
    candidates[i].reward = unit_double(rng);
    candidates[i].embedding.resize(dim);
    for (int t = 0; t < dim; ++t) candidates[i].embedding[t] = normal_draw(rng);
    raw_logits[i] = normal_draw(rng);
  }
  if (with_logprobs) {
    const std::vector<double> lp = log_softmax(raw_logits);
    for (int i = 0; i < n; ++i) candidates[i].logprob = lp[i];
  }
  return candidates;
}

bool one_swap_stable(const CoverageInstance& instance, const std::vector<int>& selected,
                     double cost) {
  std::vector<int> nearest_member;
  std::vector<double> nearest_dist, second_dist;
  kernels::nearest_two(instance.dist.data(), instance.m, selected, nearest_member, nearest_dist,
                       second_dist);
  const kernels::SwapCandidate swap =
      kernels::best_swap(instance.weights.data(), instance.dist.data(), instance.m, selected,
                         nearest_member, nearest_dist, second_dist, cost);
  return swap.improvement <= 1e-12;
}

// Applies the first cost-increasing swap to an otherwise converged solution,
// to prove the stability re-check can fail.
CoverageSolution corrupt_with_worsening_swap(const CoverageInstance& instance,
                                             CoverageSolution sol) {
  std::vector<char> member(instance.m, 0);
  for (int j : sol.selected) member[j] = 1;
  for (int out : sol.selected) {
    for (int in = 0; in < instance.m; ++in) {
      if (member[in]) continue;
      std::vector<int> cand = sol.selected;
      cand.erase(std::find(cand.begin(), cand.end(), out));
      cand.insert(std::upper_bound(cand.begin(), cand.end(), in), in);
      const double cost = coverage_cost(instance, cand);
      if (cost > sol.cost + 1e-9) {
        sol.selected = std::move(cand);
        sol.cost = cost;
        return sol;
      }
    }
  }
  return sol;
}

}  // namespace

CandidatePool random_pool(std::uint64_t seed, int n, int dim, bool with_logprobs,
                          bool normalize_distances) {
  std::mt19937_64 rng(seed);
  return build_pool("pool-" + std::to_string(seed),
                    gaussian_candidates(rng, n, dim, with_logprobs), normalize_distances);
}

CoverageInstance random_instance(std::uint64_t seed, int m, int k, bool uniform_weights) {
  std::mt19937_64 rng(seed);
  const int dim = 3;
  std::vector<double> pts(static_cast<std::size_t>(m) * dim);
  for (double& v : pts) v = normal_draw(rng);

  CoverageInstance instance;
  instance.m = m;
  instance.k = k;
  instance.dist.resize(static_cast<std::size_t>(m) * m);
  kernels::pairwise_distances(pts.data(), m, dim, instance.dist.data());

  if (uniform_weights) {
    instance.weights.assign(m, 1.0);
  } else {
    std::vector<double> rewards(m);
    for (double& r : rewards) r = unit_double(rng);
    instance.weights = weights_exp_mean_gap(rewards).values;
  }
  return instance;
}

PlantedPool planted_cluster_pool(std::uint64_t seed, int num_clusters, int per_cluster, int dim) {
  std::mt19937_64 rng(seed);
  const double separation = 20.0;
  const int n = num_clusters * per_cluster + 1;
  const int top_index = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n)));

  PlantedPool out;
  out.clusters.resize(num_clusters);
  std::vector<Candidate> candidates(n);

  int cursor = 0;
  for (int c = 0; c < num_clusters; ++c) {
    for (int p = 0; p < per_cluster; ++p) {
      while (cursor == top_index) ++cursor;
      Candidate& cand = candidates[cursor];
      cand.id = "c" + std::to_string(cursor);
      cand.reward = 0.9 * unit_double(rng);
      cand.embedding.assign(dim, 0.0);
      cand.embedding[c % dim] += separation * (1.0 + c / dim);
      for (int t = 0; t < dim; ++t) cand.embedding[t] += normal_draw(rng);
      out.clusters[c].push_back(cursor);
      ++cursor;
    }
  }
  Candidate& top = candidates[top_index];
  top.id = "c" + std::to_string(top_index);
  top.reward = 1.0;
  top.embedding.assign(dim, 0.0);
  for (int t = 0; t < dim; ++t) top.embedding[t] = normal_draw(rng) - separation;

  out.pool = build_pool("planted-" + std::to_string(seed), std::move(candidates), true);
  return out;
}

CandidatePool standard_sim_pool() { return random_pool(416, 16, 8, true, true); }

CheckResult check_approx5(std::uint64_t seed, int instances, bool inject_fault) {
  CheckResult result;
  result.name = "approx5";
  result.instances = instances;
  double worst_ratio = 0.0;
  int stability_failures = 0;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t instance_seed = seed + static_cast<std::uint64_t>(i);
    const int m = 8 + i % 7;          // 8..14
    const int k = 2 + i % 3;          // 2..4
    const bool uniform = i % 2 == 0;  // alternate weight styles
    const CoverageInstance instance = random_instance(instance_seed, m, k, uniform);

    const CoverageSolution exact = solve_exact(instance);
    CoverageSolution local = solve_local_search(instance, instance_seed);
    if (inject_fault) local = corrupt_with_worsening_swap(instance, local);

    if (!one_swap_stable(instance, local.selected, local.cost)) {
      ++stability_failures;
      ++result.failures;
      result.note = "unstable local optimum at seed " + std::to_string(instance_seed);
      continue;
    }
    if (exact.cost > 0.0) {
      worst_ratio = std::max(worst_ratio, local.cost / exact.cost);
    }
    if (local.cost > 5.0 * exact.cost) {
      ++result.failures;
      result.note = "ratio bound violated at seed " + std::to_string(instance_seed);
    }
  }
  result.metrics["worst_ratio"] = worst_ratio;
  result.metrics["stability_failures"] = stability_failures;
  result.pass = result.failures == 0;
  return result;
}

CheckResult check_equivalence(std::uint64_t seed, int instances) {
  CheckResult result;
  result.name = "equivalence";
  result.instances = instances;
  int skipped = 0;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t instance_seed = seed + 1000 + static_cast<std::uint64_t>(i);
    const int n = 6 + i % 7;  // 6..12
    const int k = 2 + i % 2;  // 2..3
    const CandidatePool pool = random_pool(instance_seed, n, 3, false, true);
    // Alternate between a slack L (everything feasible) and a binding one.
    const double l = (i % 2 == 0) ? 1.0 / n : 3.0 / n;
    const EquivalenceReport report = verify_optimality_equivalence(pool, k, l);
    if (!report.any_feasible) {
      ++skipped;
      continue;
    }
    if (!report.families_match) {
      ++result.failures;
      result.note = "families diverge at seed " + std::to_string(instance_seed);
    }
  }
  result.metrics["skipped_no_feasible"] = skipped;
  result.pass = result.failures == 0;
  return result;
}

CheckResult check_affine_identity(std::uint64_t seed, int triples) {
  CheckResult result;
  result.name = "identity";
  result.instances = triples;
  double worst = 0.0;
  std::mt19937_64 rng(seed + 2000);
  for (int i = 0; i < triples; ++i) {
    const int n = 5 + static_cast<int>(bounded_draw(rng, 8));  // 5..12
    const CandidatePool pool = random_pool(rng(), n, 4, false, true);
    const int top = top_reward_index(pool);
    std::vector<int> eligible;
    for (int j = 0; j < n; ++j) {
      if (j != top) eligible.push_back(j);
    }
    const int k = 1 + static_cast<int>(bounded_draw(rng, eligible.size()));
    std::vector<int> s = sample_k_subset(static_cast<int>(eligible.size()), k, rng);
    for (int& j : s) j = eligible[j];

    // Scale L so the saturating policy is feasible by construction.
    double capped = 0.0;
    std::vector<char> in_s(n, 0);
    for (int j : s) in_s[j] = 1;
    for (int j = 0; j < n; ++j) {
      if (j == top || in_s[j]) continue;
      double best = pool.distance(j, s[0]);
      for (int c : s) best = std::min(best, pool.distance(j, c));
      capped += best;
    }
    const double u = 0.1 + 0.9 * unit_double(rng);
    const double l = capped > 1e-9 ? u / capped : 1.0;

    const double via_policy = saturating_reward(pool, s, l);
    const double via_cost = pool.reward(top) - l * coverage_cost_max_gap(pool, s);
    worst = std::max(worst, std::abs(via_policy - via_cost));
    if (std::abs(via_policy - via_cost) > 1e-12) {
      ++result.failures;
      result.note = "identity breaks at triple " + std::to_string(i);
    }
  }
  result.metrics["worst_abs_gap"] = worst;
  result.pass = result.failures == 0;
  return result;
}

CheckResult check_additive(std::uint64_t seed, int instances, double l) {
  CheckResult result;
  result.name = "additive";
  result.instances = instances;
  double worst_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t instance_seed = seed + 3000 + static_cast<std::uint64_t>(i);
    const int clusters = 3 + i % 3;     // 3..5
    const int per_cluster = 2 + i % 4;  // 2..5
    const PlantedPool planted = planted_cluster_pool(instance_seed, clusters, per_cluster, 4);
    const AdditiveBoundReport report = verify_additive_bound(planted.pool, planted.clusters, l);
    worst_slack = std::min(worst_slack, report.slack);
    if (!report.holds || report.reward_bound < report.reward_floor - 1e-12) {
      ++result.failures;
      result.note = "bound violated at seed " + std::to_string(instance_seed);
    }
  }
  result.metrics["worst_slack"] = worst_slack;
  result.pass = result.failures == 0;
  return result;
}

CheckResult check_gradcheck(std::uint64_t seed, int instances) {
  CheckResult result;
  result.name = "gradcheck";
  result.instances = instances;
  double worst_rel = 0.0;
  std::mt19937_64 rng(seed + 4000);
  const double h = 1e-5;

  for (int i = 0; i < instances; ++i) {
    // Redraw until the contrastive ratio is not saturated: below a ~1e-4
    // loss the gradient sits under the finite-difference noise floor and
    // the oracle stops being meaningful.
    int n = 0;
    std::vector<double> logits, rewards;
    std::vector<int> pos, neg;
    RefaConfig cfg;
    for (int attempt = 0; attempt < 100; ++attempt) {
      n = 4 + static_cast<int>(bounded_draw(rng, 9));  // 4..12
      logits.resize(n);
      rewards.resize(n);
      for (double& v : logits) v = normal_draw(rng);
      for (double& r : rewards) r = unit_double(rng);
      const int k = 1 + static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n - 1)));
      std::vector<int> subset = sample_k_subset(n, k + 1, rng);
      pos.assign({subset[0]});
      neg.assign(subset.begin() + 1, subset.end());
      cfg = RefaConfig{3.0 * unit_double(rng), 0.5 + 7.5 * unit_double(rng)};
      if (refa_loss_from_logits(logits, rewards, pos, neg, cfg) >= 1e-4) break;
    }

    const std::vector<double> analytic = refa_loss_grad(logits, rewards, pos, neg, cfg);
    double scale = 1e-12;
    double gap = 0.0;
    for (int t = 0; t < n; ++t) {
      std::vector<double> plus = logits, minus = logits;
      plus[t] += h;
      minus[t] -= h;
      const double fd = (refa_loss_from_logits(plus, rewards, pos, neg, cfg) -
                         refa_loss_from_logits(minus, rewards, pos, neg, cfg)) /
                        (2.0 * h);
      gap = std::max(gap, std::abs(analytic[t] - fd));
      scale = std::max({scale, std::abs(analytic[t]), std::abs(fd)});
    }
    const double rel = gap / scale;
    worst_rel = std::max(worst_rel, rel);
    if (rel >= 1e-6) {
      ++result.failures;
      result.note = "gradient mismatch at instance " + std::to_string(i);
    }
  }

  // Shift invariance of the loss in score space.
  std::vector<double> scores{0.3, -1.1, 0.7, 2.0, -0.4};
  std::vector<double> shifted = scores;
  for (double& s : shifted) s += 17.25;
  const double shift_gap = std::abs(refa_loss(scores, {0, 2}, {1, 3, 4}) -
                                    refa_loss(shifted, {0, 2}, {1, 3, 4}));
  result.metrics["shift_gap"] = shift_gap;
  if (shift_gap > 1e-10) {
    ++result.failures;
    result.note = "loss is not shift invariant";
  }

  // Equal scores, one positive vs K negatives: loss = ln(1 + K).
  double worst_closed_form = 0.0;
  for (int k : {1, 3, 7}) {
    std::vector<double> equal(static_cast<std::size_t>(k) + 1, 0.42);
    std::vector<int> neg(k);
    for (int t = 0; t < k; ++t) neg[t] = t + 1;
    const double gap = std::abs(refa_loss(equal, {0}, neg) - std::log1p(static_cast<double>(k)));
    worst_closed_form = std::max(worst_closed_form, gap);
  }
  result.metrics["worst_rel_err"] = worst_rel;
  result.metrics["closed_form_gap"] = worst_closed_form;
  if (worst_closed_form > 1e-12) {
    ++result.failures;
    result.note = "equal-score closed form violated";
  }

  result.pass = result.failures == 0;
  return result;
}

SuiteReport run_suite(const SuiteParams& params) {
  const auto enabled = [&](const std::string& name) {
    return params.checks.empty() ||
           std::find(params.checks.begin(), params.checks.end(), name) != params.checks.end();
  };

  SuiteReport report;
  if (enabled("equivalence")) {
    report.checks.push_back(check_equivalence(params.seed, params.equivalence_instances));
  }
  if (enabled("approx5")) {
    report.checks.push_back(
        check_approx5(params.seed, params.approx5_instances, params.inject_fault));
  }
  if (enabled("identity")) {
    report.checks.push_back(check_affine_identity(params.seed, params.identity_triples));
  }
  if (enabled("additive")) {
    report.checks.push_back(
        check_additive(params.seed, params.additive_instances, params.lipschitz));
  }
  if (enabled("gradcheck")) {
    report.checks.push_back(check_gradcheck(params.seed, params.gradcheck_instances));
  }
  report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const CheckResult& c) { return c.pass; });
  return report;
}

}  // namespace ampo::verify

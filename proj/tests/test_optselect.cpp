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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include <doctest.h>

#include "ampo/optselect.hpp"
#include "ampo/rng.hpp"
#include "ampo/verify.hpp"
#include "helpers.hpp"
#include "reference_pipeline.hpp"

using namespace ampo;
using ampo_test::line_instance;
using ampo_test::naive_cost;
using ampo_test::naive_exact;
using ampo_test::reference_pipeline;

TEST_CASE("coverage_cost basics") {
  auto inst = line_instance({0.0, 1.0, 2.0}, {1.0, 1.0, 1.0}, 1);
  CHECK(coverage_cost(inst, {0, 1, 2}) == 0.0);
  CHECK(coverage_cost(inst, {1}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(coverage_cost(inst, {}), std::invalid_argument);

  auto doubled = inst;
  for (double& w : doubled.weights) w *= 2.0;
  CHECK(coverage_cost(doubled, {1}) == doctest::Approx(2.0 * coverage_cost(inst, {1})));
}

TEST_CASE("coverage_cost monotone under set growth, exactly") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const CoverageInstance inst =
        verify::random_instance(9000 + trial, 6 + trial % 8, 2, trial % 2 == 0);
    const int size_small = 1 + static_cast<int>(bounded_draw(rng, 3));
    std::vector<int> small = sample_k_subset(inst.m, size_small, rng);
    std::vector<int> big = small;
    for (int j = 0; j < inst.m; ++j) {
      if (std::find(big.begin(), big.end(), j) == big.end() && bounded_draw(rng, 2) == 0) {
        big.push_back(j);
      }
    }
    CHECK(coverage_cost(inst, big) <= coverage_cost(inst, small));
  }
}

TEST_CASE("solve_exact: four points on a line, k=1") {
  // Candidate center costs are 13, 11, 11, 27; the tie breaks to index 1.
  auto inst = line_instance({0.0, 1.0, 2.0, 10.0}, {1.0, 1.0, 1.0, 1.0}, 1);
  const CoverageSolution sol = solve_exact(inst);
  CHECK(sol.selected == std::vector<int>{1});
  CHECK(sol.cost == doctest::Approx(11.0).epsilon(1e-15));
}

TEST_CASE("solve_exact: k = m covers everything at zero cost") {
  auto inst = line_instance({0.0, 1.0, 5.0}, {1.0, 2.0, 3.0}, 3);
  const CoverageSolution sol = solve_exact(inst);
  CHECK(sol.cost == 0.0);
  CHECK(sol.selected == std::vector<int>{0, 1, 2});
}

TEST_CASE("solve_exact agrees with the unpruned enumeration oracle") {
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 6 + trial % 7;
    const int k = 1 + trial % 4;
    const CoverageInstance inst = verify::random_instance(100 + trial, m, k, trial % 2 == 0);
    const auto [oracle_set, oracle_cost] = naive_exact(inst);
    const CoverageSolution sol = solve_exact(inst);
    CHECK(sol.selected == oracle_set);
    CHECK(sol.cost == doctest::Approx(oracle_cost).epsilon(1e-12));
  }
}

TEST_CASE("solve_exact resolves massive cost ties to the lexicographic minimum") {
  // Duplicated lattice points with uniform weights produce many equal-cost
  // optima; pruning must not disturb the first-in-lex-order promise.
  std::vector<double> xs;
  for (int rep = 0; rep < 3; ++rep) {
    for (double x : {0.0, 1.0, 2.0, 3.0}) xs.push_back(x);
  }
  for (int k = 1; k <= 4; ++k) {
    auto inst = line_instance(xs, std::vector<double>(xs.size(), 1.0), k);
    const auto [oracle_set, oracle_cost] = naive_exact(inst);
    const CoverageSolution sol = solve_exact(inst);
    CHECK(sol.selected == oracle_set);
    CHECK(sol.cost == oracle_cost);
  }
}

TEST_CASE("selection is invariant to uniform distance scaling") {
  // Normalized and raw pools disagree only by one scalar on the distance
  // matrix, so the chosen sets must coincide (costs scale accordingly).
  for (int trial = 0; trial < 10; ++trial) {
    std::mt19937_64 rng(880 + trial);
    std::vector<Candidate> cs(10);
    for (int i = 0; i < 10; ++i) {
      cs[i].id = "c" + std::to_string(i);
      cs[i].reward = unit_double(rng);
      cs[i].embedding = {normal_draw(rng), normal_draw(rng), normal_draw(rng)};
    }
    const CandidatePool normalized = build_pool("p", cs, true);
    const CandidatePool raw = build_pool("p", cs, false);
    OptSelectOptions opts;
    opts.mode = OptSelectMode::kExact;
    const SelectionResult a = select_optselect(normalized, 3, opts);
    const SelectionResult b = select_optselect(raw, 3, opts);
    CHECK(a.negative_indices == b.negative_indices);
    CHECK(a.positive_index == b.positive_index);
  }
}

TEST_CASE("solve_exact is permutation invariant up to relabeling") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const CoverageInstance inst = verify::random_instance(300 + trial, 9, 3, false);
    std::vector<int> perm(inst.m);
    for (int i = 0; i < inst.m; ++i) perm[i] = i;
    for (int i = inst.m - 1; i > 0; --i) {
      std::swap(perm[i], perm[bounded_draw(rng, static_cast<std::uint64_t>(i + 1))]);
    }
    CoverageInstance shuffled = inst;
    for (int i = 0; i < inst.m; ++i) {
      shuffled.weights[perm[i]] = inst.weights[i];
      for (int j = 0; j < inst.m; ++j) {
        shuffled.dist[static_cast<std::size_t>(perm[i]) * inst.m + perm[j]] =
            inst.dist[static_cast<std::size_t>(i) * inst.m + j];
      }
    }
    const CoverageSolution base = solve_exact(inst);
    const CoverageSolution mapped = solve_exact(shuffled);
    std::set<int> expect;
    for (int j : base.selected) expect.insert(perm[j]);
    CHECK(std::set<int>(mapped.selected.begin(), mapped.selected.end()) == expect);
    CHECK(mapped.cost == doctest::Approx(base.cost).epsilon(1e-12));
  }
}

TEST_CASE("solve_exact refuses oversized instances") {
  CoverageInstance inst = verify::random_instance(1, 25, 3, true);
  CHECK_THROWS_WITH_AS(solve_exact(inst), doctest::Contains("local-search"),
                       ExactSolverCapExceeded);
}

TEST_CASE("local search: k = m is immediately optimal") {
  const CoverageInstance inst = verify::random_instance(55, 7, 7, true);
  const CoverageSolution sol = solve_local_search(inst, 9);
  CHECK(sol.cost == 0.0);
  CHECK(sol.sweeps == 0);
}

TEST_CASE("local search never worsens the start and is 1-swap stable") {
  for (int trial = 0; trial < 50; ++trial) {
    const CoverageInstance inst =
        verify::random_instance(700 + trial, 8 + trial % 6, 2 + trial % 3, trial % 2 == 0);
    std::mt19937_64 rng(42 + trial);
    const std::vector<int> start = sample_k_subset(inst.m, inst.k, rng);
    const double start_cost = naive_cost(inst, start);
    const CoverageSolution sol = solve_local_search_from(inst, start);
    CHECK(sol.cost <= start_cost + 1e-12);

    // No single exchange may lower the cost further.
    std::vector<char> member(inst.m, 0);
    for (int j : sol.selected) member[j] = 1;
    const double final_cost = naive_cost(inst, sol.selected);
    for (int out : sol.selected) {
      for (int in = 0; in < inst.m; ++in) {
        if (member[in]) continue;
        std::vector<int> cand = sol.selected;
        cand.erase(std::find(cand.begin(), cand.end(), out));
        cand.push_back(in);
        CHECK(naive_cost(inst, cand) >= final_cost - 1e-12);
      }
    }
    // Determinism under the seed.
    const CoverageSolution again = solve_local_search_from(inst, start);
    CHECK(again.selected == sol.selected);
  }
}

TEST_CASE("exact cost lower-bounds local search across restarts") {
  for (int trial = 0; trial < 20; ++trial) {
    const CoverageInstance inst = verify::random_instance(800 + trial, 10, 3, trial % 2 == 0);
    const CoverageSolution exact = solve_exact(inst);
    std::mt19937_64 rng(trial);
    for (int restart = 0; restart < 20; ++restart) {
      const CoverageSolution local =
          solve_local_search_from(inst, sample_k_subset(inst.m, inst.k, rng));
      CHECK(exact.cost <= local.cost + 1e-12);
    }
  }
}

TEST_CASE("select_optselect: forced N=2 case") {
  auto pool = ampo_test::line_pool({0.0, 5.0}, {0.3, 0.8});
  OptSelectOptions opts;
  opts.mode = OptSelectMode::kExact;
  const SelectionResult r = select_optselect(pool, 1, opts);
  CHECK(r.positive_index == 1);
  CHECK(r.negative_indices == std::vector<int>{0});
  CHECK(r.method == SelectionMethod::kOptSelectExact);
}

TEST_CASE("exact mode dominates local mode on pools") {
  for (int trial = 0; trial < 15; ++trial) {
    const CandidatePool pool = verify::random_pool(600 + trial, 11, 4, false, true);
    OptSelectOptions exact_opts;
    exact_opts.mode = OptSelectMode::kExact;
    OptSelectOptions local_opts;
    local_opts.mode = OptSelectMode::kLocal;
    local_opts.seed = trial;
    local_opts.restarts = 20;
    const SelectionResult exact = select_optselect(pool, 3, exact_opts);
    const SelectionResult local = select_optselect(pool, 3, local_opts);
    CHECK(*exact.objective_value <= *local.objective_value + 1e-12);
    CHECK(local.restarts == 20);
  }
}

TEST_CASE("renormalizing mode matches the reference pipeline transcription") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 6 + static_cast<int>(bounded_draw(rng, 9));
    const int dim = 2 + static_cast<int>(bounded_draw(rng, 4));
    std::vector<std::vector<double>> vectors(n, std::vector<double>(dim));
    std::vector<double> rating(n);
    std::vector<Candidate> cs(n);
    for (int i = 0; i < n; ++i) {
      for (double& v : vectors[i]) v = normal_draw(rng);
      rating[i] = 10.0 * unit_double(rng);  // out of [0,1] on purpose
      cs[i] = ampo_test::cand("c" + std::to_string(i), rating[i], vectors[i]);
    }
    const int k = 1 + static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n - 1)));
    const std::uint64_t seed = rng();

    auto pool = build_pool("p", cs, true);
    OptSelectOptions opts;
    opts.mode = OptSelectMode::kLocal;
    opts.seed = seed;
    opts.renormalize_inputs = true;
    const SelectionResult got = select_optselect(pool, k, opts);
    const std::vector<int> expect = reference_pipeline(vectors, rating, k, seed);
    CHECK(got.negative_indices == expect);
  }
}

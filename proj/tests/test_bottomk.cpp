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
#include <random>
#include <vector>

#include <doctest.h>

#include "ampo/bottomk.hpp"
#include "ampo/rng.hpp"
#include "helpers.hpp"

using namespace ampo;
using ampo_test::cand;
using ampo_test::line_pool;

namespace {

// Reference implementation of the stated rule, written naively: admit
// strictly-lower rewards outright, then repeatedly admit the boundary-tied
// candidate with minimal max-cosine to the selected set (smallest index for
// an empty set or a cosine tie).
std::vector<int> reference_bottom_k(const CandidatePool& pool, int k, int exclude) {
  std::vector<int> remaining;
  for (int i = 0; i < pool.size(); ++i) {
    if (i != exclude) remaining.push_back(i);
  }
  std::vector<int> selected;
  while (static_cast<int>(selected.size()) < k) {
    double lowest = 2.0;
    for (int i : remaining) lowest = std::min(lowest, pool.reward(i));
    std::vector<int> tied;
    for (int i : remaining) {
      if (pool.reward(i) == lowest) tied.push_back(i);
    }
    int pick = tied.front();
    if (!selected.empty() && tied.size() > 1) {
      double best = 3.0;
      for (int c : tied) {
        double worst = -3.0;
        for (int s : selected) worst = std::max(worst, cosine_similarity(pool, c, s));
        if (worst < best) {
          best = worst;
          pick = c;
        }
      }
    }
    selected.push_back(pick);
    remaining.erase(std::find(remaining.begin(), remaining.end(), pick));
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

}  // namespace

TEST_CASE("two smallest rewards") {
  auto pool = line_pool({0, 1, 2, 3}, {0.9, 0.1, 0.5, 0.3});
  const SelectionResult r = select_bottom_k(pool, 2, 0);
  CHECK(r.negative_indices == std::vector<int>{1, 3});
  CHECK(r.positive_index == 0);
  CHECK(r.method == SelectionMethod::kBottomK);
}

TEST_CASE("k = N-1 takes the full complement") {
  auto pool = line_pool({0, 1, 2, 3}, {0.9, 0.1, 0.5, 0.3});
  const SelectionResult r = select_bottom_k(pool, 3, 0);
  CHECK(r.negative_indices == std::vector<int>{1, 2, 3});
}

TEST_CASE("all-tied boundary with empty selected set falls back to smallest index") {
  auto pool = build_pool("p",
                         {cand("a", 0.9, {1.0, 0.0}), cand("b", 0.2, {0.9, 0.1}),
                          cand("c", 0.2, {-1.0, 0.0}), cand("d", 0.2, {0.8, 0.2})},
                         false);
  const SelectionResult r = select_bottom_k(pool, 1, 0);
  CHECK(r.negative_indices == std::vector<int>{1});
}

TEST_CASE("boundary ties admit the most dissimilar candidate") {
  // Candidate 1 is admitted first (strictly lowest). The tie {2, 3} then
  // breaks toward 3, whose max-cosine to {1} is -1 versus +1 for 2.
  auto pool = build_pool("p",
                         {cand("top", 0.9, {1.0, 0.0}), cand("low", 0.1, {1.0, 0.1}),
                          cand("near", 0.4, {1.0, 0.05}), cand("far", 0.4, {-1.0, -0.1})},
                         false);
  const SelectionResult r = select_bottom_k(pool, 2, 0);
  CHECK(r.negative_indices == std::vector<int>{1, 3});
}

TEST_CASE("matches the reference rule on tie-heavy random pools") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(bounded_draw(rng, 10));
    std::vector<Candidate> cs(n);
    for (int i = 0; i < n; ++i) {
      cs[i].id = "c" + std::to_string(i);
      // Quantized rewards force plenty of exact ties.
      cs[i].reward = 0.25 * static_cast<double>(bounded_draw(rng, 4));
      cs[i].embedding = {normal_draw(rng), normal_draw(rng)};
    }
    auto pool = build_pool("p", cs, false);
    const int exclude = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n)));
    const int k = 1 + static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n - 1)));
    const SelectionResult got = select_bottom_k(pool, k, exclude);
    CHECK(got.negative_indices == reference_bottom_k(pool, k, exclude));
  }
}

TEST_CASE("selected rewards never exceed unselected ones except at ties") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(bounded_draw(rng, 12));
    std::vector<double> xs(n), rewards(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = normal_draw(rng);
      rewards[i] = unit_double(rng);
    }
    auto pool = line_pool(xs, rewards);
    const int k = 1 + static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n - 1)));
    const SelectionResult r = select_bottom_k(pool, k, 0);

    double max_selected = 0.0;
    for (int j : r.negative_indices) max_selected = std::max(max_selected, pool.reward(j));
    for (int i = 1; i < n; ++i) {
      if (std::find(r.negative_indices.begin(), r.negative_indices.end(), i) ==
          r.negative_indices.end()) {
        CHECK(pool.reward(i) >= max_selected);
      }
    }
  }
}

TEST_CASE("k out of range rejected") {
  auto pool = line_pool({0, 1, 2}, {0.1, 0.2, 0.3});
  CHECK_THROWS_AS(select_bottom_k(pool, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(select_bottom_k(pool, 3, 0), std::invalid_argument);
}

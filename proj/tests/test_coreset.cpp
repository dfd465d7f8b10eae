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

#include "ampo/coreset.hpp"
#include "ampo/rng.hpp"
#include "helpers.hpp"

using namespace ampo;
using ampo_test::cand;

namespace {

std::vector<double> flat_points(const std::vector<std::vector<double>>& pts) {
  std::vector<double> flat;
  for (const auto& p : pts) flat.insert(flat.end(), p.begin(), p.end());
  return flat;
}

// Exhaustive 2-partition oracle: best inertia over all assignments into two
// nonempty groups with mean centroids.
double best_two_partition_inertia(const std::vector<std::vector<double>>& pts) {
  const int n = static_cast<int>(pts.size());
  const int d = static_cast<int>(pts[0].size());
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    std::vector<double> mean0(d, 0.0), mean1(d, 0.0);
    int n0 = 0, n1 = 0;
    for (int i = 0; i < n; ++i) {
      const bool in1 = (mask >> i) & 1;
      for (int t = 0; t < d; ++t) (in1 ? mean1 : mean0)[t] += pts[i][t];
      (in1 ? n1 : n0)++;
    }
    for (int t = 0; t < d; ++t) {
      mean0[t] /= n0;
      mean1[t] /= n1;
    }
    double inertia = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::vector<double>& mean = ((mask >> i) & 1) ? mean1 : mean0;
      for (int t = 0; t < d; ++t) {
        inertia += (pts[i][t] - mean[t]) * (pts[i][t] - mean[t]);
      }
    }
    best = std::min(best, inertia);
  }
  return best;
}

}  // namespace

TEST_CASE("k = n: singleton clusters, zero inertia") {
  const std::vector<std::vector<double>> pts{{0, 0}, {1, 0}, {5, 5}};
  const Clustering c = kmeans(flat_points(pts), 3, 2, 3, 1);
  CHECK(c.inertia == 0.0);
  std::set<int> clusters(c.assignments.begin(), c.assignments.end());
  CHECK(clusters.size() == 3);
}

TEST_CASE("k = 1: centroid is the mean") {
  const std::vector<std::vector<double>> pts{{0, 0}, {2, 0}, {4, 6}};
  const Clustering c = kmeans(flat_points(pts), 3, 2, 1, 1);
  CHECK(c.centroids[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c.centroids[1] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("two well-separated groups recover the optimal 2-partition") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int per_group = 2 + static_cast<int>(bounded_draw(rng, 4));  // 2..5 each, n <= 10
    std::vector<std::vector<double>> pts;
    for (int g = 0; g < 2; ++g) {
      for (int i = 0; i < per_group; ++i) {
        pts.push_back({g * 50.0 + normal_draw(rng), normal_draw(rng)});
      }
    }
    const int n = static_cast<int>(pts.size());
    const Clustering c = kmeans(flat_points(pts), n, 2, 2, 1000 + trial);
    CHECK(c.inertia == doctest::Approx(best_two_partition_inertia(pts)).epsilon(1e-9));
    // Groups must separate exactly.
    for (int i = 1; i < per_group; ++i) {
      CHECK(c.assignments[i] == c.assignments[0]);
      CHECK(c.assignments[per_group + i] == c.assignments[per_group]);
    }
    CHECK(c.assignments[0] != c.assignments[per_group]);
  }
}

TEST_CASE("lloyd inertia is non-increasing and runs are seed-deterministic") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(bounded_draw(rng, 20));
    const int d = 2 + static_cast<int>(bounded_draw(rng, 4));
    const int k = 1 + static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n)));
    std::vector<double> pts(static_cast<std::size_t>(n) * d);
    for (double& v : pts) v = normal_draw(rng);

    const Clustering a = kmeans(pts, n, d, k, 5000 + trial);
    for (std::size_t t = 1; t < a.inertia_history.size(); ++t) {
      CHECK(a.inertia_history[t] <= a.inertia_history[t - 1] + 1e-9);
    }
    const Clustering b = kmeans(pts, n, d, k, 5000 + trial);
    CHECK(a.assignments == b.assignments);
    CHECK(a.inertia == b.inertia);

    std::vector<int> count(k, 0);
    for (int c : a.assignments) count[c]++;
    for (int c = 0; c < k; ++c) CHECK(count[c] > 0);
  }
}

TEST_CASE("kmeans rejects k > n") {
  CHECK_THROWS_AS(kmeans({0.0, 1.0}, 2, 1, 3, 0), std::invalid_argument);
}

TEST_CASE("coreset: separated clusters contribute their worst member") {
  auto pool = build_pool("p",
                         {cand("pos", 0.95, {0.0, 0.0}), cand("a-hi", 0.9, {10.0, 0.0}),
                          cand("a-lo", 0.1, {10.5, 0.0}), cand("b-hi", 0.8, {-10.0, 0.0}),
                          cand("b-lo", 0.2, {-10.5, 0.0})},
                         false);
  const SelectionResult r = select_coreset(pool, 2, 0, 7);
  CHECK(r.negative_indices == std::vector<int>{2, 4});
  CHECK(r.method == SelectionMethod::kCoreset);
  CHECK(r.seed == 7);
}

TEST_CASE("coreset: k = N-1 selects everyone else") {
  auto pool = build_pool("p",
                         {cand("a", 0.9, {0.0}), cand("b", 0.1, {1.0}), cand("c", 0.5, {2.0}),
                          cand("d", 0.3, {3.0})},
                         false);
  const SelectionResult r = select_coreset(pool, 3, 0, 0);
  CHECK(r.negative_indices == std::vector<int>{1, 2, 3});
}

TEST_CASE("coreset: identical embeddings exercise empty-cluster repair") {
  std::vector<Candidate> cs;
  for (int i = 0; i < 6; ++i) {
    cs.push_back(cand("c" + std::to_string(i), 0.1 * i, {1.0, 1.0}));
  }
  auto pool = build_pool("p", cs, false);
  const int top = 5;
  const SelectionResult r = select_coreset(pool, 2, top, 3);
  CHECK(r.negative_indices.size() == 2);
  // The global minimum-reward candidate must be among the negatives.
  CHECK(std::find(r.negative_indices.begin(), r.negative_indices.end(), 0) !=
        r.negative_indices.end());
}

TEST_CASE("every negative is the reward-argmin of its cluster") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + static_cast<int>(bounded_draw(rng, 12));
    std::vector<Candidate> cs(n);
    for (int i = 0; i < n; ++i) {
      cs[i].id = "c" + std::to_string(i);
      cs[i].reward = unit_double(rng);
      cs[i].embedding = {normal_draw(rng), normal_draw(rng), normal_draw(rng)};
    }
    auto pool = build_pool("p", cs, false);
    const int exclude = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n)));
    const int k = 1 + static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n - 1)));

    std::vector<int> eligible;
    for (int i = 0; i < n; ++i) {
      if (i != exclude) eligible.push_back(i);
    }
    std::vector<double> pts;
    for (int i : eligible) {
      pts.insert(pts.end(), pool.candidates()[i].embedding.begin(),
                 pool.candidates()[i].embedding.end());
    }
    const Clustering clustering = kmeans(pts, static_cast<int>(eligible.size()), 3, k, trial);
    const SelectionResult r = select_coreset(pool, k, exclude, trial);

    CHECK(static_cast<int>(r.negative_indices.size()) == k);
    for (int j : r.negative_indices) {
      const auto pos = std::find(eligible.begin(), eligible.end(), j);
      REQUIRE(pos != eligible.end());
      const int local = static_cast<int>(pos - eligible.begin());
      const int cluster = clustering.assignments[local];
      for (std::size_t t = 0; t < eligible.size(); ++t) {
        if (clustering.assignments[t] == cluster) {
          CHECK(pool.reward(j) <= pool.reward(eligible[t]));
        }
      }
    }
  }
}

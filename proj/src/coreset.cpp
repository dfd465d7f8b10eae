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

#include "ampo/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "ampo/kernels.hpp"
#include "ampo/rng.hpp"

namespace ampo {

namespace {

double sq_dist(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int t = 0; t < d; ++t) {
    const double diff = a[t] - b[t];
    s += diff * diff;
  }
  return s;
}

// k-means++: first center uniform, then each next center drawn with
// probability proportional to the squared distance to the nearest chosen
// center. Zero total mass (duplicate points) falls back to the smallest
// unchosen index.
std::vector<int> kmeanspp_seed(const double* pts, int n, int d, int k, std::mt19937_64& rng) {
  std::vector<int> centers;
  centers.reserve(k);
  std::vector<char> chosen(n, 0);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());

  const int first = static_cast<int>(bounded_draw(rng, static_cast<std::uint64_t>(n)));
  centers.push_back(first);
  chosen[first] = 1;

  while (static_cast<int>(centers.size()) < k) {
    const double* last = pts + static_cast<std::size_t>(centers.back()) * d;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sq_dist(pts + static_cast<std::size_t>(i) * d, last, d));
      if (!chosen[i]) total += d2[i];
    }
    int next = -1;
    if (total > 0.0) {
      const double target = unit_double(rng) * total;
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        if (chosen[i]) continue;
        acc += d2[i];
        if (acc >= target) {
          next = i;
          break;
        }
      }
      if (next < 0) {  // rounding slipped past the end
        for (int i = n - 1; i >= 0; --i) {
          if (!chosen[i]) {
            next = i;
            break;
          }
        }
      }
    } else {
      for (int i = 0; i < n; ++i) {
        if (!chosen[i]) {
          next = i;
          break;
        }
      }
    }
    centers.push_back(next);
    chosen[next] = 1;
  }
  return centers;
}

// Re-home the point farthest from its current centroid (from a cluster with
// at least two members) into each empty cluster, in cluster order.
void repair_empty_clusters(const double* pts, int n, int d, int k,
                           const std::vector<double>& centroids, std::vector<int>& assign) {
  std::vector<int> count(k, 0);
  for (int i = 0; i < n; ++i) count[assign[i]]++;
  for (int c = 0; c < k; ++c) {
    if (count[c] > 0) continue;
    int pick = -1;
    double worst = -1.0;
    for (int i = 0; i < n; ++i) {
      if (count[assign[i]] < 2) continue;
      const double sq = sq_dist(pts + static_cast<std::size_t>(i) * d,
                                centroids.data() + static_cast<std::size_t>(assign[i]) * d, d);
      if (sq > worst) {
        worst = sq;
        pick = i;
      }
    }
    count[assign[pick]]--;
    assign[pick] = c;
    count[c] = 1;
  }
}

}  // namespace

Clustering kmeans(const std::vector<double>& points, int n, int dim, int k,
                  std::uint64_t seed, int max_iters) {
  if (k < 1 || k > n) {
    throw std::invalid_argument("kmeans: k must be in [1, n], got k=" + std::to_string(k) +
                                " with n=" + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  const double* pts = points.data();

  Clustering out;
  out.k = k;
  out.dim = dim;
  out.centroids.assign(static_cast<std::size_t>(k) * dim, 0.0);
  out.assignments.assign(n, 0);

  if (k == n) {
    for (int i = 0; i < n; ++i) out.assignments[i] = i;
    out.centroids = points;
    out.inertia = 0.0;
    return out;
  }

  const std::vector<int> seeds = kmeanspp_seed(pts, n, dim, k, rng);
  for (int c = 0; c < k; ++c) {
    std::copy(pts + static_cast<std::size_t>(seeds[c]) * dim,
              pts + static_cast<std::size_t>(seeds[c] + 1) * dim,
              out.centroids.begin() + static_cast<std::size_t>(c) * dim);
  }

  std::vector<int> prev(n, -1);
  for (int iter = 0; iter < max_iters; ++iter) {
    kernels::assign_clusters(pts, n, dim, out.centroids.data(), k, out.assignments.data());
    repair_empty_clusters(pts, n, dim, k, out.centroids, out.assignments);
    out.iterations_run = iter + 1;

    std::vector<double> sums(static_cast<std::size_t>(k) * dim, 0.0);
    std::vector<int> count(k, 0);
    for (int i = 0; i < n; ++i) {
      const int c = out.assignments[i];
      count[c]++;
      for (int t = 0; t < dim; ++t) {
        sums[static_cast<std::size_t>(c) * dim + t] += pts[static_cast<std::size_t>(i) * dim + t];
      }
    }
    for (int c = 0; c < k; ++c) {
      for (int t = 0; t < dim; ++t) {
        out.centroids[static_cast<std::size_t>(c) * dim + t] =
            sums[static_cast<std::size_t>(c) * dim + t] / count[c];
      }
    }

    out.inertia = 0.0;
    for (int i = 0; i < n; ++i) {
      out.inertia += sq_dist(pts + static_cast<std::size_t>(i) * dim,
                             out.centroids.data() +
                                 static_cast<std::size_t>(out.assignments[i]) * dim,
                             dim);
    }
    out.inertia_history.push_back(out.inertia);

    if (out.assignments == prev) break;
    prev = out.assignments;
  }
  return out;
}

SelectionResult select_coreset(const CandidatePool& pool, int k, int exclude,
                               std::uint64_t seed, int max_iters) {
  const int n = pool.size();
  if (exclude < 0 || exclude >= n) {
    throw std::invalid_argument("select_coreset: exclude index out of range");
  }
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("select_coreset: k must be in [1, N-1], got " + std::to_string(k));
  }

  std::vector<int> eligible;
  eligible.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    if (i != exclude) eligible.push_back(i);
  }
  const int m = static_cast<int>(eligible.size());
  const int dim = pool.dim();
  std::vector<double> pts(static_cast<std::size_t>(m) * dim);
  for (int i = 0; i < m; ++i) {
    const std::vector<double>& e = pool.candidates()[eligible[i]].embedding;
    std::copy(e.begin(), e.end(), pts.begin() + static_cast<std::size_t>(i) * dim);
  }

  const Clustering clustering = kmeans(pts, m, dim, k, seed, max_iters);

  std::vector<int> rep(k, -1);
  for (int i = 0; i < m; ++i) {
    const int c = clustering.assignments[i];
    if (rep[c] < 0 || pool.reward(eligible[i]) < pool.reward(eligible[rep[c]])) rep[c] = i;
  }

  SelectionResult result;
  result.positive_index = exclude;
  result.negative_indices.reserve(k);
  for (int c = 0; c < k; ++c) result.negative_indices.push_back(eligible[rep[c]]);
  std::sort(result.negative_indices.begin(), result.negative_indices.end());
  result.method = SelectionMethod::kCoreset;
  result.seed = seed;
  return result;
}

}  // namespace ampo

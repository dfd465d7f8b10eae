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

#include "ampo/kernels.hpp"

#include <cmath>
#include <limits>

namespace ampo::kernels {

namespace {

inline double l2(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int k = 0; k < d; ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return std::sqrt(s);
}

inline double min_dist_to(const double* dist_row, const std::vector<int>& centers) {
  double best = std::numeric_limits<double>::infinity();
  for (int j : centers) best = std::min(best, dist_row[j]);
  return best;
}

// Candidate cost after swapping `out` for `in`, summed ascending over i so
// the float association matches a plain recomputation of the objective.
inline double swapped_cost(const double* weights, const double* dist, int m,
                           int out, int in, const std::vector<int>& nearest_member,
                           const std::vector<double>& nearest_dist,
                           const std::vector<double>& second_dist) {
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const double keep = (nearest_member[i] == out) ? second_dist[i] : nearest_dist[i];
    total += weights[i] * std::min(keep, dist[static_cast<std::size_t>(i) * m + in]);
  }
  return total;
}

}  // namespace

namespace serial {

void pairwise_distances(const double* embeddings, int n, int d, double* out) {
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i) * n + i] = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double v = l2(embeddings + static_cast<std::size_t>(i) * d,
                          embeddings + static_cast<std::size_t>(j) * d, d);
      out[static_cast<std::size_t>(i) * n + j] = v;
      out[static_cast<std::size_t>(j) * n + i] = v;
    }
  }
}

double coverage_cost(const double* weights, const double* dist, int m,
                     const std::vector<int>& centers) {
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    total += weights[i] * min_dist_to(dist + static_cast<std::size_t>(i) * m, centers);
  }
  return total;
}

SwapCandidate best_swap(const double* weights, const double* dist, int m,
                        const std::vector<int>& members,
                        const std::vector<int>& nearest_member,
                        const std::vector<double>& nearest_dist,
                        const std::vector<double>& second_dist,
                        double current_cost) {
  std::vector<char> is_member(m, 0);
  for (int j : members) is_member[j] = 1;
  SwapCandidate best;
  for (int out : members) {
    for (int in = 0; in < m; ++in) {
      if (is_member[in]) continue;
      const double cost = swapped_cost(weights, dist, m, out, in, nearest_member,
                                       nearest_dist, second_dist);
      const double improvement = current_cost - cost;
      if (improvement > best.improvement) best = {out, in, improvement, cost};
    }
  }
  return best;
}

void assign_clusters(const double* embeddings, int n, int d,
                     const double* centroids, int k, int* assignment) {
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double best_sq = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      double sq = 0.0;
      for (int t = 0; t < d; ++t) {
        const double diff = embeddings[static_cast<std::size_t>(i) * d + t] -
                            centroids[static_cast<std::size_t>(c) * d + t];
        sq += diff * diff;
      }
      if (sq < best_sq) {
        best_sq = sq;
        best = c;
      }
    }
    assignment[i] = best;
  }
}

}  // namespace serial

void pairwise_distances(const double* embeddings, int n, int d, double* out) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i) * n + i] = 0.0;
    for (int j = i + 1; j < n; ++j) {
      out[static_cast<std::size_t>(i) * n + j] =
          l2(embeddings + static_cast<std::size_t>(i) * d,
             embeddings + static_cast<std::size_t>(j) * d, d);
    }
  }
  // Mirror the upper triangle; entries are bit-identical to the serial path.
#pragma omp parallel for schedule(static)
  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      out[static_cast<std::size_t>(i) * n + j] = out[static_cast<std::size_t>(j) * n + i];
    }
  }
}

double coverage_cost(const double* weights, const double* dist, int m,
                     const std::vector<int>& centers) {
  if (m <= kReductionBlock) {
    return serial::coverage_cost(weights, dist, m, centers);
  }
  const int blocks = (m + kReductionBlock - 1) / kReductionBlock;
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < blocks; ++b) {
    const int lo = b * kReductionBlock;
    const int hi = std::min(m, lo + kReductionBlock);
    double s = 0.0;
    for (int i = lo; i < hi; ++i) {
      s += weights[i] * min_dist_to(dist + static_cast<std::size_t>(i) * m, centers);
    }
    partial[b] = s;
  }
  double total = 0.0;
  for (int b = 0; b < blocks; ++b) total += partial[b];
  return total;
}

SwapCandidate best_swap(const double* weights, const double* dist, int m,
                        const std::vector<int>& members,
                        const std::vector<int>& nearest_member,
                        const std::vector<double>& nearest_dist,
                        const std::vector<double>& second_dist,
                        double current_cost) {
  std::vector<char> is_member(m, 0);
  for (int j : members) is_member[j] = 1;
  std::vector<int> outside;
  outside.reserve(m - members.size());
  for (int i = 0; i < m; ++i) {
    if (!is_member[i]) outside.push_back(i);
  }
  const int pairs = static_cast<int>(members.size() * outside.size());
  if (pairs == 0) return {};

  // Each pair's cost is a fixed-association sum, so results match the serial
  // scan bit for bit; the merge below reproduces its first-best tie rule.
  const int num_out = static_cast<int>(outside.size());
  SwapCandidate best;
#pragma omp parallel
  {
    SwapCandidate local;
    // Chunks are contiguous ascending (out, in) ranges, so strict improvement
    // keeps the first of any tie, matching the serial scan.
#pragma omp for schedule(static) nowait
    for (int p = 0; p < pairs; ++p) {
      const int out = members[p / num_out];
      const int in = outside[p % num_out];
      const double cost = swapped_cost(weights, dist, m, out, in, nearest_member,
                                       nearest_dist, second_dist);
      const double improvement = current_cost - cost;
      if (improvement > local.improvement) local = {out, in, improvement, cost};
    }
#pragma omp critical(ampo_best_swap_merge)
    {
      if (local.improvement > best.improvement ||
          (local.out >= 0 && local.improvement == best.improvement &&
           (best.out < 0 || local.out < best.out ||
            (local.out == best.out && local.in < best.in)))) {
        best = local;
      }
    }
  }
  return best;
}

void assign_clusters(const double* embeddings, int n, int d,
                     const double* centroids, int k, int* assignment) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    serial::assign_clusters(embeddings + static_cast<std::size_t>(i) * d, 1, d, centroids,
                            k, assignment + i);
  }
}

void nearest_two(const double* dist, int m, const std::vector<int>& members,
                 std::vector<int>& nearest_member, std::vector<double>& nearest_dist,
                 std::vector<double>& second_dist) {
  nearest_member.assign(m, -1);
  nearest_dist.assign(m, std::numeric_limits<double>::infinity());
  second_dist.assign(m, std::numeric_limits<double>::infinity());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    const double* row = dist + static_cast<std::size_t>(i) * m;
    for (int j : members) {
      const double v = row[j];
      if (v < nearest_dist[i]) {
        second_dist[i] = nearest_dist[i];
        nearest_dist[i] = v;
        nearest_member[i] = j;
      } else if (v < second_dist[i]) {
        second_dist[i] = v;
      }
    }
  }
}

}  // namespace ampo::kernels

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

#ifndef AMPO_KERNELS_HPP_
#define AMPO_KERNELS_HPP_

#include <vector>

namespace ampo::kernels {

// Data-parallel inner loops, in two flavors: the OpenMP versions below are
// the default path, and ampo::kernels::serial keeps plain reference loops
// for correctness tests and benchmarks.
//
// The parallel versions are bit-deterministic for any thread count:
// reductions are chunked into fixed-size blocks (independent of the number
// of threads) and block results merge in block order, and argmin/argmax
// merges break ties lexicographically.

// Block size for deterministic sum reductions. Inputs at or below this size
// sum left-to-right, identical to the serial path.
inline constexpr int kReductionBlock = 256;

struct SwapCandidate {
  int out = -1;         // member leaving the set
  int in = -1;          // non-member entering
  double improvement = 0.0;  // current_cost - candidate cost
  double cost = 0.0;         // candidate cost
};

namespace serial {

// Pairwise L2 distances of n row-major d-vectors into a symmetric n*n
// matrix with an exactly zero diagonal.
void pairwise_distances(const double* embeddings, int n, int d, double* out);

// sum_i w[i] * min_{j in centers} dist[i*m+j], left-to-right over i.
double coverage_cost(const double* weights, const double* dist, int m,
                     const std::vector<int>& centers);

// Scans every 1-swap of `members` (ascending member order, ascending
// non-member order) and returns the most-improving one; ties keep the first
// in scan order. nearest/second carry, per point, the smallest and
// second-smallest distance into the current member set along with the
// nearest member's identity.
SwapCandidate best_swap(const double* weights, const double* dist, int m,
                        const std::vector<int>& members,
                        const std::vector<int>& nearest_member,
                        const std::vector<double>& nearest_dist,
                        const std::vector<double>& second_dist,
                        double current_cost);

// Squared-L2 nearest-centroid assignment; ties pick the smaller centroid.
void assign_clusters(const double* embeddings, int n, int d,
                     const double* centroids, int k, int* assignment);

}  // namespace serial

void pairwise_distances(const double* embeddings, int n, int d, double* out);
double coverage_cost(const double* weights, const double* dist, int m,
                     const std::vector<int>& centers);
SwapCandidate best_swap(const double* weights, const double* dist, int m,
                        const std::vector<int>& members,
                        const std::vector<int>& nearest_member,
                        const std::vector<double>& nearest_dist,
                        const std::vector<double>& second_dist,
                        double current_cost);
void assign_clusters(const double* embeddings, int n, int d,
                     const double* centroids, int k, int* assignment);

// Rebuilds the nearest/second-nearest bookkeeping for one member set.
void nearest_two(const double* dist, int m, const std::vector<int>& members,
                 std::vector<int>& nearest_member, std::vector<double>& nearest_dist,
                 std::vector<double>& second_dist);

}  // namespace ampo::kernels

#endif  // AMPO_KERNELS_HPP_

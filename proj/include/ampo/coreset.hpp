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

#ifndef AMPO_CORESET_HPP_
#define AMPO_CORESET_HPP_

#include <cstdint>
#include <vector>

#include "ampo/core.hpp"

namespace ampo {

struct Clustering {
  std::vector<int> assignments;   // point -> cluster in [0, k)
  std::vector<double> centroids;  // row-major k*d
  int k = 0;
  int dim = 0;
  int iterations_run = 0;
  double inertia = 0.0;  // sum of squared distances to assigned centroid
  std::vector<double> inertia_history;  // one entry per Lloyd iteration
};

// Lloyd's algorithm over row-major points, seeded with a deterministic
// k-means++ pass. Empty clusters are repaired by re-homing the point
// farthest from its centroid (among clusters that can spare one) as the
// empty cluster's singleton, so all k clusters end nonempty. Converges when
// post-repair assignments stop changing, or after max_iters.
Clustering kmeans(const std::vector<double>& points, int n, int dim, int k,
                  std::uint64_t seed, int max_iters = 100);

// Clusters the non-excluded candidates' embeddings into k groups and takes
// the minimum-reward member of each (smallest index on ties).
SelectionResult select_coreset(const CandidatePool& pool, int k, int exclude,
                               std::uint64_t seed, int max_iters = 100);

}  // namespace ampo

#endif  // AMPO_CORESET_HPP_

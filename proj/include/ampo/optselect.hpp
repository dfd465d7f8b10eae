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

#ifndef AMPO_OPTSELECT_HPP_
#define AMPO_OPTSELECT_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ampo/core.hpp"
#include "ampo/weights.hpp"

namespace ampo {

// A weighted coverage problem over M points: choose k of them so the
// weighted sum of each point's distance to its nearest chosen one is
// minimal. Operations work in local index space [0, M); original_indices
// maps back to pool positions when the instance came from a pool.
struct CoverageInstance {
  std::vector<double> weights;   // size M, nonnegative
  std::vector<double> dist;      // row-major M*M, symmetric, zero diagonal
  int m = 0;
  int k = 0;
  std::vector<int> original_indices;  // empty for standalone instances

  double distance(int i, int j) const { return dist[static_cast<std::size_t>(i) * m + j]; }
};

// Raised when an instance exceeds the exact solver's enumeration budget.
class ExactSolverCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CoverageSolution {
  std::vector<int> selected;  // local indices, sorted ascending
  double cost = 0.0;
  int sweeps = 0;  // local search only: improving swaps applied
};

// sum_i weights[i] * min_{j in s} dist(i, j). Points inside s contribute 0.
double coverage_cost(const CoverageInstance& instance, const std::vector<int>& s);

// Globally optimal size-k subset by lexicographic enumeration with a
// partial-cost lower bound (suffix minima over the not-yet-choosable tail).
// Equal-cost optima resolve to the lexicographically smallest sorted tuple.
// Throws ExactSolverCapExceeded when m > exact_cap or C(m,k) > 2e6.
CoverageSolution solve_exact(const CoverageInstance& instance, int exact_cap = 20);

// 1-swap descent from a seeded uniform-random size-k subset: apply the best
// improving swap while one improves the cost by more than 1e-12.
CoverageSolution solve_local_search(const CoverageInstance& instance, std::uint64_t seed,
                                    int max_sweeps = 1000);

// Same descent from a caller-provided starting subset.
CoverageSolution solve_local_search_from(const CoverageInstance& instance,
                                         std::vector<int> start, int max_sweeps = 1000);

enum class OptSelectMode { kExact, kLocal };

struct OptSelectOptions {
  OptSelectMode mode = OptSelectMode::kLocal;
  WeightScheme scheme = WeightScheme::kExpMeanGap;
  std::uint64_t seed = 0;
  int restarts = 1;
  int max_sweeps = 1000;
  int exact_cap = 20;
  // Re-apply min-max reward normalization and rebuild the reduced distance
  // matrix from embeddings with its own max scaled to 1, so the whole
  // selection runs on freshly rescaled inputs. The conformance tests pin
  // this exact procedure against an independent reimplementation.
  bool renormalize_inputs = false;
};

// Excludes the top-reward candidate, builds the coverage instance over the
// remaining ones (weights from the reduced rewards, reduced-set mean), and
// solves with the requested solver.
SelectionResult select_optselect(const CandidatePool& pool, int k, const OptSelectOptions& opts);

// The coverage instance select_optselect solves, exposed for inspection and
// for scoring selections produced elsewhere.
CoverageInstance make_coverage_instance(const CandidatePool& pool, int k, int exclude,
                                        WeightScheme scheme, bool renormalize_inputs = false);

}  // namespace ampo

#endif  // AMPO_OPTSELECT_HPP_

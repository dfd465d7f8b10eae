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

#ifndef AMPO_VERIFY_HPP_
#define AMPO_VERIFY_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ampo/core.hpp"
#include "ampo/lipschitz.hpp"
#include "ampo/optselect.hpp"

namespace ampo::verify {

// Deterministic instance generators shared by the property suite, the
// acceptance tests, and the CLI.

CandidatePool random_pool(std::uint64_t seed, int n, int dim, bool with_logprobs = true,
                          bool normalize_distances = true);

// Standalone coverage instance over gaussian points; uniform or exp-mean
// weights from uniform rewards.
CoverageInstance random_instance(std::uint64_t seed, int m, int k, bool uniform_weights);

struct PlantedPool {
  CandidatePool pool;
  std::vector<std::vector<int>> clusters;  // partition of the non-top candidates
};

// Well-separated gaussian blobs plus one top-reward candidate; the returned
// partition is the generating one.
PlantedPool planted_cluster_pool(std::uint64_t seed, int num_clusters, int per_cluster, int dim);

// The fixed pool used by the simulator checks: N=16, dim=8, logprobs set.
CandidatePool standard_sim_pool();

struct CheckResult {
  std::string name;
  bool pass = false;
  int instances = 0;
  int failures = 0;
  std::map<std::string, double> metrics;
  std::string note;
};

// Local-vs-exact cost ratio stays within 5x on every instance, and local
// results re-verify as 1-swap stable. inject_fault corrupts the local
// search output with one worsening swap, which the stability re-check must
// catch.
CheckResult check_approx5(std::uint64_t seed, int instances, bool inject_fault = false);

// Coverage-cost argmin family == saturating-reward argmax family under
// exhaustive enumeration.
CheckResult check_equivalence(std::uint64_t seed, int instances);

// saturating_reward(S) == r_max - L * max-gap cost(S) to 1e-12 on random
// (instance, subset, L) triples.
CheckResult check_affine_identity(std::uint64_t seed, int triples);

// Per-cluster representative cost bounded by the measured cluster diameter
// on planted instances; l scales the reported reward bounds.
CheckResult check_additive(std::uint64_t seed, int instances, double l = 0.5);

// Analytic gradient vs central differences, loss shift invariance, and the
// equal-score one-vs-K closed form.
CheckResult check_gradcheck(std::uint64_t seed, int instances);

struct SuiteParams {
  std::uint64_t seed = 20260214;
  std::vector<std::string> checks;  // empty = all
  bool inject_fault = false;
  double lipschitz = 0.5;  // additive check
  int approx5_instances = 200;
  int equivalence_instances = 100;
  int identity_triples = 1000;
  int additive_instances = 50;
  int gradcheck_instances = 100;
};

struct SuiteReport {
  std::vector<CheckResult> checks;
  bool all_pass = false;
};

SuiteReport run_suite(const SuiteParams& params);

}  // namespace ampo::verify

#endif  // AMPO_VERIFY_HPP_

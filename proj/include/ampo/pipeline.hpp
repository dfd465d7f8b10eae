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

#ifndef AMPO_PIPELINE_HPP_
#define AMPO_PIPELINE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ampo/core.hpp"
#include "ampo/io.hpp"
#include "ampo/optselect.hpp"

namespace ampo {

struct BatchParams {
  SelectionMethod method = SelectionMethod::kBottomK;
  int k = 1;
  std::uint64_t seed = 0;
  WeightScheme scheme = WeightScheme::kExpMeanGap;
  int restarts = 1;
  int max_sweeps = 1000;
  int exact_cap = 20;
  bool renormalize_inputs = false;
  bool sequential = false;  // disable prompt-level parallelism
};

struct PoolFailure {
  std::string prompt_id;
  std::string message;
};

struct BatchResult {
  std::vector<PreferenceRecord> records;  // input order, failed pools omitted
  std::vector<PoolFailure> failures;
};

// One selection per pool. Pools are independent and run under an OpenMP
// worker pool; output order always matches input order. Per-pool errors are
// collected, not thrown.
BatchResult select_batch(const std::vector<CandidatePool>& pools, const BatchParams& params);

// Respects AMPO_WORKERS when set, otherwise leaves the OpenMP default
// (logical core count) in place.
void configure_workers_from_env();

}  // namespace ampo

#endif  // AMPO_PIPELINE_HPP_

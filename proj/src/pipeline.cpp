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

#include "ampo/pipeline.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ampo/bottomk.hpp"
#include "ampo/coreset.hpp"

namespace ampo {

namespace {

SelectionResult select_one(const CandidatePool& pool, const BatchParams& params) {
  const int top = top_reward_index(pool);
  switch (params.method) {
    case SelectionMethod::kBottomK: {
      SelectionResult result = select_bottom_k(pool, params.k, top);
      result.seed = params.seed;  // selection is deterministic; keep the run's seed anyway
      return result;
    }
    case SelectionMethod::kCoreset:
      return select_coreset(pool, params.k, top, params.seed);
    case SelectionMethod::kOptSelectExact:
    case SelectionMethod::kOptSelectLocal: {
      OptSelectOptions opts;
      opts.mode = params.method == SelectionMethod::kOptSelectExact ? OptSelectMode::kExact
                                                                    : OptSelectMode::kLocal;
      opts.scheme = params.scheme;
      opts.seed = params.seed;
      opts.restarts = params.restarts;
      opts.max_sweeps = params.max_sweeps;
      opts.exact_cap = params.exact_cap;
      opts.renormalize_inputs = params.renormalize_inputs;
      return select_optselect(pool, params.k, opts);
    }
  }
  throw std::invalid_argument("select_batch: unknown method");
}

}  // namespace

BatchResult select_batch(const std::vector<CandidatePool>& pools, const BatchParams& params) {
  const int n = static_cast<int>(pools.size());
  std::vector<std::optional<PreferenceRecord>> slots(n);
  std::vector<std::optional<PoolFailure>> failures(n);

#pragma omp parallel for schedule(dynamic) if (!params.sequential)
  for (int i = 0; i < n; ++i) {
    try {
      slots[i] = to_preference_record(pools[i], select_one(pools[i], params));
    } catch (const std::exception& e) {
      failures[i] = PoolFailure{pools[i].prompt_id(), e.what()};
    }
  }

  BatchResult result;
  for (int i = 0; i < n; ++i) {
    if (slots[i]) result.records.push_back(std::move(*slots[i]));
    if (failures[i]) result.failures.push_back(std::move(*failures[i]));
  }
  return result;
}

void configure_workers_from_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("AMPO_WORKERS")) {
    const int workers = std::atoi(env);
    if (workers > 0) omp_set_num_threads(workers);
  }
#endif
}

}  // namespace ampo

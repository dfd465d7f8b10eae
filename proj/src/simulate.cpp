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

#include "ampo/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "ampo/bottomk.hpp"
#include "ampo/coreset.hpp"

namespace ampo {

namespace {

SelectionResult run_selection(const CandidatePool& pool, const SimConfig& config) {
  const int top = top_reward_index(pool);
  switch (config.method) {
    case SelectionMethod::kBottomK: {
      SelectionResult result = select_bottom_k(pool, config.k, top);
      result.seed = config.seed;
      return result;
    }
    case SelectionMethod::kCoreset:
      return select_coreset(pool, config.k, top, config.seed);
    case SelectionMethod::kOptSelectExact:
    case SelectionMethod::kOptSelectLocal: {
      OptSelectOptions opts;
      opts.mode = config.method == SelectionMethod::kOptSelectExact ? OptSelectMode::kExact
                                                                    : OptSelectMode::kLocal;
      opts.scheme = config.weight_scheme;
      opts.seed = config.seed;
      opts.restarts = config.restarts;
      return select_optselect(pool, config.k, opts);
    }
  }
  throw std::invalid_argument("run_simulation: unknown selection method");
}

StepRecord observe(int step, const CandidatePool& pool, const std::vector<double>& logits,
                   const SelectionResult& selection, const RefaConfig& refa) {
  const std::vector<double> probs = softmax(logits);
  StepRecord rec;
  rec.step = step;
  rec.loss = refa_loss_from_logits(logits, pool.rewards(), {selection.positive_index},
                                   selection.negative_indices, refa);
  for (int i = 0; i < pool.size(); ++i) rec.expected_reward += pool.reward(i) * probs[i];
  rec.positive_mass = probs[selection.positive_index];
  for (int j : selection.negative_indices) rec.negative_mass += probs[j];
  return rec;
}

}  // namespace

Trajectory run_simulation(const CandidatePool& pool, const SimConfig& config) {
  if (config.learning_rate < 0.0) {
    throw std::invalid_argument("run_simulation: learning_rate must be nonnegative");
  }
  if (config.steps < 0) throw std::invalid_argument("run_simulation: steps must be nonnegative");
  if (config.k < 1 || config.k > pool.size() - 1) {
    throw std::invalid_argument("run_simulation: k must be in [1, N-1]");
  }
  if (config.reselect_every < 1) {
    throw std::invalid_argument("run_simulation: reselect_every must be positive");
  }

  const RefaConfig refa{config.alpha, config.inverse_temperature};
  const std::vector<double> rewards = pool.rewards();

  PolicyState state;
  state.logits.assign(pool.size(), 0.0);
  const bool have_logprobs =
      std::all_of(pool.candidates().begin(), pool.candidates().end(),
                  [](const Candidate& c) { return c.logprob.has_value(); });
  if (have_logprobs) {
    for (int i = 0; i < pool.size(); ++i) state.logits[i] = *pool.candidates()[i].logprob;
  }

  Trajectory traj;
  traj.selection = run_selection(pool, config);

  for (int t = 0; t < config.steps; ++t) {
    if (t > 0 && t % config.reselect_every == 0) traj.selection = run_selection(pool, config);

    const StepRecord rec = observe(t, pool, state.logits, traj.selection, refa);
    if (!std::isfinite(rec.loss)) throw SimulationDiverged(t, "non-finite loss");
    traj.records.push_back(rec);

    const std::vector<double> grad = refa_loss_grad(
        state.logits, rewards, {traj.selection.positive_index}, traj.selection.negative_indices,
        refa);
    for (int i = 0; i < pool.size(); ++i) state.logits[i] -= config.learning_rate * grad[i];
    state.step = t + 1;
  }

  const StepRecord final_rec =
      observe(config.steps, pool, state.logits, traj.selection, refa);
  if (!std::isfinite(final_rec.loss)) throw SimulationDiverged(config.steps, "non-finite loss");
  traj.records.push_back(final_rec);
  traj.final_state = std::move(state);
  return traj;
}

}  // namespace ampo

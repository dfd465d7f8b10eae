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

#ifndef AMPO_SIMULATE_HPP_
#define AMPO_SIMULATE_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ampo/core.hpp"
#include "ampo/optselect.hpp"
#include "ampo/refa.hpp"

namespace ampo {

// Logits of the toy categorical policy over the pool's candidates.
struct PolicyState {
  std::vector<double> logits;
  int step = 0;
};

struct SimConfig {
  SelectionMethod method = SelectionMethod::kOptSelectLocal;
  int k = 1;
  double alpha = 0.0;
  double inverse_temperature = 1.0;
  double learning_rate = 0.1;
  int steps = 100;
  int reselect_every = 1;  // > steps pins the step-0 selection for the whole run
  std::uint64_t seed = 0;
  WeightScheme weight_scheme = WeightScheme::kExpMeanGap;
  int restarts = 1;
};

struct StepRecord {
  int step = 0;
  double loss = 0.0;
  double expected_reward = 0.0;
  double positive_mass = 0.0;
  double negative_mass = 0.0;
};

struct Trajectory {
  std::vector<StepRecord> records;  // one per step index 0..steps
  PolicyState final_state;
  SelectionResult selection;  // the last selection used
};

class SimulationDiverged : public std::runtime_error {
 public:
  SimulationDiverged(int step, const std::string& what)
      : std::runtime_error("simulation diverged at step " + std::to_string(step) + ": " + what),
        step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

// One-positive-vs-K-negatives loop on a fixed pool: select, score under the
// current softmax policy, take a gradient step on the logits, repeat.
// Record t describes the state after t updates. Logits start from the
// candidates' logprobs when all are present, else from zeros.
Trajectory run_simulation(const CandidatePool& pool, const SimConfig& config);

}  // namespace ampo

#endif  // AMPO_SIMULATE_HPP_

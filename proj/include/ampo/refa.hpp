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

#ifndef AMPO_REFA_HPP_
#define AMPO_REFA_HPP_

#include <vector>

namespace ampo {

struct RefaConfig {
  double alpha = 0.0;                // reward-deviation scale
  double inverse_temperature = 1.0;  // multiplies scores before the contrastive softmax
};

// Per-member score: inverse_temperature * (logprob + alpha * |reward - mean|),
// where the mean runs over the subset's rewards. Returned aligned with
// `subset`.
std::vector<double> refa_scores(const std::vector<double>& logprobs,
                                const std::vector<double>& rewards,
                                const std::vector<int>& subset, const RefaConfig& config);

// Group-contrastive loss -log(sum_{pos} e^s / sum_{pos+neg} e^s), computed
// with max-subtracted log-sum-exp. Indices address `scores`.
double refa_loss(const std::vector<double>& scores, const std::vector<int>& positive_indices,
                 const std::vector<int>& negative_indices);

// Analytic gradient of refa_loss over a log-softmax policy on `logits`:
// the positive/negative sets select which candidates score. Matches central
// finite differences of refa_loss_from_logits.
std::vector<double> refa_loss_grad(const std::vector<double>& logits,
                                   const std::vector<double>& rewards,
                                   const std::vector<int>& positive_indices,
                                   const std::vector<int>& negative_indices,
                                   const RefaConfig& config);

// Full forward pass through the toy policy: log-softmax the logits, score
// the subset, return the loss.
double refa_loss_from_logits(const std::vector<double>& logits,
                             const std::vector<double>& rewards,
                             const std::vector<int>& positive_indices,
                             const std::vector<int>& negative_indices,
                             const RefaConfig& config);

std::vector<double> log_softmax(const std::vector<double>& logits);
std::vector<double> softmax(const std::vector<double>& logits);

}  // namespace ampo

#endif  // AMPO_REFA_HPP_

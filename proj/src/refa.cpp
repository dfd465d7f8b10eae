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

#include "ampo/refa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ampo {

namespace {

double log_sum_exp(const std::vector<double>& scores, const std::vector<int>& indices) {
  double mx = -std::numeric_limits<double>::infinity();
  for (int i : indices) mx = std::max(mx, scores[i]);
  double s = 0.0;
  for (int i : indices) s += std::exp(scores[i] - mx);
  return mx + std::log(s);
}

void check_disjoint(const std::vector<int>& pos, const std::vector<int>& neg) {
  for (int p : pos) {
    if (std::find(neg.begin(), neg.end(), p) != neg.end()) {
      throw std::invalid_argument("refa: positive and negative sets overlap at index " +
                                  std::to_string(p));
    }
  }
}

double subset_reward_mean(const std::vector<double>& rewards, const std::vector<int>& subset) {
  double mean = 0.0;
  for (int i : subset) mean += rewards[i];
  return mean / static_cast<double>(subset.size());
}

}  // namespace

std::vector<double> log_softmax(const std::vector<double>& logits) {
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : logits) mx = std::max(mx, v);
  double s = 0.0;
  for (double v : logits) s += std::exp(v - mx);
  const double lse = mx + std::log(s);
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lse;
  return out;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  std::vector<double> out = log_softmax(logits);
  for (double& v : out) v = std::exp(v);
  return out;
}

std::vector<double> refa_scores(const std::vector<double>& logprobs,
                                const std::vector<double>& rewards,
                                const std::vector<int>& subset, const RefaConfig& config) {
  if (subset.empty()) throw std::invalid_argument("refa_scores: empty subset");
  if (config.inverse_temperature <= 0.0) {
    throw std::invalid_argument("refa_scores: inverse_temperature must be positive");
  }
  const double mean = subset_reward_mean(rewards, subset);
  std::vector<double> out(subset.size());
  for (std::size_t t = 0; t < subset.size(); ++t) {
    const int i = subset[t];
    out[t] = config.inverse_temperature *
             (logprobs[i] + config.alpha * std::abs(rewards[i] - mean));
  }
  return out;
}

double refa_loss(const std::vector<double>& scores, const std::vector<int>& positive_indices,
                 const std::vector<int>& negative_indices) {
  if (positive_indices.empty()) throw std::invalid_argument("refa_loss: no positives");
  check_disjoint(positive_indices, negative_indices);
  if (negative_indices.empty()) return 0.0;
  std::vector<int> all(positive_indices);
  all.insert(all.end(), negative_indices.begin(), negative_indices.end());
  return log_sum_exp(scores, all) - log_sum_exp(scores, positive_indices);
}

double refa_loss_from_logits(const std::vector<double>& logits,
                             const std::vector<double>& rewards,
                             const std::vector<int>& positive_indices,
                             const std::vector<int>& negative_indices,
                             const RefaConfig& config) {
  std::vector<int> subset(positive_indices);
  subset.insert(subset.end(), negative_indices.begin(), negative_indices.end());
  const std::vector<double> lp = log_softmax(logits);
  const std::vector<double> scores = refa_scores(lp, rewards, subset, config);

  // Positions of the positives within `subset` are the first block.
  std::vector<int> pos_local(positive_indices.size());
  std::vector<int> neg_local(negative_indices.size());
  for (std::size_t t = 0; t < pos_local.size(); ++t) pos_local[t] = static_cast<int>(t);
  for (std::size_t t = 0; t < neg_local.size(); ++t) {
    neg_local[t] = static_cast<int>(pos_local.size() + t);
  }
  return refa_loss(scores, pos_local, neg_local);
}

std::vector<double> refa_loss_grad(const std::vector<double>& logits,
                                   const std::vector<double>& rewards,
                                   const std::vector<int>& positive_indices,
                                   const std::vector<int>& negative_indices,
                                   const RefaConfig& config) {
  if (positive_indices.empty()) throw std::invalid_argument("refa_loss_grad: no positives");
  check_disjoint(positive_indices, negative_indices);

  std::vector<int> subset(positive_indices);
  subset.insert(subset.end(), negative_indices.begin(), negative_indices.end());
  const std::vector<double> lp = log_softmax(logits);
  const std::vector<double> scores = refa_scores(lp, rewards, subset, config);

  // With s_i = beta * (log_softmax(z)_i + const_i) for i in the subset,
  // dL/ds_i = q_i - p_i where q is the softmax over the whole subset's
  // scores and p the softmax over the positives' scores alone. The policy
  // normalizer contributes -softmax(z)_m * sum_i (q_i - p_i) = 0, so the
  // chain rule collapses to dL/dz_m = beta * (q_m - p_m) on subset members
  // and 0 elsewhere.
  const std::size_t np = positive_indices.size();
  std::vector<int> all_local(subset.size());
  for (std::size_t t = 0; t < subset.size(); ++t) all_local[t] = static_cast<int>(t);
  std::vector<int> pos_local(all_local.begin(), all_local.begin() + np);

  const double lse_all = log_sum_exp(scores, all_local);
  const double lse_pos = log_sum_exp(scores, pos_local);

  std::vector<double> grad(logits.size(), 0.0);
  for (std::size_t t = 0; t < subset.size(); ++t) {
    const double q = std::exp(scores[t] - lse_all);
    const double p = t < np ? std::exp(scores[t] - lse_pos) : 0.0;
    grad[subset[t]] += config.inverse_temperature * (q - p);
  }
  return grad;
}

}  // namespace ampo

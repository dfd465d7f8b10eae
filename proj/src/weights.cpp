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

#include "ampo/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ampo {

const char* to_string(WeightScheme s) {
  return s == WeightScheme::kExpMeanGap ? "exp-mean" : "max-gap";
}

std::optional<WeightScheme> weight_scheme_from_string(const std::string& s) {
  if (s == "exp-mean") return WeightScheme::kExpMeanGap;
  if (s == "max-gap") return WeightScheme::kMaxGapNormalized;
  return std::nullopt;
}

WeightVector weights_exp_mean_gap(const std::vector<double>& rewards) {
  if (rewards.empty()) throw std::invalid_argument("weights_exp_mean_gap: empty rewards");
  double mean = 0.0;
  for (double r : rewards) {
    if (!std::isfinite(r)) throw std::invalid_argument("weights_exp_mean_gap: non-finite reward");
    mean += r;
  }
  mean /= static_cast<double>(rewards.size());
  WeightVector w{WeightScheme::kExpMeanGap, {}, mean};
  w.values.resize(rewards.size());
  for (std::size_t i = 0; i < rewards.size(); ++i) w.values[i] = std::exp(mean - rewards[i]);
  return w;
}

WeightVector weights_max_gap_normalized(const std::vector<double>& rewards) {
  if (rewards.empty()) throw std::invalid_argument("weights_max_gap_normalized: empty rewards");
  const double mx = *std::max_element(rewards.begin(), rewards.end());
  WeightVector w{WeightScheme::kMaxGapNormalized, {}, mx};
  w.values.resize(rewards.size());
  double total = 0.0;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    w.values[i] = mx - rewards[i];
    total += w.values[i];
  }
  if (total > 0.0) {
    for (double& v : w.values) v /= total;
  } else {
    // All rewards equal: uniform weights keep downstream coverage costs
    // defined (they reduce to the unweighted objective).
    const double u = 1.0 / static_cast<double>(rewards.size());
    for (double& v : w.values) v = u;
  }
  return w;
}

WeightVector make_weights(WeightScheme scheme, const std::vector<double>& rewards) {
  return scheme == WeightScheme::kExpMeanGap ? weights_exp_mean_gap(rewards)
                                             : weights_max_gap_normalized(rewards);
}

}  // namespace ampo

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

#ifndef AMPO_WEIGHTS_HPP_
#define AMPO_WEIGHTS_HPP_

#include <optional>
#include <string>
#include <vector>

namespace ampo {

// Two suppression-weight conventions coexist: exp(mean - r) drives the
// selectors, (r_max - r)/W drives the coverage/reward analysis. Callers
// always name the scheme explicitly.
enum class WeightScheme { kExpMeanGap, kMaxGapNormalized };

const char* to_string(WeightScheme s);
std::optional<WeightScheme> weight_scheme_from_string(const std::string& s);

struct WeightVector {
  WeightScheme scheme = WeightScheme::kExpMeanGap;
  std::vector<double> values;
  double reference_reward = 0.0;  // mean for exp-mean, max for max-gap
};

// values[i] = exp(mean(rewards) - rewards[i]).
WeightVector weights_exp_mean_gap(const std::vector<double>& rewards);

// values[i] = (max - rewards[i]) / sum_j(max - rewards[j]); uniform 1/N when
// all rewards are equal.
WeightVector weights_max_gap_normalized(const std::vector<double>& rewards);

WeightVector make_weights(WeightScheme scheme, const std::vector<double>& rewards);

}  // namespace ampo

#endif  // AMPO_WEIGHTS_HPP_

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

#include "ampo/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "ampo/kernels.hpp"

namespace ampo {

const char* to_string(SelectionMethod m) {
  switch (m) {
    case SelectionMethod::kBottomK: return "bottomk";
    case SelectionMethod::kCoreset: return "coreset";
    case SelectionMethod::kOptSelectExact: return "optselect-exact";
    case SelectionMethod::kOptSelectLocal: return "optselect-local";
  }
  return "unknown";
}

std::optional<SelectionMethod> selection_method_from_string(const std::string& s) {
  if (s == "bottomk") return SelectionMethod::kBottomK;
  if (s == "coreset") return SelectionMethod::kCoreset;
  if (s == "optselect-exact") return SelectionMethod::kOptSelectExact;
  if (s == "optselect-local") return SelectionMethod::kOptSelectLocal;
  return std::nullopt;
}

CandidatePool::CandidatePool(std::string prompt_id, std::vector<Candidate> candidates,
                             std::vector<double> distance_matrix, bool distance_normalized)
    : prompt_id_(std::move(prompt_id)),
      candidates_(std::move(candidates)),
      distance_(std::move(distance_matrix)),
      distance_normalized_(distance_normalized) {}

std::vector<double> CandidatePool::rewards() const {
  std::vector<double> r(candidates_.size());
  for (std::size_t i = 0; i < candidates_.size(); ++i) r[i] = candidates_[i].reward;
  return r;
}

std::vector<double> normalize_rewards(std::vector<double> rewards) {
  const auto [lo_it, hi_it] = std::minmax_element(rewards.begin(), rewards.end());
  const double lo = *lo_it, hi = *hi_it;
  if (hi > lo) {
    for (double& r : rewards) r = (r - lo) / (hi - lo);
  } else {
    for (double& r : rewards) r = 0.5;
  }
  return rewards;
}

std::vector<double> normalize_rewards_if_needed(std::vector<double> rewards) {
  const bool needed = std::any_of(rewards.begin(), rewards.end(),
                                  [](double r) { return r < 0.0 || r > 1.0; });
  return needed ? normalize_rewards(std::move(rewards)) : rewards;
}

CandidatePool build_pool(std::string prompt_id, std::vector<Candidate> candidates,
                         bool normalize_distances) {
  const int n = static_cast<int>(candidates.size());
  if (n < 2) {
    throw std::invalid_argument("build_pool: pool '" + prompt_id + "' needs at least 2 candidates, got " +
                                std::to_string(n));
  }
  const std::size_t dim = candidates[0].embedding.size();
  for (const Candidate& c : candidates) {
    if (!std::isfinite(c.reward)) {
      throw std::invalid_argument("build_pool: candidate '" + c.id + "' has non-finite reward");
    }
    if (c.embedding.size() != dim) {
      throw std::invalid_argument("build_pool: candidate '" + c.id + "' has embedding dimension " +
                                  std::to_string(c.embedding.size()) + ", expected " +
                                  std::to_string(dim));
    }
  }

  std::vector<double> rewards(n);
  for (int i = 0; i < n; ++i) rewards[i] = candidates[i].reward;
  rewards = normalize_rewards_if_needed(std::move(rewards));
  for (int i = 0; i < n; ++i) candidates[i].reward = rewards[i];

  std::vector<double> flat(static_cast<std::size_t>(n) * dim);
  for (int i = 0; i < n; ++i) {
    std::copy(candidates[i].embedding.begin(), candidates[i].embedding.end(),
              flat.begin() + static_cast<std::size_t>(i) * dim);
  }
  std::vector<double> dist(static_cast<std::size_t>(n) * n);
  kernels::pairwise_distances(flat.data(), n, static_cast<int>(dim), dist.data());

  if (normalize_distances) {
    const double mx = *std::max_element(dist.begin(), dist.end());
    if (mx >= 1e-12) {
      for (double& v : dist) v /= mx;
    }
  }
  return CandidatePool(std::move(prompt_id), std::move(candidates), std::move(dist),
                       normalize_distances);
}

int top_reward_index(const CandidatePool& pool) {
  if (pool.size() == 0) throw std::invalid_argument("top_reward_index: empty pool");
  int best = 0;
  for (int i = 1; i < pool.size(); ++i) {
    if (pool.reward(i) > pool.reward(best)) best = i;
  }
  return best;
}

double cosine_similarity(const CandidatePool& pool, int i, int j) {
  if (i < 0 || j < 0 || i >= pool.size() || j >= pool.size()) {
    throw std::out_of_range("cosine_similarity: index out of range");
  }
  const std::vector<double>& a = pool.candidates()[i].embedding;
  const std::vector<double>& b = pool.candidates()[j].embedding;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    dot += a[t] * b[t];
    na += a[t] * a[t];
    nb += b[t] * b[t];
  }
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

}  // namespace ampo

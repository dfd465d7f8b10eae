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

#ifndef AMPO_CORE_HPP_
#define AMPO_CORE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ampo {

// One generated response: scalar reward, semantic embedding, and (optionally)
// its log-probability under the generating policy.
struct Candidate {
  std::string id;
  double reward = 0.0;
  std::vector<double> embedding;
  std::optional<double> logprob;
};

enum class SelectionMethod { kBottomK, kCoreset, kOptSelectExact, kOptSelectLocal };

const char* to_string(SelectionMethod m);
std::optional<SelectionMethod> selection_method_from_string(const std::string& s);

// One positive plus K negatives chosen for a pool, with enough metadata to
// reproduce the selection.
struct SelectionResult {
  int positive_index = -1;
  std::vector<int> negative_indices;  // sorted ascending, positive excluded
  SelectionMethod method = SelectionMethod::kBottomK;
  std::optional<double> objective_value;  // coverage cost, opt-select only
  std::uint64_t seed = 0;
  int restarts = 1;
};

// All candidates for one prompt plus the derived pairwise geometry.
// Immutable after construction; safe to share across threads.
class CandidatePool {
 public:
  CandidatePool() = default;
  CandidatePool(std::string prompt_id, std::vector<Candidate> candidates,
                std::vector<double> distance_matrix, bool distance_normalized);

  const std::string& prompt_id() const { return prompt_id_; }
  const std::vector<Candidate>& candidates() const { return candidates_; }
  int size() const { return static_cast<int>(candidates_.size()); }
  int dim() const { return candidates_.empty() ? 0 : static_cast<int>(candidates_[0].embedding.size()); }
  bool distance_normalized() const { return distance_normalized_; }

  double distance(int i, int j) const { return distance_[static_cast<std::size_t>(i) * candidates_.size() + j]; }
  const std::vector<double>& distance_matrix() const { return distance_; }

  double reward(int i) const { return candidates_[i].reward; }
  std::vector<double> rewards() const;

 private:
  std::string prompt_id_;
  std::vector<Candidate> candidates_;
  std::vector<double> distance_;  // row-major N*N, symmetric, zero diagonal
  bool distance_normalized_ = false;
};

// Min-max rescaling applied at ingestion when any reward falls outside [0,1].
// A constant vector that needs rescaling collapses to 0.5 everywhere.
std::vector<double> normalize_rewards_if_needed(std::vector<double> rewards);

// Unconditional min-max rescaling (same 0.5 fallback); used by the
// renormalizing opt-select path.
std::vector<double> normalize_rewards(std::vector<double> rewards);

// Builds the pool: validates shapes, computes the pairwise L2 distance
// matrix, and optionally divides it by its max entry (no-op below 1e-12).
// Rewards are rescaled per normalize_rewards_if_needed.
CandidatePool build_pool(std::string prompt_id, std::vector<Candidate> candidates,
                         bool normalize_distances);

// Smallest index attaining the maximum reward.
int top_reward_index(const CandidatePool& pool);

// Cosine of the two embeddings; 0 when either has zero norm.
double cosine_similarity(const CandidatePool& pool, int i, int j);

}  // namespace ampo

#endif  // AMPO_CORE_HPP_

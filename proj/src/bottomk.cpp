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

#include "ampo/bottomk.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ampo {

SelectionResult select_bottom_k(const CandidatePool& pool, int k, int exclude) {
  const int n = pool.size();
  if (exclude < 0 || exclude >= n) {
    throw std::invalid_argument("select_bottom_k: exclude index out of range");
  }
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("select_bottom_k: k must be in [1, N-1], got " + std::to_string(k));
  }

  std::vector<int> eligible;
  eligible.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    if (i != exclude) eligible.push_back(i);
  }
  std::stable_sort(eligible.begin(), eligible.end(), [&](int a, int b) {
    if (pool.reward(a) != pool.reward(b)) return pool.reward(a) < pool.reward(b);
    return a < b;
  });

  // Everything strictly below the boundary reward is in; the boundary tie
  // group competes on dissimilarity.
  const double boundary = pool.reward(eligible[k - 1]);
  std::vector<int> selected;
  std::vector<int> tied;
  for (int idx : eligible) {
    if (pool.reward(idx) < boundary) {
      selected.push_back(idx);
    } else if (pool.reward(idx) == boundary) {
      tied.push_back(idx);
    }
  }

  while (static_cast<int>(selected.size()) < k) {
    const int need = k - static_cast<int>(selected.size());
    if (static_cast<int>(tied.size()) == need) {
      selected.insert(selected.end(), tied.begin(), tied.end());
      break;
    }
    int pick = tied.front();  // empty selected set => smallest index
    if (!selected.empty()) {
      double best_sim = 2.0;
      for (int cand : tied) {
        double max_sim = -2.0;
        for (int s : selected) max_sim = std::max(max_sim, cosine_similarity(pool, cand, s));
        if (max_sim < best_sim) {
          best_sim = max_sim;
          pick = cand;
        }
      }
    }
    selected.push_back(pick);
    tied.erase(std::find(tied.begin(), tied.end(), pick));
  }

  std::sort(selected.begin(), selected.end());
  SelectionResult result;
  result.positive_index = exclude;
  result.negative_indices = std::move(selected);
  result.method = SelectionMethod::kBottomK;
  return result;
}

}  // namespace ampo

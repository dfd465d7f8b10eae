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

#ifndef AMPO_BOTTOMK_HPP_
#define AMPO_BOTTOMK_HPP_

#include "ampo/core.hpp"

namespace ampo {

// The k lowest-reward candidates among the non-excluded ones. Rewards tied
// at the selection boundary (exact equality) are admitted one at a time,
// each time taking the tied candidate whose maximum cosine similarity to the
// already-selected negatives is smallest; an empty selected set (and any
// remaining tie) falls back to the smallest index. Deterministic.
SelectionResult select_bottom_k(const CandidatePool& pool, int k, int exclude);

}  // namespace ampo

#endif  // AMPO_BOTTOMK_HPP_

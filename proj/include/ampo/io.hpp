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

#ifndef AMPO_IO_HPP_
#define AMPO_IO_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ampo/core.hpp"
#include "ampo/simulate.hpp"

namespace ampo {

// One selection, keyed by candidate ids so files survive reordering.
struct PreferenceRecord {
  std::string prompt_id;
  std::string positive_id;
  std::vector<std::string> negative_ids;
  SelectionMethod method = SelectionMethod::kBottomK;
  std::optional<double> objective_value;
  std::uint64_t seed = 0;
};

struct IngestIssue {
  int line = 0;  // 1-based
  std::string message;
};

struct IngestResult {
  std::vector<CandidatePool> pools;
  std::vector<IngestIssue> issues;
};

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads line-delimited pool records ({prompt_id, responses:[{id, reward,
// embedding, logprob?, text?}]}), validates, and builds pools with
// ingestion-time reward normalization. Malformed lines abort in strict mode
// and are reported and skipped otherwise. Zero valid records is fatal.
IngestResult ingest(const std::string& path, bool strict, bool normalize_distances = true);

// Inverse of ingest for well-formed pools; doubles print shortest-round-trip
// so ingest(write_pools(...)) reproduces values bit-exactly.
void write_pools(const std::string& path, const std::vector<CandidatePool>& pools);

void write_preferences(const std::string& path, const std::vector<PreferenceRecord>& records);
std::vector<PreferenceRecord> read_preferences(const std::string& path);

void write_trajectory(const std::string& path, const Trajectory& trajectory);

// Flat key = value configuration file: '#' comments, quoted or bare strings,
// numbers, booleans. Section headers are rejected.
std::map<std::string, std::string> read_flat_config(const std::string& path);

PreferenceRecord to_preference_record(const CandidatePool& pool, const SelectionResult& result);

// Maps a record's candidate ids back to indices in the pool. Throws
// IngestError on unknown ids or positive/negative overlap.
SelectionResult to_selection_result(const CandidatePool& pool, const PreferenceRecord& record);

}  // namespace ampo

#endif  // AMPO_IO_HPP_

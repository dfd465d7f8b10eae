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

#include "ampo/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ampo {

namespace {

using nlohmann::json;

std::string validate_and_extract(const json& rec, std::string& prompt_id,
                                 std::vector<Candidate>& candidates) {
  if (!rec.is_object()) return "record is not an object";
  if (!rec.contains("prompt_id") || !rec["prompt_id"].is_string()) {
    return "missing string field 'prompt_id'";
  }
  prompt_id = rec["prompt_id"].get<std::string>();
  if (!rec.contains("responses") || !rec["responses"].is_array()) {
    return "missing array field 'responses'";
  }
  const json& responses = rec["responses"];
  if (responses.size() < 2) return "pool needs at least 2 responses";

  std::set<std::string> seen_ids;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    const json& r = responses[i];
    if (!r.is_object()) return "response " + std::to_string(i) + " is not an object";
    if (!r.contains("id") || !r["id"].is_string()) {
      return "response " + std::to_string(i) + " missing string 'id'";
    }
    Candidate c;
    c.id = r["id"].get<std::string>();
    if (!seen_ids.insert(c.id).second) return "duplicate response id '" + c.id + "'";
    if (!r.contains("reward") || !r["reward"].is_number()) {
      return "response '" + c.id + "' missing numeric 'reward'";
    }
    c.reward = r["reward"].get<double>();
    if (!std::isfinite(c.reward)) return "response '" + c.id + "' has non-finite reward";
    if (!r.contains("embedding") || !r["embedding"].is_array() || r["embedding"].empty()) {
      return "response '" + c.id + "' missing non-empty array 'embedding'";
    }
    for (const json& v : r["embedding"]) {
      if (!v.is_number()) return "response '" + c.id + "' has a non-numeric embedding entry";
      c.embedding.push_back(v.get<double>());
      if (!std::isfinite(c.embedding.back())) {
        return "response '" + c.id + "' has a non-finite embedding entry";
      }
    }
    if (i == 0) {
      dim = c.embedding.size();
    } else if (c.embedding.size() != dim) {
      return "response '" + c.id + "' has embedding dimension " +
             std::to_string(c.embedding.size()) + ", expected " + std::to_string(dim);
    }
    if (r.contains("logprob") && !r["logprob"].is_null()) {
      if (!r["logprob"].is_number()) return "response '" + c.id + "' has non-numeric 'logprob'";
      const double lp = r["logprob"].get<double>();
      if (!(lp <= 0.0)) return "response '" + c.id + "' has logprob > 0";
      c.logprob = lp;
    }
    candidates.push_back(std::move(c));
  }
  return "";
}

json preference_to_json(const PreferenceRecord& rec) {
  json j;
  j["prompt_id"] = rec.prompt_id;
  j["positive_id"] = rec.positive_id;
  j["negative_ids"] = rec.negative_ids;
  j["method"] = to_string(rec.method);
  if (rec.objective_value) j["objective_value"] = *rec.objective_value;
  j["seed"] = rec.seed;
  return j;
}

}  // namespace

IngestResult ingest(const std::string& path, bool strict, bool normalize_distances) {
  std::ifstream in(path);
  if (!in) throw IngestError("ingest: cannot open '" + path + "'");

  IngestResult result;
  std::set<std::string> seen_prompts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;

    std::string error;
    std::string prompt_id;
    std::vector<Candidate> candidates;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded()) {
      error = "invalid JSON";
    } else {
      error = validate_and_extract(rec, prompt_id, candidates);
    }
    if (error.empty() && !seen_prompts.insert(prompt_id).second) {
      error = "duplicate prompt_id '" + prompt_id + "'";
    }

    if (!error.empty()) {
      if (strict) {
        throw IngestError("ingest: line " + std::to_string(line_no) + ": " + error);
      }
      result.issues.push_back({line_no, error});
      continue;
    }
    result.pools.push_back(build_pool(std::move(prompt_id), std::move(candidates),
                                      normalize_distances));
  }
  if (result.pools.empty()) throw IngestError("ingest: no valid records in '" + path + "'");
  return result;
}

void write_pools(const std::string& path, const std::vector<CandidatePool>& pools) {
  std::ofstream out(path);
  if (!out) throw IngestError("write_pools: cannot open '" + path + "' for writing");
  for (const CandidatePool& pool : pools) {
    json rec;
    rec["prompt_id"] = pool.prompt_id();
    json responses = json::array();
    for (const Candidate& c : pool.candidates()) {
      json r;
      r["id"] = c.id;
      r["reward"] = c.reward;
      r["embedding"] = c.embedding;
      if (c.logprob) r["logprob"] = *c.logprob;
      responses.push_back(std::move(r));
    }
    rec["responses"] = std::move(responses);
    out << rec.dump() << '\n';
  }
}

void write_preferences(const std::string& path, const std::vector<PreferenceRecord>& records) {
  std::ofstream out(path);
  if (!out) throw IngestError("write_preferences: cannot open '" + path + "' for writing");
  for (const PreferenceRecord& rec : records) out << preference_to_json(rec).dump() << '\n';
}

std::vector<PreferenceRecord> read_preferences(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("read_preferences: cannot open '" + path + "'");
  std::vector<PreferenceRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) {
      throw IngestError("read_preferences: line " + std::to_string(line_no) + ": invalid JSON");
    }
    PreferenceRecord out;
    try {
      out.prompt_id = rec.at("prompt_id").get<std::string>();
      out.positive_id = rec.at("positive_id").get<std::string>();
      out.negative_ids = rec.at("negative_ids").get<std::vector<std::string>>();
      const auto method = selection_method_from_string(rec.at("method").get<std::string>());
      if (!method) throw IngestError("unknown method");
      out.method = *method;
      if (rec.contains("objective_value") && !rec["objective_value"].is_null()) {
        out.objective_value = rec["objective_value"].get<double>();
      }
      out.seed = rec.value("seed", std::uint64_t{0});
    } catch (const std::exception& e) {
      throw IngestError("read_preferences: line " + std::to_string(line_no) + ": " + e.what());
    }
    records.push_back(std::move(out));
  }
  return records;
}

void write_trajectory(const std::string& path, const Trajectory& trajectory) {
  std::ofstream out(path);
  if (!out) throw IngestError("write_trajectory: cannot open '" + path + "' for writing");
  for (const StepRecord& rec : trajectory.records) {
    json j;
    j["step"] = rec.step;
    j["loss"] = rec.loss;
    j["expected_reward"] = rec.expected_reward;
    j["positive_mass"] = rec.positive_mass;
    j["negative_mass"] = rec.negative_mass;
    out << j.dump() << '\n';
  }
}

std::map<std::string, std::string> read_flat_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("config: cannot open '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      throw IngestError("config: line " + std::to_string(line_no) +
                        ": sections are not supported, use flat key = value");
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IngestError("config: line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) {
      throw IngestError("config: line " + std::to_string(line_no) + ": empty key");
    }
    kv[key] = value;
  }
  return kv;
}

PreferenceRecord to_preference_record(const CandidatePool& pool, const SelectionResult& result) {
  PreferenceRecord rec;
  rec.prompt_id = pool.prompt_id();
  rec.positive_id = pool.candidates()[result.positive_index].id;
  for (int j : result.negative_indices) rec.negative_ids.push_back(pool.candidates()[j].id);
  rec.method = result.method;
  rec.objective_value = result.objective_value;
  rec.seed = result.seed;
  return rec;
}

SelectionResult to_selection_result(const CandidatePool& pool, const PreferenceRecord& record) {
  std::map<std::string, int> index_of;
  for (int i = 0; i < pool.size(); ++i) index_of[pool.candidates()[i].id] = i;
  const auto lookup = [&](const std::string& id) {
    const auto it = index_of.find(id);
    if (it == index_of.end()) {
      throw IngestError("selection for '" + record.prompt_id + "' references unknown id '" + id +
                        "'");
    }
    return it->second;
  };
  SelectionResult result;
  result.positive_index = lookup(record.positive_id);
  for (const std::string& id : record.negative_ids) {
    const int idx = lookup(id);
    if (idx == result.positive_index) {
      throw IngestError("selection for '" + record.prompt_id + "' lists the positive '" + id +
                        "' as a negative");
    }
    result.negative_indices.push_back(idx);
  }
  std::sort(result.negative_indices.begin(), result.negative_indices.end());
  if (std::adjacent_find(result.negative_indices.begin(), result.negative_indices.end()) !=
      result.negative_indices.end()) {
    throw IngestError("selection for '" + record.prompt_id + "' repeats a negative id");
  }
  result.method = record.method;
  result.objective_value = record.objective_value;
  result.seed = record.seed;
  return result;
}

}  // namespace ampo

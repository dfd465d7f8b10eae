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

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ampo/bottomk.hpp"
#include "ampo/coreset.hpp"
#include "ampo/core.hpp"
#include "ampo/io.hpp"
#include "ampo/lipschitz.hpp"
#include "ampo/optselect.hpp"
#include "ampo/pipeline.hpp"
#include "ampo/refa.hpp"
#include "ampo/simulate.hpp"
#include "ampo/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitPropertyFailure = 2;

using nlohmann::json;

struct SelectArgs {
  std::string input, output;
  std::string method = "bottomk";
  std::string mode = "local";
  std::string scheme = "exp-mean";
  int k = 1;
  std::uint64_t seed = 0;
  int restarts = 1;
  int max_sweeps = 1000;
  int exact_cap = 20;
  bool renormalize = false;
  bool strict = false;
  bool sequential = false;
  bool no_normalize_distances = false;
};

int run_select(const SelectArgs& args) {
  ampo::IngestResult ingested =
      ampo::ingest(args.input, args.strict, !args.no_normalize_distances);
  for (const ampo::IngestIssue& issue : ingested.issues) {
    std::cerr << "warning: line " << issue.line << ": " << issue.message << '\n';
  }

  ampo::BatchParams params;
  auto method = ampo::selection_method_from_string(
      args.method == "optselect" ? "optselect-" + args.mode : args.method);
  if (!method) {
    std::cerr << "error: unknown method '" << args.method << "'\n";
    return kExitValidation;
  }
  params.method = *method;
  params.k = args.k;
  params.seed = args.seed;
  const auto scheme = ampo::weight_scheme_from_string(args.scheme);
  if (!scheme) {
    std::cerr << "error: unknown weight scheme '" << args.scheme << "'\n";
    return kExitValidation;
  }
  params.scheme = *scheme;
  params.restarts = args.restarts;
  params.max_sweeps = args.max_sweeps;
  params.exact_cap = args.exact_cap;
  params.renormalize_inputs = args.renormalize;
  params.sequential = args.sequential;

  const ampo::BatchResult result = ampo::select_batch(ingested.pools, params);
  for (const ampo::PoolFailure& failure : result.failures) {
    std::cerr << "error: pool '" << failure.prompt_id << "': " << failure.message << '\n';
  }
  ampo::write_preferences(args.output, result.records);
  std::cerr << "wrote " << result.records.size() << " selections to " << args.output << '\n';
  if (!result.failures.empty() && args.strict) return kExitValidation;
  return kExitOk;
}

struct JoinArgs {
  std::string input, selections, output;
  std::string scheme = "exp-mean";
  double alpha = 0.0;
  double beta = 1.0;
  double lipschitz = 0.0;  // 0 = not requested
};

const ampo::CandidatePool* find_pool(const std::vector<ampo::CandidatePool>& pools,
                                     const std::string& prompt_id) {
  for (const ampo::CandidatePool& pool : pools) {
    if (pool.prompt_id() == prompt_id) return &pool;
  }
  return nullptr;
}

int run_cost(const JoinArgs& args) {
  const ampo::IngestResult ingested = ampo::ingest(args.input, false);
  const std::vector<ampo::PreferenceRecord> records = ampo::read_preferences(args.selections);
  const auto scheme = ampo::weight_scheme_from_string(args.scheme);
  if (!scheme) {
    std::cerr << "error: unknown weight scheme '" << args.scheme << "'\n";
    return kExitValidation;
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.output.empty()) {
    file.open(args.output);
    out = &file;
  }
  for (const ampo::PreferenceRecord& rec : records) {
    const ampo::CandidatePool* pool = find_pool(ingested.pools, rec.prompt_id);
    if (!pool) {
      std::cerr << "error: no pool for prompt '" << rec.prompt_id << "'\n";
      return kExitValidation;
    }
    const ampo::SelectionResult sel = ampo::to_selection_result(*pool, rec);
    const ampo::CoverageInstance instance = ampo::make_coverage_instance(
        *pool, static_cast<int>(sel.negative_indices.size()), sel.positive_index, *scheme);
    std::vector<int> local;
    for (int j : sel.negative_indices) {
      const auto it = std::find(instance.original_indices.begin(),
                                instance.original_indices.end(), j);
      local.push_back(static_cast<int>(it - instance.original_indices.begin()));
    }
    json j;
    j["prompt_id"] = rec.prompt_id;
    j["method"] = ampo::to_string(rec.method);
    j["coverage_cost"] = ampo::coverage_cost(instance, local);
    j["weight_scheme"] = args.scheme;
    if (args.lipschitz > 0.0) {
      // With a Lipschitz constant the selection also implies a policy bound:
      // feasibility of the capped simplex and the saturating-policy reward.
      const bool feasible =
          ampo::feasibility_check(*pool, sel.negative_indices, args.lipschitz);
      j["lipschitz"] = args.lipschitz;
      j["feasible"] = feasible;
      if (feasible) {
        j["saturating_reward"] =
            ampo::saturating_reward(*pool, sel.negative_indices, args.lipschitz);
      }
    }
    (*out) << j.dump() << '\n';
  }
  return kExitOk;
}

int run_refa(const JoinArgs& args) {
  const ampo::IngestResult ingested = ampo::ingest(args.input, false);
  const std::vector<ampo::PreferenceRecord> records = ampo::read_preferences(args.selections);
  const ampo::RefaConfig cfg{args.alpha, args.beta};

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.output.empty()) {
    file.open(args.output);
    out = &file;
  }
  for (const ampo::PreferenceRecord& rec : records) {
    const ampo::CandidatePool* pool = find_pool(ingested.pools, rec.prompt_id);
    if (!pool) {
      std::cerr << "error: no pool for prompt '" << rec.prompt_id << "'\n";
      return kExitValidation;
    }
    std::vector<double> logprobs(pool->size());
    for (int i = 0; i < pool->size(); ++i) {
      const std::optional<double>& lp = pool->candidates()[i].logprob;
      if (!lp) {
        std::cerr << "error: pool '" << rec.prompt_id << "' is missing logprobs; refa scores "
                  << "need them\n";
        return kExitValidation;
      }
      logprobs[i] = *lp;
    }
    const ampo::SelectionResult sel = ampo::to_selection_result(*pool, rec);
    std::vector<int> subset{sel.positive_index};
    subset.insert(subset.end(), sel.negative_indices.begin(), sel.negative_indices.end());
    const std::vector<double> scores =
        ampo::refa_scores(logprobs, pool->rewards(), subset, cfg);
    std::vector<int> pos_local{0};
    std::vector<int> neg_local;
    for (std::size_t t = 1; t < subset.size(); ++t) neg_local.push_back(static_cast<int>(t));
    json j;
    j["prompt_id"] = rec.prompt_id;
    j["loss"] = ampo::refa_loss(scores, pos_local, neg_local);
    j["alpha"] = args.alpha;
    j["beta"] = args.beta;
    (*out) << j.dump() << '\n';
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string config_path;
  std::string input;
  std::string prompt_id;
  std::string out_path = "trajectory.jsonl";
  ampo::SimConfig config;
  std::string method = "optselect-local";
  std::string scheme = "exp-mean";
};

int run_simulate(SimulateArgs args, const CLI::App& cmd) {
  // Config file first, explicit flags override.
  if (!args.config_path.empty()) {
    const std::map<std::string, std::string> kv = ampo::read_flat_config(args.config_path);
    const auto has_flag = [&](const std::string& name) { return cmd.count("--" + name) > 0; };
    const auto get = [&](const std::string& key) -> std::optional<std::string> {
      const auto it = kv.find(key);
      if (it == kv.end()) return std::nullopt;
      return it->second;
    };
    if (!has_flag("input")) {
      if (const auto v = get("input")) args.input = *v;
    }
    if (!has_flag("prompt-id")) {
      if (const auto v = get("prompt_id")) args.prompt_id = *v;
    }
    if (!has_flag("out")) {
      if (const auto v = get("out")) args.out_path = *v;
    }
    if (!has_flag("method")) {
      if (const auto v = get("method")) args.method = *v;
    }
    if (!has_flag("weight-scheme")) {
      if (const auto v = get("weight_scheme")) args.scheme = *v;
    }
    if (!has_flag("k")) {
      if (const auto v = get("k")) args.config.k = std::stoi(*v);
    }
    if (!has_flag("alpha")) {
      if (const auto v = get("alpha")) args.config.alpha = std::stod(*v);
    }
    if (!has_flag("beta")) {
      if (const auto v = get("beta")) args.config.inverse_temperature = std::stod(*v);
    }
    if (!has_flag("lr")) {
      if (const auto v = get("learning_rate")) args.config.learning_rate = std::stod(*v);
    }
    if (!has_flag("steps")) {
      if (const auto v = get("steps")) args.config.steps = std::stoi(*v);
    }
    if (!has_flag("reselect-every")) {
      if (const auto v = get("reselect_every")) args.config.reselect_every = std::stoi(*v);
    }
    if (!has_flag("seed")) {
      if (const auto v = get("seed")) args.config.seed = std::stoull(*v);
    }
  }
  if (args.input.empty()) {
    std::cerr << "error: simulate needs an input pool file (--input or config 'input')\n";
    return kExitValidation;
  }
  const auto method = ampo::selection_method_from_string(args.method);
  if (!method) {
    std::cerr << "error: unknown method '" << args.method << "'\n";
    return kExitValidation;
  }
  args.config.method = *method;
  const auto scheme = ampo::weight_scheme_from_string(args.scheme);
  if (!scheme) {
    std::cerr << "error: unknown weight scheme '" << args.scheme << "'\n";
    return kExitValidation;
  }
  args.config.weight_scheme = *scheme;

  const ampo::IngestResult ingested = ampo::ingest(args.input, false);
  const ampo::CandidatePool* pool = args.prompt_id.empty()
                                        ? &ingested.pools.front()
                                        : find_pool(ingested.pools, args.prompt_id);
  if (!pool) {
    std::cerr << "error: no pool for prompt '" << args.prompt_id << "'\n";
    return kExitValidation;
  }

  const ampo::Trajectory traj = ampo::run_simulation(*pool, args.config);
  ampo::write_trajectory(args.out_path, traj);
  const ampo::StepRecord& first = traj.records.front();
  const ampo::StepRecord& last = traj.records.back();
  std::cerr << "simulated " << args.config.steps << " steps on '" << pool->prompt_id()
            << "': loss " << first.loss << " -> " << last.loss << ", expected reward "
            << first.expected_reward << " -> " << last.expected_reward << '\n';
  return kExitOk;
}

struct VerifyArgs {
  std::vector<std::string> checks;
  std::uint64_t seed = 20260214;
  double lipschitz = 0.5;
  std::string report_path;
  bool inject_fault = false;
};

int run_verify(const VerifyArgs& args) {
  ampo::verify::SuiteParams params;
  params.seed = args.seed;
  params.checks = args.checks;
  params.inject_fault = args.inject_fault;
  params.lipschitz = args.lipschitz;
  const ampo::verify::SuiteReport report = ampo::verify::run_suite(params);

  json out;
  out["seed"] = args.seed;
  out["checks"] = json::array();
  for (const ampo::verify::CheckResult& check : report.checks) {
    json c;
    c["name"] = check.name;
    c["pass"] = check.pass;
    c["instances"] = check.instances;
    c["failures"] = check.failures;
    for (const auto& [key, value] : check.metrics) c["metrics"][key] = value;
    if (!check.note.empty()) c["note"] = check.note;
    out["checks"].push_back(std::move(c));
    std::cerr << (check.pass ? "[pass] " : "[FAIL] ") << check.name << " (" << check.instances
              << " instances";
    if (check.failures > 0) std::cerr << ", " << check.failures << " failures";
    std::cerr << ")\n";
  }
  out["all_pass"] = report.all_pass;
  if (!args.report_path.empty()) {
    std::ofstream file(args.report_path);
    file << out.dump(2) << '\n';
  } else {
    std::cout << out.dump(2) << '\n';
  }
  return report.all_pass ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  ampo::configure_workers_from_env();

  CLI::App app{"Active multi-preference selection toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  SelectArgs select_args;
  CLI::App* select = app.add_subcommand(
      "select", "Pick one positive and K negatives per pool and export preference records");
  select->add_option("--input", select_args.input, "Pool records, one JSON object per line")
      ->required();
  select->add_option("--output", select_args.output, "Output preference records (JSONL)")
      ->required();
  select->add_option("--method", select_args.method, "bottomk | coreset | optselect")
      ->default_val("bottomk");
  select->add_option("--mode", select_args.mode, "optselect solver: exact | local")
      ->default_val("local");
  select->add_option("--k", select_args.k, "Number of negatives")->required();
  select->add_option("--seed", select_args.seed, "Seed for randomized steps");
  select->add_option("--weight-scheme", select_args.scheme, "exp-mean | max-gap");
  select->add_option("--restarts", select_args.restarts, "Local-search restarts");
  select->add_option("--max-sweeps", select_args.max_sweeps, "Local-search sweep cap");
  select->add_option("--exact-cap", select_args.exact_cap, "Exact-solver size cap");
  select->add_flag("--renormalize", select_args.renormalize,
                   "Re-minmax rewards and renormalize reduced distances (optselect)");
  select->add_flag("--strict", select_args.strict, "Abort on malformed lines or pool failures");
  select->add_flag("--sequential", select_args.sequential, "Process pools on one worker");
  select->add_flag("--no-normalize-distances", select_args.no_normalize_distances,
                   "Keep raw pairwise distances");

  JoinArgs cost_args;
  CLI::App* cost = app.add_subcommand("cost", "Coverage cost of existing selections");
  cost->add_option("--input", cost_args.input, "Pool records")->required();
  cost->add_option("--selections", cost_args.selections, "Preference records")->required();
  cost->add_option("--output", cost_args.output, "Write report here instead of stdout");
  cost->add_option("--weight-scheme", cost_args.scheme, "exp-mean | max-gap");
  cost->add_option("--lipschitz", cost_args.lipschitz,
                   "Also report capped-simplex feasibility and the saturating reward at L");

  JoinArgs refa_args;
  CLI::App* refa = app.add_subcommand("refa", "Group-contrastive loss of existing selections");
  refa->add_option("--input", refa_args.input, "Pool records")->required();
  refa->add_option("--selections", refa_args.selections, "Preference records")->required();
  refa->add_option("--output", refa_args.output, "Write report here instead of stdout");
  refa->add_option("--alpha", refa_args.alpha, "Reward-deviation scale");
  refa->add_option("--beta", refa_args.beta, "Inverse temperature");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the one-vs-K loop on a toy softmax policy over one pool");
  simulate->add_option("--config", sim_args.config_path, "Flat key = value config file");
  simulate->add_option("--input", sim_args.input, "Pool records");
  simulate->add_option("--prompt-id", sim_args.prompt_id, "Pool to simulate (default: first)");
  simulate->add_option("--out", sim_args.out_path, "Trajectory output (JSONL)");
  simulate->add_option("--method", sim_args.method,
                       "bottomk | coreset | optselect-exact | optselect-local");
  simulate->add_option("--weight-scheme", sim_args.scheme, "exp-mean | max-gap");
  simulate->add_option("--k", sim_args.config.k, "Number of negatives");
  simulate->add_option("--alpha", sim_args.config.alpha, "Reward-deviation scale");
  simulate->add_option("--beta", sim_args.config.inverse_temperature, "Inverse temperature");
  simulate->add_option("--lr", sim_args.config.learning_rate, "Gradient step size");
  simulate->add_option("--steps", sim_args.config.steps, "Number of gradient steps");
  simulate->add_option("--reselect-every", sim_args.config.reselect_every,
                       "Steps between selection refreshes");
  simulate->add_option("--seed", sim_args.config.seed, "Seed");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "Run the property suite");
  verify->add_option("--check", verify_args.checks,
                     "equivalence | approx5 | identity | additive | gradcheck (default: all)");
  verify->add_option("--seed", verify_args.seed, "Suite seed");
  verify->add_option("--lipschitz", verify_args.lipschitz,
                     "Lipschitz constant for the additive check");
  verify->add_option("--report", verify_args.report_path, "Write the JSON report here");
  verify->add_flag("--inject-fault", verify_args.inject_fault,
                   "Corrupt the local search to prove the stability check bites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (select->parsed()) return run_select(select_args);
    if (cost->parsed()) return run_cost(cost_args);
    if (refa->parsed()) return run_refa(refa_args);
    if (simulate->parsed()) return run_simulate(sim_args, *simulate);
    if (verify->parsed()) return run_verify(verify_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

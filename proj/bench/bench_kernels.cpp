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

// Serial reference vs OpenMP kernels on sizes well past everyday pool
// sizes, so the parallel paths actually engage.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "ampo/kernels.hpp"
#include "ampo/rng.hpp"

namespace {

using ampo::kernels::SwapCandidate;

struct Fixture {
  int m;
  std::vector<double> points;   // m x 8
  std::vector<double> dist;     // m x m
  std::vector<double> weights;  // m
  std::vector<int> members;
  std::vector<int> nearest_member;
  std::vector<double> nearest_dist, second_dist;
  double cost;

  explicit Fixture(int size, int k) : m(size) {
    std::mt19937_64 rng(99);
    points.resize(static_cast<std::size_t>(m) * 8);
    for (double& v : points) v = ampo::normal_draw(rng);
    dist.resize(static_cast<std::size_t>(m) * m);
    ampo::kernels::serial::pairwise_distances(points.data(), m, 8, dist.data());
    weights.resize(m);
    for (double& w : weights) w = 0.1 + ampo::unit_double(rng);
    members = ampo::sample_k_subset(m, k, rng);
    ampo::kernels::nearest_two(dist.data(), m, members, nearest_member, nearest_dist,
                               second_dist);
    cost = ampo::kernels::serial::coverage_cost(weights.data(), dist.data(), m, members);
  }
};

void BM_PairwiseSerial(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)), 8);
  std::vector<double> out(f.dist.size());
  for (auto _ : state) {
    ampo::kernels::serial::pairwise_distances(f.points.data(), f.m, 8, out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_PairwiseParallel(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)), 8);
  std::vector<double> out(f.dist.size());
  for (auto _ : state) {
    ampo::kernels::pairwise_distances(f.points.data(), f.m, 8, out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_CoverageCostSerial(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)), 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ampo::kernels::serial::coverage_cost(f.weights.data(), f.dist.data(), f.m, f.members));
  }
}

void BM_CoverageCostParallel(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)), 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ampo::kernels::coverage_cost(f.weights.data(), f.dist.data(), f.m, f.members));
  }
}

void BM_BestSwapSerial(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)), 16);
  for (auto _ : state) {
    const SwapCandidate swap = ampo::kernels::serial::best_swap(
        f.weights.data(), f.dist.data(), f.m, f.members, f.nearest_member, f.nearest_dist,
        f.second_dist, f.cost);
    benchmark::DoNotOptimize(swap);
  }
}

void BM_BestSwapParallel(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)), 16);
  for (auto _ : state) {
    const SwapCandidate swap =
        ampo::kernels::best_swap(f.weights.data(), f.dist.data(), f.m, f.members,
                                 f.nearest_member, f.nearest_dist, f.second_dist, f.cost);
    benchmark::DoNotOptimize(swap);
  }
}

}  // namespace

BENCHMARK(BM_PairwiseSerial)->Arg(256)->Arg(1024);
BENCHMARK(BM_PairwiseParallel)->Arg(256)->Arg(1024);
BENCHMARK(BM_CoverageCostSerial)->Arg(512)->Arg(2048);
BENCHMARK(BM_CoverageCostParallel)->Arg(512)->Arg(2048);
BENCHMARK(BM_BestSwapSerial)->Arg(128)->Arg(512);
BENCHMARK(BM_BestSwapParallel)->Arg(128)->Arg(512);

BENCHMARK_MAIN();

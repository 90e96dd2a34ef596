// Copyright 2026 The wtt Authors
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


#include <array>

#include <benchmark/benchmark.h>

#include "wtt/collision.hpp"
#include "wtt/metrics.hpp"
#include "wtt/nonmarkov.hpp"

namespace {

using namespace wtt;

void BM_SpectralCache(benchmark::State& state) {
  ModelConfig c;
  c.env.kind = state.range(0) ? EnvKind::Qubit : EnvKind::QutritLinear;
  for (auto _ : state) {
    auto h = CollisionHamiltonian::create(c);
    benchmark::DoNotOptimize(h->spectrum().eigenvalues.data());
    benchmark::DoNotOptimize(h->system_basis().size());
  }
}
BENCHMARK(BM_SpectralCache)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Collision(benchmark::State& state) {
  const ModelConfig c;
  SimulationState s = make_state(c);
  for (auto _ : state) benchmark::DoNotOptimize(step_collision(s, c).size());
}
BENCHMARK(BM_Collision)->Unit(benchmark::kMillisecond);

void BM_Amplification(benchmark::State& state) {
  const ModelConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(amplification(c, 1.0, Terminal::L).alpha);
}
BENCHMARK(BM_Amplification)->Unit(benchmark::kMillisecond);

void BM_TimeSweep(benchmark::State& state) {
  const ModelConfig c;
  const auto grid = linear_grid(0.0, 5.0, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(sweep(c, SweepAxis::Time, grid).records.size());
}
BENCHMARK(BM_TimeSweep)->Unit(benchmark::kMillisecond);

void BM_Blp(benchmark::State& state) {
  const ModelConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(blp_measure(c, Terminal::M, 3.0).value);
}
BENCHMARK(BM_Blp)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

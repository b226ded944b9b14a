// Copyright 2026 The fbmsup Authors.
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


#include <benchmark/benchmark.h>

#include <vector>

#include "fbmsup/bounds.hpp"
#include "fbmsup/mc.hpp"

namespace {

void BM_CombinedBounds(benchmark::State& state) {
  const fbmsup::Hurst h(static_cast<double>(state.range(0)) / 100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fbmsup::combined_bounds(h));
  }
}
BENCHMARK(BM_CombinedBounds)->Arg(10)->Arg(30)->Arg(49)->Arg(70);

void BM_Omega(benchmark::State& state) {
  const fbmsup::Hurst h(static_cast<double>(state.range(0)) / 100.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fbmsup::omega(h));
  }
}
BENCHMARK(BM_Omega)->Arg(5)->Arg(25)->Arg(45);

void BM_OmegaDirect(benchmark::State& state) {
  const fbmsup::Hurst h(0.25);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fbmsup::omega_direct(h));
  }
}
BENCHMARK(BM_OmegaDirect);

void BM_SamplePair(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const fbmsup::mc::FgnSampler sampler({fbmsup::Hurst(0.3), n, 1.0 / 1024});
  std::vector<double> a(n), b(n);
  std::uint64_t pair = 0;
  for (auto _ : state) {
    sampler.sample_pair(pair++, 42, a, b);
    benchmark::DoNotOptimize(a.data());
    benchmark::DoNotOptimize(b.data());
  }
  state.SetItemsProcessed(state.iterations() * 2 * state.range(0));
}
BENCHMARK(BM_SamplePair)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

}  // namespace

BENCHMARK_MAIN();

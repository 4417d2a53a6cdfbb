// Copyright 2026 The twinscf Authors
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

#include "twinscf/blockdiag.h"
#include "twinscf/collapse.h"
#include "twinscf/experiment.h"
#include "twinscf/mod_decomp.h"
#include "twinscf/models.h"
#include "twinscf/scf.h"

namespace twinscf {
namespace {

std::vector<Graph> gnp_batch(size_t n, double p, size_t count) {
    Rng rng(substream_seed(42, n));
    std::vector<Graph> out;
    for (size_t i = 0; i < count; i++) out.push_back(sample_gnp(n, p, rng));
    return out;
}

void BM_Decompose(benchmark::State &state) {
    auto graphs = gnp_batch(static_cast<size_t>(state.range(0)), 0.3, 64);
    size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(decompose(graphs[i++ % graphs.size()]));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Decompose)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_CollapseFull(benchmark::State &state) {
    auto graphs = gnp_batch(static_cast<size_t>(state.range(0)), 0.1, 64);
    size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(collapse_full(graphs[i++ % graphs.size()]));
}
BENCHMARK(BM_CollapseFull)->Arg(20)->Arg(64)->Arg(128);

void BM_ScfVerdict(benchmark::State &state) {
    auto graphs = gnp_batch(static_cast<size_t>(state.range(0)), 0.05, 64);
    size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(scf_verdict(graphs[i++ % graphs.size()]));
}
BENCHMARK(BM_ScfVerdict)->Arg(20)->Arg(64)->Arg(128);

// One full-alphabet brick sample at small p: sampling, frustration graph and both verdicts.
void BM_BrickInstance(benchmark::State &state) {
    Tiling t = parse_tiling("4x4");
    Rng rng(7);
    double p = static_cast<double>(state.range(0)) / 1000.0;
    for (auto _ : state) {
        Graph g = build_frustration_graph(sample_brick(p, t, rng)).graph;
        benchmark::DoNotOptimize(evaluate_instance(g, CollapseMode::Full));
    }
}
BENCHMARK(BM_BrickInstance)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BlockDiagVerify(benchmark::State &state) {
    Rng rng(3);
    std::vector<Hamiltonian> hs;
    for (int i = 0; i < 16; i++) hs.push_back(sample_uniform_pauli(static_cast<size_t>(state.range(0)), 0, 0, 12, rng));
    size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(verify_block_diagonalization(hs[i++ % hs.size()]));
}
BENCHMARK(BM_BlockDiagVerify)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace twinscf

BENCHMARK_MAIN();

// Copyright 2026 The ewfnogo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include <benchmark/benchmark.h>

#include "ewfnogo/nogo.hpp"
#include "ewfnogo/polytope.hpp"

namespace {

using namespace ewfnogo;

Table2x2 correlated(double e) { return {(1 + e) / 4, (1 - e) / 4, (1 - e) / 4, (1 + e) / 4}; }

void BM_FineInfeasible(benchmark::State &state) {
    const double e = 1 / std::sqrt(2.0);
    const MarginalConstraintSet cs = fine_constraints(correlated(e), correlated(e), correlated(e), correlated(-e));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lp_feasibility(cs));
    }
}
BENCHMARK(BM_FineInfeasible);

void BM_FineFeasible(benchmark::State &state) {
    const MarginalConstraintSet cs = fine_constraints(correlated(0.3), correlated(0.3), correlated(0.3), correlated(0.3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lp_feasibility(cs));
    }
}
BENCHMARK(BM_FineFeasible);

void BM_Membership(benchmark::State &state) {
    const std::size_t m = static_cast<std::size_t>(state.range(0));
    const ScenarioShape shape{m, m, 2, 2};
    const Behavior b = strategy_behavior(shape, strategy_at(shape, shape.vertex_count() / 3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(membership(b, shape));
    }
}
BENCHMARK(BM_Membership)->Arg(2)->Arg(3);

void BM_RunOperational(benchmark::State &state) {
    const OFConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_of_scenario(cfg));
    }
}
BENCHMARK(BM_RunOperational);

void BM_VerifyOperational(benchmark::State &state) {
    const OFConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_of_theorem(cfg));
    }
}
BENCHMARK(BM_VerifyOperational);

void BM_VerifyAppendix(benchmark::State &state) {
    const ExtendedOFConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_appendix_b(cfg));
    }
}
BENCHMARK(BM_VerifyAppendix)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Copyright 2026 The fewatom Authors
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

#include "fewatom/fewatom.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace fewatom;

namespace {

AtomConfiguration centred_ring(std::size_t n, double L) {
    AtomConfiguration c;
    c.positions.push_back(Vec3::Zero());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n - 1);
        c.positions.push_back(L * Vec3(std::cos(a), std::sin(a), 0.0));
    }
    c.dipoles.assign(n, Vec3::UnitZ());
    return c;
}

void BM_Couplings(benchmark::State& state) {
    const AtomConfiguration c = centred_ring(static_cast<std::size_t>(state.range(0)), 0.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(coupling_matrices(c));
    }
}
BENCHMARK(BM_Couplings)->DenseRange(2, 5);

void BM_BuildLiouvillian(benchmark::State& state) {
    const CouplingMatrices m = coupling_matrices(centred_ring(static_cast<std::size_t>(state.range(0)), 0.7));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_liouvillian(m, 0, 3.0));
    }
}
BENCHMARK(BM_BuildLiouvillian)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

void BM_SteadyState(benchmark::State& state) {
    const CouplingMatrices m = coupling_matrices(centred_ring(static_cast<std::size_t>(state.range(0)), 0.7));
    const Superoperator L = build_liouvillian(m, 0, 3.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(steady_state(L));
    }
}
BENCHMARK(BM_SteadyState)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
    const CouplingMatrices m = coupling_matrices(centred_ring(static_cast<std::size_t>(state.range(0)), 0.7));
    const Superoperator L = build_liouvillian(m, 0, 3.0);
    const DensityMatrix s = steady_state(L);
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectrum_lorentzians(L, m, s));
    }
    state.counters["terms"] = static_cast<double>(sector_dimension(m.size(), -1));
}
BENCHMARK(BM_Spectrum)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_Fwhm(benchmark::State& state) {
    const CouplingMatrices m = coupling_matrices(centred_ring(4, 0.7));
    const Superoperator L = build_liouvillian(m, 0, 3.0);
    const LorentzianSum lines = spectrum_lorentzians(L, m, steady_state(L));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fwhm(lines));
    }
}
BENCHMARK(BM_Fwhm)->Unit(benchmark::kMillisecond);

void BM_SweepPoint(benchmark::State& state) {
    const CouplingMatrices m = coupling_matrices(centred_ring(static_cast<std::size_t>(state.range(0)), 0.7));
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_point(m, 0, 5.0));
    }
}
BENCHMARK(BM_SweepPoint)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// Copyright 2026 The typlab Authors
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

#include "typlab/dynamics.hpp"
#include "typlab/ensembles.hpp"

using namespace typlab;

namespace {

ComplexMatrix random_hermitian(Index d, RngStream &rng) {
    const ComplexMatrix g = rng.ginibre(d, d);
    return 0.5 * (g + g.adjoint());
}

void BM_HermitianEig(benchmark::State &state) {
    const Index d = state.range(0);
    RngStream rng(1, 0);
    const ComplexMatrix a = random_hermitian(d, rng);
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(a));
    state.SetComplexityN(d);
}
BENCHMARK(BM_HermitianEig)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_ReducedFromPure(benchmark::State &state) {
    const Dims dims{2, state.range(0)};
    RngStream rng(2, 0);
    ComplexVector psi = rng.complex_normal_vector(dims.total());
    psi.normalize();
    for (auto _ : state) benchmark::DoNotOptimize(reduced_from_pure(psi, dims, Subsystem::S));
}
BENCHMARK(BM_ReducedFromPure)->Arg(32)->Arg(128)->Arg(512);

void BM_PartialTraceDense(benchmark::State &state) {
    const Dims dims{4, state.range(0)};
    RngStream rng(3, 0);
    const ComplexMatrix rho = random_density_matrix(dims.total(), 4, rng);
    for (auto _ : state) benchmark::DoNotOptimize(partial_trace(rho, dims, Subsystem::B));
}
BENCHMARK(BM_PartialTraceDense)->Arg(16)->Arg(64);

void BM_HaarState(benchmark::State &state) {
    const Index d = state.range(0);
    const ComplexMatrix basis = ComplexMatrix::Identity(d, d);
    RngStream rng(4, 0);
    for (auto _ : state) benchmark::DoNotOptimize(sample_haar_state(basis, rng));
}
BENCHMARK(BM_HaarState)->Arg(64)->Arg(256)->Arg(1024);

void BM_HaarUnitary(benchmark::State &state) {
    RngStream rng(5, 0);
    for (auto _ : state) benchmark::DoNotOptimize(haar_unitary(state.range(0), rng));
}
BENCHMARK(BM_HaarUnitary)->Arg(32)->Arg(128);

void BM_GapAnalysis(benchmark::State &state) {
    SpectrumSpec spec;
    RngStream rng(6, 0);
    const RealVector e = sample_non_resonant_spectrum(spec, state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(gap_analysis(e));
}
BENCHMARK(BM_GapAnalysis)->Arg(32)->Arg(64)->Arg(128);

void BM_EvolveSampledTimes(benchmark::State &state) {
    const Dims dims{2, state.range(0)};
    RngStream rng(7, 0);
    const Hamiltonian h = sample_random_hamiltonian(SpectrumSpec{}, dims, rng);
    const PureState psi = sample_haar_state(ComplexMatrix::Identity(dims.total(), dims.total()), rng, dims);
    const PureEvolution evo(h, psi.amplitudes());
    double t = 0.0;
    for (auto _ : state) {
        t += 0.37;
        benchmark::DoNotOptimize(reduced_from_pure(evo.state_at(t), dims, Subsystem::S));
    }
}
BENCHMARK(BM_EvolveSampledTimes)->Arg(32)->Arg(128);

} // namespace

BENCHMARK_MAIN();

// SPDX-License-Identifier: Apache-2.0
//
// rasense: rotatable-antenna sparse-array DOA estimation via tensor decomposition
// Copyright (C) 2026 The rasense authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Serial reference vs OpenMP kernels. Run with --benchmark_filter to pick a family.

#include "rasense/harness.hpp"
#include "rasense/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace rasense;

namespace
{
    struct Dictionaries
    {
        cmat array_dict;
        rmat gain_dict;
        cvec a_hat;
        cvec b_hat;
        cmat noise_subspace;
    };

    const Dictionaries &dictionaries()
    {
        static const Dictionaries d = [] {
            const ExperimentParams p;
            const AngularGrid grid = p.grid();
            Dictionaries out;
            out.array_dict = array_manifold(grid.points(), p.geometry(Scheme::US_RA));
            out.gain_dict = gain_manifold(grid.points(), p.schedule(), p.pattern());
            out.gain_dict.colwise().normalize();
            std::mt19937_64 rng(1);
            std::normal_distribution<double> g;
            out.a_hat = cvec::NullaryExpr(8, [&] { return cdouble(g(rng), g(rng)); });
            out.b_hat = cvec::NullaryExpr(7, [&] { return cdouble(g(rng), g(rng)); });
            out.noise_subspace = cmat::NullaryExpr(8, 5, [&] { return cdouble(g(rng), g(rng)); });
            return out;
        }();
        return d;
    }

    void joint_serial(benchmark::State &state)
    {
        const auto &d = dictionaries();
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::joint_spectrum_serial(d.a_hat, d.b_hat, d.array_dict, d.gain_dict));
    }

    void joint_parallel(benchmark::State &state)
    {
        const auto &d = dictionaries();
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::joint_spectrum(d.a_hat, d.b_hat, d.array_dict, d.gain_dict));
    }

    void music_serial(benchmark::State &state)
    {
        const auto &d = dictionaries();
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::music_spectrum_serial(d.noise_subspace, d.array_dict));
    }

    void music_parallel(benchmark::State &state)
    {
        const auto &d = dictionaries();
        for (auto _ : state)
            benchmark::DoNotOptimize(kernels::music_spectrum(d.noise_subspace, d.array_dict));
    }

    SweepSpec small_sweep()
    {
        SweepSpec spec;
        spec.values = {0.0, 10.0};
        spec.trials = 10;
        spec.base_seed = 7;
        return spec;
    }

    void sweep_serial(benchmark::State &state)
    {
        const SweepSpec spec = small_sweep();
        for (auto _ : state)
            benchmark::DoNotOptimize(run_sweep_serial(spec));
    }

    void sweep_parallel(benchmark::State &state)
    {
        const SweepSpec spec = small_sweep();
        for (auto _ : state)
            benchmark::DoNotOptimize(run_sweep(spec));
    }
}

BENCHMARK(joint_serial);
BENCHMARK(joint_parallel);
BENCHMARK(music_serial);
BENCHMARK(music_parallel);
BENCHMARK(sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(sweep_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

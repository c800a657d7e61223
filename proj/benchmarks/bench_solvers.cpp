// SPDX-License-Identifier: Apache-2.0
//
// beamsim: wideband THz RIS beamforming simulator
// Copyright (C) 2026 The beamsim Authors
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

#include "beamsim/analog_frontend.hpp"
#include "beamsim/beam_split.hpp"
#include "beamsim/orchestrator.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace beamsim;

namespace
{
    CMatrix gaussian(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols)
    {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        CMatrix a(rows, cols);
        for (Eigen::Index i = 0; i < a.size(); ++i)
            a.data()[i] = {n(rng), n(rng)};
        return a;
    }

    void precoder_update(benchmark::State &state)
    {
        SystemConfig cfg;
        cfg.n_tx = int(state.range(0));
        const auto ch = channel::synthesize_channels(cfg);
        const auto front = analog::build_frontend(cfg, ch);
        const auto fa = analog::effective_analog_all(front, ch.frequencies);
        const auto psi = ris::beam_split_aware_init(ch);
        const auto hhat = effective_channels(ch, fa, psi);
        const auto d = digital::matched_filter_init(hhat, fa, cfg.p_max);
        const auto u = digital::equalizer_update(hhat, d, cfg.sigma2);
        const RMatrix tau = digital::weight_update(digital::mse_eval(hhat, d, u, cfg.sigma2));
        for (auto _ : state)
            benchmark::DoNotOptimize(digital::precoder_update(hhat, u, tau, fa, cfg.p_max));
    }
    BENCHMARK(precoder_update)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

    void admm_solve(benchmark::State &state)
    {
        const int n = int(state.range(0));
        std::mt19937_64 rng(7);
        const CMatrix a = gaussian(rng, n, n / 4);
        ris::QuadraticForm qf;
        qf.lambda = a * a.adjoint();
        qf.upsilon = gaussian(rng, n, 1).col(0);
        const auto start = ReflectionState::filled(1, n, 1.0);
        for (auto _ : state)
            benchmark::DoNotOptimize(ris::admm_solve(qf, start));
    }
    BENCHMARK(admm_solve)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

    void algorithm1_desk(benchmark::State &state)
    {
        SystemConfig cfg;
        for (auto _ : state)
            benchmark::DoNotOptimize(algorithm1(cfg).final_rate());
    }
    BENCHMARK(algorithm1_desk)->Unit(benchmark::kMillisecond);

    void gain_sweep(benchmark::State &state)
    {
        SystemConfig cfg;
        cfg.num_subcarriers = int(state.range(0));
        const auto plans = split::reference_deployments();
        for (auto _ : state)
            benchmark::DoNotOptimize(split::gain_sweep(cfg, {0.5, 0.5}, plans, "bench"));
    }
    BENCHMARK(gain_sweep)->Arg(128)->Arg(1024)->Unit(benchmark::kMicrosecond);
}

BENCHMARK_MAIN();

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

#include "beamsim/errors.hpp"
#include "beamsim/orchestrator.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace beamsim;

namespace
{
    SystemConfig small_config(std::uint64_t seed = 1)
    {
        SystemConfig cfg;
        cfg.num_subcarriers = 4;
        cfg.n_tx = 8;
        cfg.k_t = 4;
        cfg.num_ris = 2;
        cfg.n_rf = 2;
        cfg.ris_rows = 4;
        cfg.ris_cols = 4;
        cfg.num_users = 2;
        cfg.geometry.ris_positions = {{0.0, 80.0, 6.0}, {0.0, 100.0, 8.0}};
        cfg.seed = seed;
        cfg.validate();
        return cfg;
    }
}

TEST(SumRate, ZeroPrecodersGiveZero)
{
    const SystemConfig cfg = small_config();
    const auto ch = channel::synthesize_channels(cfg);
    const auto front = analog::build_frontend(cfg, ch);
    const auto fa = analog::effective_analog_all(front, ch.frequencies);
    digital::PrecoderSet d;
    d.d.assign(cfg.num_subcarriers, CMatrix::Zero(cfg.n_rf, cfg.num_users));
    const auto psi = ReflectionState::filled(cfg.num_ris, cfg.ris_elements(), 1.0);
    EXPECT_EQ(sum_rate(ch, fa, d, psi, cfg.sigma2), 0.0);
}

TEST(SumRate, SingleLinkAtUnitSnr)
{
    channel::ChannelSet ch;
    ch.num_ris = ch.num_subcarriers = ch.num_users = ch.n_tx = ch.ris_rows = ch.ris_cols = 1;
    ch.f_c = 1.0;
    ch.frequencies = {1.0};
    ch.G = {CMatrix::Constant(1, 1, cd(0.0, 2.0))};
    ch.f = {CRowVector::Constant(1, 0.5)};
    digital::PrecoderSet d;
    d.d = {CMatrix::Constant(1, 1, 0.3)};
    const std::vector<CMatrix> fa{CMatrix::Identity(1, 1)};
    const auto psi = ReflectionState::filled(1, 1, 1.0);
    EXPECT_NEAR(sum_rate(ch, fa, d, psi, 0.09), 1.0, 1e-14);
}

TEST(SumRate, MatchesLoopOracle)
{
    oracle::Rng rng(40);
    const auto ch = oracle::random_channel_set(rng, 2, 3, 3, 6, 2, 2);
    std::vector<CMatrix> fa;
    digital::PrecoderSet d;
    for (int m = 0; m < 3; ++m)
    {
        fa.push_back(oracle::random_matrix(rng, 6, 3));
        d.d.push_back(oracle::random_matrix(rng, 3, 3));
    }
    const auto psi = oracle::random_reflection(rng, 2, 4);
    const double ref = oracle::loop_sum_rate(ch, fa, d, psi, 0.2);
    EXPECT_NEAR(sum_rate(ch, fa, d, psi, 0.2), ref, 1e-10 * ref);

    double parts = 0.0;
    for (double r : per_subcarrier_rate(ch, fa, d, psi, 0.2))
        parts += r;
    EXPECT_NEAR(parts, ref, 1e-10 * ref);
}

TEST(Algorithm1, MonotoneFeasibleReproducible)
{
    const SystemConfig cfg = small_config(3);
    const RunResult a = algorithm1(cfg);
    ASSERT_GE(a.rate_trace.size(), 2u);
    for (std::size_t i = 1; i < a.rate_trace.size(); ++i)
        EXPECT_GE(a.rate_trace[i], a.rate_trace[i - 1] - 1e-8 * a.rate_trace[i - 1]);
    EXPECT_LE(a.power_used, cfg.p_max * (1 + 1e-9));
    EXPECT_LE(a.psi.max_modulus(), 1.0 + 1e-12);
    EXPECT_TRUE(a.converged);
    EXPECT_EQ(a.outer_iterations + 1, int(a.rate_trace.size()));

    const RunResult b = algorithm1(cfg);
    EXPECT_EQ(a.rate_trace, b.rate_trace);
    EXPECT_EQ(a.per_subcarrier_rate, b.per_subcarrier_rate);

    for (std::size_t i = 1; i < a.wmmse_trace.size(); ++i)
        EXPECT_GT(a.wmmse_trace[i].iteration, a.wmmse_trace[i - 1].iteration);
}

TEST(Algorithm1, FinalRateMatchesPrecoders)
{
    const SystemConfig cfg = small_config(5);
    const auto ch = channel::synthesize_channels(cfg);
    const auto front = analog::build_frontend(cfg, ch);
    const RunResult res = algorithm1(cfg, ch, front);
    const auto fa = analog::effective_analog_all(front, ch.frequencies);
    std::vector<CMatrix> fa_vec(fa.begin(), fa.end());
    EXPECT_NEAR(res.final_rate(), oracle::loop_sum_rate(ch, fa_vec, res.d, res.psi, cfg.sigma2),
                1e-9 * res.final_rate());
}

TEST(FullyDigital, ConfigShape)
{
    const SystemConfig fd = fully_digital_config(small_config());
    EXPECT_EQ(fd.analog_mode, AnalogMode::identity);
    EXPECT_EQ(fd.n_rf, fd.n_tx);
    EXPECT_NO_THROW(fd.validate());
}

TEST(FullyDigital, BoundDominates)
{
    for (std::uint64_t seed : {1u, 2u, 3u})
    {
        const SystemConfig cfg = small_config(seed);
        const auto ch = channel::synthesize_channels(cfg);
        const auto front = analog::build_frontend(cfg, ch);
        const RunResult hybrid = algorithm1(cfg, ch, front);
        const RunResult bound = fully_digital_run(cfg, ch, front, hybrid);
        EXPECT_GE(bound.final_rate(), hybrid.final_rate() * (1 - 1e-12)) << "seed " << seed;
    }
}

TEST(FullyDigital, IdentityFrontendClosesGap)
{
    SystemConfig cfg = fully_digital_config(small_config(4));
    const RunResult hybrid = algorithm1(cfg);
    const double bound = fully_digital_bound(cfg);
    EXPECT_GE(bound, hybrid.final_rate() * (1 - 1e-12));
    EXPECT_LT((bound - hybrid.final_rate()) / bound, 1e-3);
}

TEST(Algorithm1, RejectsMismatchedChannels)
{
    const SystemConfig cfg = small_config();
    SystemConfig other = cfg;
    other.n_tx = 16;
    other.k_t = 8;
    const auto ch = channel::synthesize_channels(other);
    const auto front = analog::build_frontend(cfg, channel::synthesize_channels(cfg));
    EXPECT_THROW(algorithm1(cfg, ch, front), ConfigError);
}

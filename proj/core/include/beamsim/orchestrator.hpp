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

#ifndef BEAMSIM_ORCHESTRATOR_HPP
#define BEAMSIM_ORCHESTRATOR_HPP

#include "beamsim/analog_frontend.hpp"
#include "beamsim/config.hpp"
#include "beamsim/digital_beamforming.hpp"
#include "beamsim/geometry_channel.hpp"
#include "beamsim/reflection_state.hpp"
#include "beamsim/ris_optimizer.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace beamsim
{
    // sum_{k,m} log2(1 + gamma_{m,k}) for the cascaded channels and w = F_A d
    double sum_rate(const channel::ChannelSet &ch, std::span<const CMatrix> fa, const digital::PrecoderSet &d,
                    const ReflectionState &psi, double sigma2);

    std::vector<double> per_subcarrier_rate(const channel::ChannelSet &ch, std::span<const CMatrix> fa,
                                            const digital::PrecoderSet &d, const ReflectionState &psi, double sigma2);

    // hhat_{m,k} = h_{m,k} F_A(m), stacked per m as K x N_RF
    std::vector<CMatrix> effective_channels(const channel::ChannelSet &ch, std::span<const CMatrix> fa,
                                            const ReflectionState &psi);

    // w_{m,k} = F_A(m) d_{m,k}, stacked per m as N_TX x K
    std::vector<CMatrix> equivalent_beams(std::span<const CMatrix> fa, const digital::PrecoderSet &d);

    struct RunResult
    {
        std::uint64_t seed = 0;
        std::vector<double> rate_trace; // entry 0: initialization, then one entry per outer iteration
        bool converged = false;
        int outer_iterations = 0;
        double power_used = 0.0;
        std::vector<double> per_subcarrier_rate;
        double wall_clock_s = 0.0;
        digital::PrecoderSet d;
        ReflectionState psi;
        std::vector<digital::WmmseTraceRow> wmmse_trace; // inner iterations, numbered across the run
        std::vector<ris::AdmmTraceRow> admm_trace;       // ADMM steps, numbered across the run
        int admm_failures = 0;

        double final_rate() const { return rate_trace.empty() ? 0.0 : rate_trace.back(); }
    };

    struct Warmstart
    {
        digital::PrecoderSet d;
        ReflectionState psi;
    };

    // Alternating optimization: F_A fixed up front, then {WMMSE precoders, LDR/MCQT/ADMM reflection}
    // until the relative sum-rate change drops below the outer tolerance.
    RunResult algorithm1(const SystemConfig &cfg, const channel::ChannelSet &ch,
                         const analog::AnalogFrontend &front, const std::optional<Warmstart> &start = std::nullopt);

    RunResult algorithm1(const SystemConfig &cfg);

    // Fully-digital reference: the same alternation with F_A = I, warm-started from the hybrid
    // solution (w = F_A d) so the bound never falls below the hybrid result.
    RunResult fully_digital_run(const SystemConfig &cfg, const channel::ChannelSet &ch,
                                const analog::AnalogFrontend &hybrid_front, const RunResult &hybrid);

    double fully_digital_bound(const SystemConfig &cfg);

    // Copy of cfg with the analog stage replaced by F_A = I (N_RF = N_TX)
    SystemConfig fully_digital_config(const SystemConfig &cfg);
}

#endif

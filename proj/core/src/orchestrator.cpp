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

#include "beamsim/orchestrator.hpp"
#include "beamsim/errors.hpp"

#include <chrono>

namespace beamsim
{
    namespace
    {
        RMatrix cascaded_sinr(const channel::ChannelSet &ch, std::span<const CMatrix> fa,
                              const digital::PrecoderSet &d, const ReflectionState &psi, double sigma2)
        {
            return digital::sinr(effective_channels(ch, fa, psi), d, sigma2);
        }
    }

    std::vector<CMatrix> effective_channels(const channel::ChannelSet &ch, std::span<const CMatrix> fa,
                                            const ReflectionState &psi)
    {
        if (int(fa.size()) != ch.num_subcarriers)
            throw std::invalid_argument("one analog matrix per subcarrier is required");
        std::vector<CMatrix> hhat(ch.num_subcarriers);
        for (int m = 0; m < ch.num_subcarriers; ++m)
        {
            CMatrix h(ch.num_users, ch.n_tx);
            for (int k = 0; k < ch.num_users; ++k)
                h.row(k) = channel::cascaded_channel(ch, psi, m, k);
            hhat[m] = h * fa[m];
        }
        return hhat;
    }

    std::vector<CMatrix> equivalent_beams(std::span<const CMatrix> fa, const digital::PrecoderSet &d)
    {
        if (fa.size() != d.d.size())
            throw std::invalid_argument("analog stage and precoder subcarrier counts differ");
        std::vector<CMatrix> w(fa.size());
        for (std::size_t m = 0; m < fa.size(); ++m)
            w[m] = fa[m] * d.d[m];
        return w;
    }

    double sum_rate(const channel::ChannelSet &ch, std::span<const CMatrix> fa, const digital::PrecoderSet &d,
                    const ReflectionState &psi, double sigma2)
    {
        const RMatrix g = cascaded_sinr(ch, fa, d, psi, sigma2);
        return (1.0 + g.array()).log2().sum();
    }

    std::vector<double> per_subcarrier_rate(const channel::ChannelSet &ch, std::span<const CMatrix> fa,
                                            const digital::PrecoderSet &d, const ReflectionState &psi, double sigma2)
    {
        const RMatrix g = cascaded_sinr(ch, fa, d, psi, sigma2);
        std::vector<double> rates(g.rows());
        for (Eigen::Index m = 0; m < g.rows(); ++m)
            rates[m] = (1.0 + g.row(m).array()).log2().sum();
        return rates;
    }

    RunResult algorithm1(const SystemConfig &cfg, const channel::ChannelSet &ch,
                         const analog::AnalogFrontend &front, const std::optional<Warmstart> &start)
    {
        const auto t0 = std::chrono::steady_clock::now();
        if (front.n_tx != ch.n_tx)
            throw ConfigError("analog stage and channels disagree on N_TX");
        const std::vector<CMatrix> fa = analog::effective_analog_all(front, ch.frequencies);

        RunResult res;
        res.seed = ch.seed;
        res.psi = start ? start->psi : ris::beam_split_aware_init(ch);
        if (res.psi.size() != ch.num_ris * ch.ris_elements())
            throw ConfigError("warm-start reflection vector has the wrong length");
        res.d = start ? start->d : digital::matched_filter_init(effective_channels(ch, fa, res.psi), fa, cfg.p_max);

        const SolverOptions &so = cfg.solver;
        const digital::WmmseOptions wopt{so.wmmse_tol, so.wmmse_max_iter};
        ris::RisLoopOptions ropt;
        ropt.tol = so.ris_tol;
        ropt.max_sweeps = so.ris_max_sweeps;
        ropt.admm.tol = so.admm_tol;
        ropt.admm.max_iter = so.admm_max_iter;
        ropt.admm.unit_modulus = so.unit_modulus;

        double rate = sum_rate(ch, fa, res.d, res.psi, cfg.sigma2);
        res.rate_trace.push_back(rate);
        int wmmse_offset = 0;
        int admm_offset = 0;

        for (int it = 1; it <= so.outer_max_iter; ++it)
        {
            const auto hhat = effective_channels(ch, fa, res.psi);
            digital::WmmseResult wr = digital::wmmse_loop(hhat, fa, res.d, cfg.sigma2, cfg.p_max, wopt);
            res.d = std::move(wr.d);
            for (std::size_t i = 1; i < wr.trace.size(); ++i)
            {
                auto row = wr.trace[i];
                row.iteration += wmmse_offset;
                res.wmmse_trace.push_back(row);
            }
            wmmse_offset += wr.iterations;

            const auto w = equivalent_beams(fa, res.d);
            ris::RisLoopResult rr = ris::ris_loop(ch, w, res.psi, cfg.sigma2, ropt);
            res.psi = std::move(rr.psi);
            res.admm_failures += rr.admm_failures;
            for (auto row : rr.admm_trace)
            {
                row.iteration += admm_offset;
                res.admm_trace.push_back(row);
            }
            if (!rr.admm_trace.empty())
                admm_offset = res.admm_trace.back().iteration;

            const double next = sum_rate(ch, fa, res.d, res.psi, cfg.sigma2);
            if (!std::isfinite(next))
                throw SolverError("algorithm1: non-finite sum rate at outer iteration " + std::to_string(it));
            res.rate_trace.push_back(next);
            res.outer_iterations = it;
            const bool small = std::abs(next - rate) <= so.outer_tol * std::max(std::abs(rate), 1e-12);
            rate = next;
            if (small)
            {
                res.converged = true;
                break;
            }
        }

        res.power_used = digital::transmit_power(res.d, fa);
        res.per_subcarrier_rate = per_subcarrier_rate(ch, fa, res.d, res.psi, cfg.sigma2);
        res.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return res;
    }

    RunResult algorithm1(const SystemConfig &cfg)
    {
        const channel::ChannelSet ch = channel::synthesize_channels(cfg);
        return algorithm1(cfg, ch, analog::build_frontend(cfg, ch));
    }

    SystemConfig fully_digital_config(const SystemConfig &cfg)
    {
        SystemConfig fd = cfg;
        fd.analog_mode = AnalogMode::identity;
        fd.n_rf = cfg.n_tx;
        return fd;
    }

    RunResult fully_digital_run(const SystemConfig &cfg, const channel::ChannelSet &ch,
                                const analog::AnalogFrontend &hybrid_front, const RunResult &hybrid)
    {
        const SystemConfig fd = fully_digital_config(cfg);
        const analog::AnalogFrontend front = analog::build_frontend(fd, ch);
        const std::vector<CMatrix> fa = analog::effective_analog_all(hybrid_front, ch.frequencies);
        Warmstart start{{equivalent_beams(fa, hybrid.d)}, hybrid.psi};
        return algorithm1(fd, ch, front, start);
    }

    double fully_digital_bound(const SystemConfig &cfg)
    {
        const channel::ChannelSet ch = channel::synthesize_channels(cfg);
        const analog::AnalogFrontend front = analog::build_frontend(cfg, ch);
        const RunResult hybrid = algorithm1(cfg, ch, front);
        return fully_digital_run(cfg, ch, front, hybrid).final_rate();
    }
}

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

#ifndef BEAMSIM_DIGITAL_BEAMFORMING_HPP
#define BEAMSIM_DIGITAL_BEAMFORMING_HPP

#include "beamsim/types.hpp"

#include <span>
#include <vector>

// WMMSE digital precoding for a fixed analog stage and reflection state.
//
// Effective channels are passed per subcarrier as K x N_RF matrices whose row k is
// hhat_{m,k} = h_{m,k} F_A(m). The receiver applies conj(u) to its sample, so
//   eps = |u|^2 (sum_j |hhat_k d_j|^2 + sigma2) - 2 Re{conj(u) hhat_k d_k} + 1
// and the MMSE equalizer is u = hhat_k d_k / (sum_j |hhat_k d_j|^2 + sigma2).
namespace beamsim::digital
{
    struct PrecoderSet
    {
        std::vector<CMatrix> d; // per subcarrier, N_RF x K, column k is d_{m,k}

        int num_subcarriers() const { return int(d.size()); }
        int num_users() const { return d.empty() ? 0 : int(d.front().cols()); }
    };

    struct WmmseState
    {
        Eigen::MatrixXcd u; // M x K
        RMatrix tau;        // M x K
        std::vector<double> objective_trace; // weighted-MSE objective after every precoder update
    };

    struct WmmseTraceRow
    {
        int iteration = 0;
        double sum_rate_bps_hz = 0.0;
        double power_used = 0.0;
        double mu = 0.0;
    };

    Eigen::MatrixXcd equalizer_update(std::span<const CMatrix> hhat, const PrecoderSet &d, double sigma2);

    RMatrix mse_eval(std::span<const CMatrix> hhat, const PrecoderSet &d, const Eigen::MatrixXcd &u, double sigma2);

    // tau = 1 / eps; throws std::invalid_argument on eps <= 0
    RMatrix weight_update(const RMatrix &eps);

    // -P Q / ln 2 + log2 P + 1 / ln 2
    double rate_surrogate(double p, double q);

    // SINR gamma_{m,k} for the effective channels
    RMatrix sinr(std::span<const CMatrix> hhat, const PrecoderSet &d, double sigma2);
    double sum_rate(std::span<const CMatrix> hhat, const PrecoderSet &d, double sigma2);

    // sum_{m,k} ||F_A(m) d_{m,k}||^2
    double transmit_power(const PrecoderSet &d, std::span<const CMatrix> fa);

    // sum tau eps / ln 2 - log2 tau - 1 / ln 2
    double weighted_mse_objective(std::span<const CMatrix> hhat, const PrecoderSet &d, const Eigen::MatrixXcd &u,
                        const RMatrix &tau, double sigma2);

    struct PrecoderSolution
    {
        PrecoderSet d;
        double mu = 0.0;
        double power = 0.0;
        double kkt_residual = 0.0; // max relative stationarity residual
    };

    // Exact weighted-MSE minimizer under the power budget: d_{m,k} = (A_m + mu F^H F)^{-1} tau u hhat^H with a single shared dual mu >= 0
    PrecoderSolution precoder_update(std::span<const CMatrix> hhat, const Eigen::MatrixXcd &u, const RMatrix &tau,
                                     std::span<const CMatrix> fa, double p_max);

    // Matched filter hhat^H per user, equal power split P_max / (M K)
    PrecoderSet matched_filter_init(std::span<const CMatrix> hhat, std::span<const CMatrix> fa, double p_max);

    struct WmmseOptions
    {
        double tol = 1e-4;
        int max_iter = 100;
    };

    struct WmmseResult
    {
        PrecoderSet d;
        WmmseState state;
        std::vector<WmmseTraceRow> trace; // row 0 is the initialization
        bool converged = false;
        int iterations = 0;
    };

    WmmseResult wmmse_loop(std::span<const CMatrix> hhat, std::span<const CMatrix> fa, const PrecoderSet &init,
                           double sigma2, double p_max, const WmmseOptions &opt = {});
}

#endif

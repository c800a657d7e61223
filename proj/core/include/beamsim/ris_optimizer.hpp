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

#ifndef BEAMSIM_RIS_OPTIMIZER_HPP
#define BEAMSIM_RIS_OPTIMIZER_HPP

#include "beamsim/config.hpp"
#include "beamsim/geometry_channel.hpp"
#include "beamsim/reflection_state.hpp"
#include "beamsim/types.hpp"

#include <span>
#include <vector>

// Reflection optimization for fixed equivalent beams w_{m,k} = F_A(m) d_{m,k}.
// Beams are passed per subcarrier as N_TX x K matrices.
//
// The sum rate is lifted with an auxiliary rho (LDR) and the ratio terms with an auxiliary chi
// (quadratic transform); for fixed (rho, chi) the reflection vector solves
//   min psi^H Lambda psi - 2 Re{psi^H upsilon}   s.t. |psi_i| <= 1
// by ADMM.
namespace beamsim::ris
{
    struct QuadraticForm
    {
        CMatrix lambda;  // Hermitian PSD
        CVector upsilon;
        double varsigma = 0.0;

        // -psi^H Lambda psi + 2 Re{psi^H upsilon} - varsigma
        double transformed_objective(const CVector &psi) const;
        // psi^H Lambda psi - 2 Re{psi^H upsilon}
        double qcqp_objective(const CVector &psi) const;
    };

    struct AuxiliaryVars
    {
        RMatrix rho;          // M x K
        Eigen::MatrixXcd chi; // M x K
    };

    // Q_{k,m,j} = h_{m,k}(psi) w_{m,j}, returned per m as a K x K matrix (row k, column j)
    std::vector<Eigen::MatrixXcd> beam_products(const channel::ChannelSet &ch, const ReflectionState &psi,
                                                std::span<const CMatrix> w);

    RMatrix rho_update(const channel::ChannelSet &ch, const ReflectionState &psi, std::span<const CMatrix> w,
                       double sigma2);

    Eigen::MatrixXcd chi_update(const channel::ChannelSet &ch, const ReflectionState &psi,
                                std::span<const CMatrix> w, const RMatrix &rho, double sigma2);

    QuadraticForm assemble_quadratic(const channel::ChannelSet &ch, std::span<const CMatrix> w, const RMatrix &rho,
                                     const Eigen::MatrixXcd &chi, double sigma2);

    // Direct evaluation of the transformed objective sum_{m,k} Omega_2
    double transformed_objective_direct(const channel::ChannelSet &ch, const ReflectionState &psi,
                                        std::span<const CMatrix> w, const RMatrix &rho,
                                        const Eigen::MatrixXcd &chi, double sigma2);

    // f(Phi, W, rho) = sum ln(1+rho) - sum rho + sum (1+rho) |Q_kk|^2 / (sum_j |Q_kj|^2 + sigma2)
    double ldr_objective(const channel::ChannelSet &ch, const ReflectionState &psi, std::span<const CMatrix> w,
                         const RMatrix &rho, double sigma2);

    struct AdmmParams
    {
        double tol = 1e-6;
        int max_iter = 500;
        double penalty = 0.0; // 0 selects trace(Lambda) / dim
        bool unit_modulus = false;
    };

    struct AdmmTraceRow
    {
        int iteration = 0;
        double objective = 0.0;
        double primal_residual = 0.0;
        double dual_residual = 0.0;
        double rho_admm = 0.0;
    };

    struct AdmmResult
    {
        ReflectionState psi; // the projected copy, always feasible
        bool converged = false;
        int iterations = 0;
        std::vector<AdmmTraceRow> trace;
    };

    AdmmResult admm_solve(const QuadraticForm &q, const ReflectionState &psi0, const AdmmParams &params = {});

    struct RisLoopOptions
    {
        double tol = 1e-4;
        int max_sweeps = 50;
        AdmmParams admm;
    };

    struct RisLoopResult
    {
        ReflectionState psi;
        std::vector<double> trace; // LDR objective at rho_opt (= sum ln(1+gamma)), entry 0 is the input
        bool converged = false;
        int sweeps = 0;
        int admm_failures = 0; // ADMM calls that hit the iteration cap
        std::vector<AdmmTraceRow> admm_trace;
    };

    RisLoopResult ris_loop(const channel::ChannelSet &ch, std::span<const CMatrix> w, const ReflectionState &psi0,
                           double sigma2, const RisLoopOptions &opt = {});

    // Unit-amplitude start: per RIS, phases that co-phase its LoS BS path with the LoS direction
    // towards the user centroid at f_c
    ReflectionState beam_split_aware_init(const channel::ChannelSet &ch);
}

#endif

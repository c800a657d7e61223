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

#ifndef BEAMSIM_ANALOG_FRONTEND_HPP
#define BEAMSIM_ANALOG_FRONTEND_HPP

#include "beamsim/config.hpp"
#include "beamsim/geometry_channel.hpp"
#include "beamsim/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace beamsim::analog
{
    // FC-TD-PS analog beamformer. RF chain n drives K_T delay lines, each feeding P = N_TX / K_T
    // phase shifters. F holds the PS network as N_RF blocks of K_T columns.
    struct AnalogFrontend
    {
        AnalogMode mode = AnalogMode::true_time_delay;
        int n_tx = 0;
        int n_rf = 0;
        int k_t = 0;
        int subarray = 0; // P
        double f_c = 0.0;
        std::vector<double> eta_c;          // per-chain spatial direction at f_c
        std::vector<double> z;              // per-chain delay step in carrier periods
        std::vector<std::vector<double>> t; // per-chain delays [s], length K_T
        CMatrix F;                          // N_TX x (K_T * N_RF)
    };

    // N_TX x K_T block diagonal: column k holds entries kP..kP+P-1 of a(eta_c)
    CMatrix ps_block(double eta_c, int n_tx, int k_t);

    // t = [0, z T_c, ..., (K_T-1) z T_c] with z = -P eta_c / 2 and T_c = 1/f_c
    std::vector<double> td_vector(double eta_c, int subarray, int k_t, double f_c, bool quantize = false);

    // Carrier-referenced TD response exp(-j 2 pi (f - f_c) t_k). The carrier term exp(j 2 pi f_c t_k)
    // of each true delay is a per-branch constant absorbed by the phase shifters.
    CVector td_response(std::span<const double> t, double f, double f_c);

    AnalogFrontend build_frontend(const SystemConfig &cfg, std::span<const double> eta_c);

    // Chain n aims at RIS n along its LoS BS-RIS path
    AnalogFrontend build_frontend(const SystemConfig &cfg, const channel::ChannelSet &ch);

    // F_A at frequency f (N_TX x N_RF); column n is the per-chain beam F_n exp(-j 2 pi f t_n)
    CMatrix effective_analog(const AnalogFrontend &front, double f);
    std::vector<CMatrix> effective_analog_all(const AnalogFrontend &front, std::span<const double> frequencies);

    std::string frontend_to_json(const AnalogFrontend &front, int indent = 2);
}

#endif

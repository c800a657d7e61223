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

#ifndef BEAMSIM_CONFIG_HPP
#define BEAMSIM_CONFIG_HPP

#include "beamsim/types.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace beamsim
{
    // Magnitude law for the path gains alpha. Phases are always uniform in [0, 2pi).
    enum class GainModel
    {
        unit,       // |alpha| = 1
        free_space, // |alpha| = c / (4 pi f_c d)
    };

    // Analog stage at the BS
    enum class AnalogMode
    {
        true_time_delay,  // PS blocks + TD network (FC-TD-PS-HB)
        phase_shift_only, // PS blocks only, all delays zero
        identity,         // F_A = I, N_RF = N_TX (fully digital)
    };

    // Node placement. Positions in [m]. The RIS panels lie in the y-z plane:
    // element (m_x, m_y) sits at ris_position + d * (0, m_x, m_y).
    struct Geometry
    {
        Eigen::Vector3d bs_position{0.0, 90.0, 20.0};
        Eigen::Vector3d bs_array_axis{0.0, 1.0, 0.0}; // ULA element axis, normalized on use
        std::vector<Eigen::Vector3d> ris_positions{{0.0, 80.0, 6.0}, {0.0, 80.0, 8.0}, {0.0, 100.0, 6.0}, {0.0, 100.0, 8.0}};
        Eigen::Vector3d user_center{0.0, 85.0, 0.0};
        double user_radius = 1.0;                    // users drawn uniformly in a horizontal disc
        std::vector<Eigen::Vector3d> user_positions; // explicit placement, overrides the disc when non-empty
    };

    struct SolverOptions
    {
        double wmmse_tol = 1e-4; // relative sum-rate change
        int wmmse_max_iter = 100;
        double ris_tol = 1e-4; // relative LDR objective change
        int ris_max_sweeps = 50;
        double admm_tol = 1e-6; // residual threshold, scaled by sqrt(dim)
        int admm_max_iter = 500;
        double outer_tol = 1e-4; // relative sum-rate change of the outer alternation
        int outer_max_iter = 50;
        bool unit_modulus = false; // project onto |psi| = 1 instead of |psi| <= 1
    };

    struct SystemConfig
    {
        double f_c = 100e9;         // carrier [Hz]
        double bandwidth = 10e9;    // [Hz]
        int num_subcarriers = 8;    // M
        int n_tx = 16;              // BS antennas
        int n_rf = 4;               // RF chains
        int k_t = 16;               // TDs per RF chain
        int num_ris = 4;            // R
        int ris_rows = 8;           // M_x
        int ris_cols = 8;           // M_y
        int num_users = 4;          // K
        double p_max = 1e-3;        // [W]
        double sigma2 = dbm_to_watts(-82.0); // noise power per user and subcarrier [W]
        int l1 = 1;                 // BS-RIS paths
        int l2 = 1;                 // RIS-user paths
        std::uint64_t seed = 1;

        GainModel gain_model = GainModel::unit;
        AnalogMode analog_mode = AnalogMode::true_time_delay;
        bool quantize_td = false; // round z_n to whole carrier periods

        SolverOptions solver;
        Geometry geometry;

        int ris_elements() const { return ris_rows * ris_cols; }
        int total_ris_elements() const { return num_ris * ris_elements(); }
        int subarray_size() const { return k_t > 0 ? n_tx / k_t : 0; }

        // Throws ConfigError on any violated invariant
        void validate() const;
    };

    // Parse a JSON document (snake_case keys, dBm powers). Missing keys keep the defaults above,
    // unknown keys and type mismatches raise ConfigError. The result is validated.
    SystemConfig parse_config(std::string_view json_text);
    SystemConfig load_config(const std::filesystem::path &path);

    // Inverse of parse_config
    std::string config_to_json(const SystemConfig &cfg, int indent = 2);

    std::string_view to_string(GainModel m);
    std::string_view to_string(AnalogMode m);
}

#endif

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

#ifndef BEAMSIM_GEOMETRY_CHANNEL_HPP
#define BEAMSIM_GEOMETRY_CHANNEL_HPP

#include "beamsim/config.hpp"
#include "beamsim/reflection_state.hpp"
#include "beamsim/types.hpp"

#include <cstdint>
#include <vector>

namespace beamsim::channel
{
    // One propagation path. The RIS angles describe the direction seen from the RIS
    // (AoA for BS-RIS paths, AoD for RIS-user paths); bs_angle is only meaningful for BS-RIS paths.
    struct PathParams
    {
        cd gain{1.0, 0.0};        // alpha
        double delay = 0.0;       // tau [s]
        double bs_angle = 0.0;    // theta in [-pi/2, pi/2]
        double ris_azimuth = 0.0; // u in [-pi/2, pi/2]
        double ris_elevation = kPi / 2.0; // v in [0, pi]
    };

    struct LinkPaths
    {
        std::vector<std::vector<PathParams>> bs_ris;                // [r][l1]
        std::vector<std::vector<std::vector<PathParams>>> ris_user; // [r][k][l2]

        int num_ris() const { return int(bs_ris.size()); }
        int num_users() const { return ris_user.empty() ? 0 : int(ris_user.front().size()); }
    };

    // Per-subcarrier BS-RIS matrices G_{r,m} (N_RIS x N_TX) and RIS-user rows f_{r,m,k} (1 x N_RIS).
    // Immutable after synthesis.
    struct ChannelSet
    {
        int num_ris = 0;
        int num_subcarriers = 0;
        int num_users = 0;
        int n_tx = 0;
        int ris_rows = 0;
        int ris_cols = 0;
        std::uint64_t seed = 0;
        double f_c = 0.0;
        std::vector<double> frequencies;
        std::vector<CMatrix> G;    // index r * M + m
        std::vector<CRowVector> f; // index (r * M + m) * K + k
        LinkPaths paths;

        int ris_elements() const { return ris_rows * ris_cols; }
        const CMatrix &bs_ris(int r, int m) const { return G[std::size_t(r) * num_subcarriers + m]; }
        const CRowVector &ris_user(int r, int m, int k) const
        {
            return f[(std::size_t(r) * num_subcarriers + m) * num_users + k];
        }
    };

    // f_m = f_c + (B/M)(m - 1 - (M-1)/2), m = 1..M (returned zero-based)
    std::vector<double> subcarrier_frequencies(double f_c, double bandwidth, int num_subcarriers);

    // ULA response with half-wavelength spacing at f_c: entry n = exp(j pi n (f/f_c) sin(theta)) / sqrt(N)
    CVector bs_steering_vector(double theta, double f, double f_c, int n_tx);

    // Same as above, parameterized by the spatial direction eta = sin(theta) at f_c
    CVector bs_steering_vector_eta(double eta, double f, double f_c, int n_tx);

    // UPA response in the y-z plane, zero-based offsets, row-major over (m_x, m_y):
    // entry phase pi (f/f_c) (m_x sin(u) sin(v) + m_y cos(v))
    CVector ris_steering_vector(double u, double v, double f, double f_c, int rows, int cols);

    // Free-space amplitude c / (4 pi f_c d)
    double free_space_gain(double distance, double f_c);

    // (u, v) of a unit direction vector expressed in the RIS frame
    struct RisAngles
    {
        double azimuth;
        double elevation;
    };
    RisAngles ris_angles_of(const Eigen::Vector3d &direction);

    // User positions according to the geometry (explicit list or seeded disc draw)
    std::vector<Eigen::Vector3d> place_users(const SystemConfig &cfg);

    // LoS angles/delays from the geometry plus seeded gain phases; extra NLoS paths (L > 1)
    // draw their angles uniformly from the admissible ranges.
    LinkPaths derive_paths(const SystemConfig &cfg);

    ChannelSet synthesize_channels(const SystemConfig &cfg, const LinkPaths &paths);
    ChannelSet synthesize_channels(const SystemConfig &cfg);

    // h_{m,k} = sum_r f_{r,m,k} Phi_r G_{r,m}  (1 x N_TX)
    CRowVector cascaded_channel(const ChannelSet &ch, const ReflectionState &phi, int m, int k);

    // Same quantity via the stacked block form f_{m,k} Phi G_m
    CRowVector cascaded_channel_block(const ChannelSet &ch, const ReflectionState &phi, int m, int k);

    // Stacked G_m = [G_{1,m}; ...; G_{R,m}] and f_{m,k} = [f_{1,m,k}, ..., f_{R,m,k}]
    CMatrix stacked_bs_ris(const ChannelSet &ch, int m);
    CRowVector stacked_ris_user(const ChannelSet &ch, int m, int k);
}

#endif

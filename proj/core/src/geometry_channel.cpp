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

#include "beamsim/geometry_channel.hpp"
#include "beamsim/errors.hpp"

#include <algorithm>
#include <random>

namespace beamsim::channel
{
    namespace
    {
        constexpr double kNlosPowerDb = -10.0;
        constexpr double kNlosMaxExcessDelay = 20e-9; // [s]

        double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

        cd draw_gain(std::mt19937_64 &rng, double magnitude)
        {
            std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
            return magnitude * unit_phasor(phase(rng));
        }

        double link_magnitude(const SystemConfig &cfg, double distance)
        {
            return cfg.gain_model == GainModel::free_space ? free_space_gain(distance, cfg.f_c) : 1.0;
        }

        PathParams nlos_path(std::mt19937_64 &rng, const PathParams &los)
        {
            std::uniform_real_distribution<double> half(-kPi / 2.0, kPi / 2.0);
            std::uniform_real_distribution<double> elev(0.0, kPi);
            std::uniform_real_distribution<double> excess(0.0, kNlosMaxExcessDelay);
            PathParams p;
            p.bs_angle = half(rng);
            p.ris_azimuth = half(rng);
            p.ris_elevation = elev(rng);
            p.delay = los.delay + excess(rng);
            p.gain = draw_gain(rng, std::abs(los.gain) * std::pow(10.0, kNlosPowerDb / 20.0));
            return p;
        }
    }

    std::vector<double> subcarrier_frequencies(double f_c, double bandwidth, int num_subcarriers)
    {
        std::vector<double> f(std::max(num_subcarriers, 0));
        const double spacing = bandwidth / num_subcarriers;
        const double center = (num_subcarriers - 1) / 2.0;
        for (int m = 0; m < num_subcarriers; ++m)
            f[m] = f_c + spacing * (m - center);
        return f;
    }

    CVector bs_steering_vector(double theta, double f, double f_c, int n_tx)
    {
        return bs_steering_vector_eta(std::sin(theta), f, f_c, n_tx);
    }

    CVector bs_steering_vector_eta(double eta, double f, double f_c, int n_tx)
    {
        CVector a(n_tx);
        const double norm = 1.0 / std::sqrt(double(n_tx));
        const double step = kPi * (f / f_c) * eta;
        for (int n = 0; n < n_tx; ++n)
            a[n] = norm * unit_phasor(step * n);
        return a;
    }

    CVector ris_steering_vector(double u, double v, double f, double f_c, int rows, int cols)
    {
        CVector b(rows * cols);
        const double norm = 1.0 / std::sqrt(double(rows * cols));
        const double scale = kPi * (f / f_c);
        const double su = std::sin(u) * std::sin(v);
        const double sv = std::cos(v);
        for (int mx = 0; mx < rows; ++mx)
            for (int my = 0; my < cols; ++my)
                b[mx * cols + my] = norm * unit_phasor(scale * (mx * su + my * sv));
        return b;
    }

    double free_space_gain(double distance, double f_c)
    {
        return kSpeedOfLight / (4.0 * kPi * f_c * distance);
    }

    RisAngles ris_angles_of(const Eigen::Vector3d &direction)
    {
        const Eigen::Vector3d k = direction.normalized();
        const double v = std::acos(clamp_unit(k.z()));
        const double sv = std::sin(v);
        const double u = sv > 1e-12 ? std::asin(clamp_unit(k.y() / sv)) : 0.0;
        return {u, v};
    }

    std::vector<Eigen::Vector3d> place_users(const SystemConfig &cfg)
    {
        const Geometry &g = cfg.geometry;
        if (!g.user_positions.empty())
            return g.user_positions;

        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<Eigen::Vector3d> users;
        for (int k = 0; k < cfg.num_users; ++k)
        {
            const double radius = g.user_radius * std::sqrt(unit(rng));
            const double angle = 2.0 * kPi * unit(rng);
            users.push_back(g.user_center + Eigen::Vector3d(radius * std::cos(angle), radius * std::sin(angle), 0.0));
        }
        return users;
    }

    LinkPaths derive_paths(const SystemConfig &cfg)
    {
        cfg.validate();
        const Geometry &g = cfg.geometry;
        const Eigen::Vector3d axis = g.bs_array_axis.normalized();
        const auto users = place_users(cfg);

        // separate stream from the user draw so explicit placements keep the same gains
        std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

        LinkPaths paths;
        paths.bs_ris.resize(cfg.num_ris);
        paths.ris_user.resize(cfg.num_ris);
        for (int r = 0; r < cfg.num_ris; ++r)
        {
            const Eigen::Vector3d &ris = g.ris_positions[r];
            const Eigen::Vector3d to_ris = ris - g.bs_position;
            const double d1 = to_ris.norm();
            if (d1 <= 0.0)
                throw ConfigError("BS and RIS " + std::to_string(r) + " coincide");

            PathParams los;
            los.bs_angle = std::asin(clamp_unit(to_ris.dot(axis) / d1));
            const RisAngles arrival = ris_angles_of(-to_ris);
            los.ris_azimuth = arrival.azimuth;
            los.ris_elevation = arrival.elevation;
            los.delay = d1 / kSpeedOfLight;
            los.gain = draw_gain(rng, link_magnitude(cfg, d1));
            paths.bs_ris[r].push_back(los);
            for (int l = 1; l < cfg.l1; ++l)
                paths.bs_ris[r].push_back(nlos_path(rng, los));

            paths.ris_user[r].resize(cfg.num_users);
            for (int k = 0; k < cfg.num_users; ++k)
            {
                const Eigen::Vector3d to_user = users[k] - ris;
                const double d2 = to_user.norm();
                if (d2 <= 0.0)
                    throw ConfigError("user " + std::to_string(k) + " coincides with RIS " + std::to_string(r));
                PathParams p;
                const RisAngles departure = ris_angles_of(to_user);
                p.ris_azimuth = departure.azimuth;
                p.ris_elevation = departure.elevation;
                p.delay = d2 / kSpeedOfLight;
                p.gain = draw_gain(rng, link_magnitude(cfg, d2));
                paths.ris_user[r][k].push_back(p);
                for (int l = 1; l < cfg.l2; ++l)
                    paths.ris_user[r][k].push_back(nlos_path(rng, p));
            }
        }
        return paths;
    }

    ChannelSet synthesize_channels(const SystemConfig &cfg, const LinkPaths &paths)
    {
        cfg.validate();
        if (paths.num_ris() != cfg.num_ris || paths.num_users() != cfg.num_users)
            throw ConfigError("path table does not match the configured R and K");

        ChannelSet ch;
        ch.num_ris = cfg.num_ris;
        ch.num_subcarriers = cfg.num_subcarriers;
        ch.num_users = cfg.num_users;
        ch.n_tx = cfg.n_tx;
        ch.ris_rows = cfg.ris_rows;
        ch.ris_cols = cfg.ris_cols;
        ch.seed = cfg.seed;
        ch.f_c = cfg.f_c;
        ch.frequencies = subcarrier_frequencies(cfg.f_c, cfg.bandwidth, cfg.num_subcarriers);
        ch.paths = paths;

        const int M = cfg.num_subcarriers;
        const int K = cfg.num_users;
        const int n_ris = cfg.ris_elements();
        ch.G.assign(std::size_t(cfg.num_ris) * M, CMatrix::Zero(n_ris, cfg.n_tx));
        ch.f.assign(std::size_t(cfg.num_ris) * M * K, CRowVector::Zero(n_ris));

        for (int r = 0; r < cfg.num_ris; ++r)
            for (int m = 0; m < M; ++m)
            {
                const double fm = ch.frequencies[m];
                CMatrix &G = ch.G[std::size_t(r) * M + m];
                for (const PathParams &p : paths.bs_ris[r])
                {
                    const cd coeff = p.gain * unit_phasor(-2.0 * kPi * p.delay * fm);
                    const CVector b = ris_steering_vector(p.ris_azimuth, p.ris_elevation, fm, cfg.f_c, cfg.ris_rows,
                                                          cfg.ris_cols);
                    const CVector a = bs_steering_vector(p.bs_angle, fm, cfg.f_c, cfg.n_tx);
                    G.noalias() += coeff * b * a.adjoint();
                }
                for (int k = 0; k < K; ++k)
                {
                    CRowVector &row = ch.f[(std::size_t(r) * M + m) * K + k];
                    for (const PathParams &p : paths.ris_user[r][k])
                    {
                        const cd coeff = p.gain * unit_phasor(-2.0 * kPi * p.delay * fm);
                        row += coeff * ris_steering_vector(p.ris_azimuth, p.ris_elevation, fm, cfg.f_c,
                                                           cfg.ris_rows, cfg.ris_cols)
                                           .transpose();
                    }
                }
            }
        return ch;
    }

    ChannelSet synthesize_channels(const SystemConfig &cfg)
    {
        return synthesize_channels(cfg, derive_paths(cfg));
    }

    CRowVector cascaded_channel(const ChannelSet &ch, const ReflectionState &phi, int m, int k)
    {
        CRowVector h = CRowVector::Zero(ch.n_tx);
        for (int r = 0; r < ch.num_ris; ++r)
        {
            const CRowVector weighted = ch.ris_user(r, m, k).cwiseProduct(phi.block(r).transpose());
            h.noalias() += weighted * ch.bs_ris(r, m);
        }
        return h;
    }

    CRowVector cascaded_channel_block(const ChannelSet &ch, const ReflectionState &phi, int m, int k)
    {
        const CRowVector fk = stacked_ris_user(ch, m, k);
        return fk.cwiseProduct(phi.psi.transpose()) * stacked_bs_ris(ch, m);
    }

    CMatrix stacked_bs_ris(const ChannelSet &ch, int m)
    {
        const int n = ch.ris_elements();
        CMatrix G(std::size_t(n) * ch.num_ris, ch.n_tx);
        for (int r = 0; r < ch.num_ris; ++r)
            G.middleRows(Eigen::Index(r) * n, n) = ch.bs_ris(r, m);
        return G;
    }

    CRowVector stacked_ris_user(const ChannelSet &ch, int m, int k)
    {
        const int n = ch.ris_elements();
        CRowVector f(std::size_t(n) * ch.num_ris);
        for (int r = 0; r < ch.num_ris; ++r)
            f.segment(Eigen::Index(r) * n, n) = ch.ris_user(r, m, k);
        return f;
    }
}

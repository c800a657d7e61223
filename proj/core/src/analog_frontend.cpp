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
#include "beamsim/errors.hpp"

#include <json.hpp>

namespace beamsim::analog
{
    namespace
    {
        void check_direction(double eta)
        {
            if (!(std::abs(eta) <= 1.0))
                throw ConfigError("spatial direction |eta_c| must not exceed 1");
        }
    }

    CMatrix ps_block(double eta_c, int n_tx, int k_t)
    {
        check_direction(eta_c);
        if (n_tx < 1 || k_t < 1 || n_tx % k_t != 0)
            throw ConfigError("N_TX must be a positive multiple of K_T");
        const int p = n_tx / k_t;
        const CVector a = channel::bs_steering_vector_eta(eta_c, 1.0, 1.0, n_tx);
        CMatrix F = CMatrix::Zero(n_tx, k_t);
        for (int k = 0; k < k_t; ++k)
            F.block(Eigen::Index(k) * p, k, p, 1) = a.segment(Eigen::Index(k) * p, p);
        return F;
    }

    std::vector<double> td_vector(double eta_c, int subarray, int k_t, double f_c, bool quantize)
    {
        check_direction(eta_c);
        double z = -subarray * eta_c / 2.0;
        if (quantize)
            z = std::round(z);
        std::vector<double> t(std::max(k_t, 0));
        for (int k = 0; k < k_t; ++k)
            t[k] = k * z / f_c;
        return t;
    }

    CVector td_response(std::span<const double> t, double f, double f_c)
    {
        CVector r(Eigen::Index(t.size()));
        for (std::size_t k = 0; k < t.size(); ++k)
            r[Eigen::Index(k)] = unit_phasor(-2.0 * kPi * (f - f_c) * t[k]);
        return r;
    }

    AnalogFrontend build_frontend(const SystemConfig &cfg, std::span<const double> eta_c)
    {
        cfg.validate();
        AnalogFrontend front;
        front.mode = cfg.analog_mode;
        front.n_tx = cfg.n_tx;
        front.n_rf = cfg.n_rf;
        front.f_c = cfg.f_c;

        if (cfg.analog_mode == AnalogMode::identity)
        {
            front.k_t = 1;
            front.subarray = 1;
            front.eta_c.assign(cfg.n_rf, 0.0);
            front.z.assign(cfg.n_rf, 0.0);
            front.t.assign(cfg.n_rf, std::vector<double>{0.0});
            front.F = CMatrix::Identity(cfg.n_tx, cfg.n_tx);
            return front;
        }

        if (int(eta_c.size()) != cfg.n_rf)
            throw ConfigError("one spatial direction per RF chain is required");
        front.k_t = cfg.k_t;
        front.subarray = cfg.subarray_size();
        front.eta_c.assign(eta_c.begin(), eta_c.end());
        front.F = CMatrix::Zero(cfg.n_tx, Eigen::Index(cfg.k_t) * cfg.n_rf);
        for (int n = 0; n < cfg.n_rf; ++n)
        {
            front.F.middleCols(Eigen::Index(n) * cfg.k_t, cfg.k_t) = ps_block(eta_c[n], cfg.n_tx, cfg.k_t);
            if (cfg.analog_mode == AnalogMode::true_time_delay)
            {
                double z = -front.subarray * eta_c[n] / 2.0;
                if (cfg.quantize_td)
                    z = std::round(z);
                front.z.push_back(z);
                front.t.push_back(td_vector(eta_c[n], front.subarray, cfg.k_t, cfg.f_c, cfg.quantize_td));
            }
            else
            {
                front.z.push_back(0.0);
                front.t.emplace_back(cfg.k_t, 0.0);
            }
        }
        return front;
    }

    AnalogFrontend build_frontend(const SystemConfig &cfg, const channel::ChannelSet &ch)
    {
        std::vector<double> eta;
        if (cfg.analog_mode != AnalogMode::identity)
        {
            if (ch.num_ris < cfg.n_rf)
                throw ConfigError("channel set has fewer RISs than RF chains");
            for (int n = 0; n < cfg.n_rf; ++n)
                eta.push_back(std::sin(ch.paths.bs_ris[n].front().bs_angle));
        }
        return build_frontend(cfg, eta);
    }

    CMatrix effective_analog(const AnalogFrontend &front, double f)
    {
        if (front.mode == AnalogMode::identity)
            return front.F;
        CMatrix fa(front.n_tx, front.n_rf);
        for (int n = 0; n < front.n_rf; ++n)
            fa.col(n) = front.F.middleCols(Eigen::Index(n) * front.k_t, front.k_t) *
                        td_response(front.t[n], f, front.f_c);
        return fa;
    }

    std::vector<CMatrix> effective_analog_all(const AnalogFrontend &front, std::span<const double> frequencies)
    {
        std::vector<CMatrix> out;
        out.reserve(frequencies.size());
        for (double f : frequencies)
            out.push_back(effective_analog(front, f));
        return out;
    }

    std::string frontend_to_json(const AnalogFrontend &front, int indent)
    {
        using json = nlohmann::json;
        json j;
        j["mode"] = std::string(to_string(front.mode));
        j["n_tx"] = front.n_tx;
        j["n_rf"] = front.n_rf;
        j["k_t"] = front.k_t;
        j["subarray"] = front.subarray;
        j["f_c"] = front.f_c;
        j["eta_c"] = front.eta_c;
        j["z_n"] = front.z;
        j["t"] = front.t;

        // one entry per (chain, TD): the row offset and the P phase-shifter weights
        json blocks = json::array();
        if (front.mode != AnalogMode::identity)
            for (int n = 0; n < front.n_rf; ++n)
            {
                json chain = json::array();
                for (int k = 0; k < front.k_t; ++k)
                {
                    const Eigen::Index col = Eigen::Index(n) * front.k_t + k;
                    const Eigen::Index row0 = Eigen::Index(k) * front.subarray;
                    json weights = json::array();
                    for (int p = 0; p < front.subarray; ++p)
                    {
                        const cd w = front.F(row0 + p, col);
                        weights.push_back({w.real(), w.imag()});
                    }
                    chain.push_back({{"row_offset", row0}, {"weights", weights}});
                }
                blocks.push_back(chain);
            }
        j["F_blocks"] = blocks;
        return j.dump(indent);
    }
}

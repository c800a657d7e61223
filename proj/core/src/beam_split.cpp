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

#include "beamsim/beam_split.hpp"

#include <stdexcept>

namespace beamsim::split
{
    namespace
    {
        void check_shape(RisShape shape)
        {
            if (shape.rows < 1 || shape.cols < 1)
                throw std::invalid_argument("RIS shape needs at least one row and one column");
        }
    }

    CVector cascaded_frequency_response(std::span<const channel::PathParams> bs_paths,
                                        std::span<const channel::PathParams> user_paths,
                                        double f, double f_c, RisShape shape)
    {
        check_shape(shape);
        const double offset = f - f_c;
        const double scale = 1.0 + offset / f_c;
        CVector h = CVector::Zero(shape.elements());
        for (const auto &p1 : bs_paths)
        {
            const double u1 = std::sin(p1.ris_azimuth) * std::sin(p1.ris_elevation) / 2.0;
            const double v1 = std::cos(p1.ris_elevation) / 2.0;
            const cd a1 = p1.gain * unit_phasor(-2.0 * kPi * f_c * p1.delay);
            for (const auto &p2 : user_paths)
            {
                const double u2 = std::sin(p2.ris_azimuth) * std::sin(p2.ris_elevation) / 2.0;
                const double v2 = std::cos(p2.ris_elevation) / 2.0;
                const cd a2 = p2.gain * unit_phasor(-2.0 * kPi * f_c * p2.delay);
                const double u3 = u1 - u2;
                const double v3 = v1 - v2;
                const cd c = a1 * a2 * unit_phasor(-2.0 * kPi * offset * (p1.delay + p2.delay));
                for (int mx = 0; mx < shape.rows; ++mx)
                    for (int my = 0; my < shape.cols; ++my)
                        h[mx * shape.cols + my] += c * unit_phasor(-2.0 * kPi * scale * (mx * u3 + my * v3));
            }
        }
        return h;
    }

    double array_gain(double f, double f_c, double u, double v, std::span<const double> phases, RisShape shape)
    {
        check_shape(shape);
        if (phases.size() != std::size_t(shape.elements()))
            throw std::invalid_argument("phase vector length does not match the RIS shape");
        const double scale = kPi * (1.0 + f / f_c);
        cd sum = 0.0;
        for (int mx = 0; mx < shape.rows; ++mx)
            for (int my = 0; my < shape.cols; ++my)
                sum += unit_phasor(phases[mx * shape.cols + my] - scale * (mx * u + my * v));
        return std::abs(sum);
    }

    std::vector<double> optimal_reflection_phases(double u0, double v0, RisShape shape)
    {
        check_shape(shape);
        std::vector<double> phi(shape.elements());
        for (int mx = 0; mx < shape.rows; ++mx)
            for (int my = 0; my < shape.cols; ++my)
                phi[mx * shape.cols + my] = 2.0 * kPi * (mx * u0 + my * v0);
        return phi;
    }

    double sinc_ratio(int n, double x)
    {
        const double den = std::sin(x);
        if (std::abs(den) < 1e-12)
            return double(n);
        return std::abs(std::sin(n * x) / den);
    }

    double closed_form_gain(double f, double f_c, double u0, double v0, RisShape shape)
    {
        check_shape(shape);
        const double detune = 1.0 - f / f_c;
        return sinc_ratio(shape.rows, kPi * detune * u0 / 2.0) * sinc_ratio(shape.cols, kPi * detune * v0 / 2.0);
    }

    double shape_objective(int rows, int z, double a, double b)
    {
        if (rows < 1 || z < 1 || z % rows != 0)
            throw std::invalid_argument("shape_objective: M_x must be a positive divisor of z");
        return std::abs(std::sin(a * rows) * std::sin(b * double(z / rows)));
    }

    std::vector<int> divisors(int z)
    {
        if (z < 1)
            throw std::invalid_argument("divisors: z must be positive");
        std::vector<int> d;
        for (int i = 1; i <= z; ++i)
            if (z % i == 0)
                d.push_back(i);
        return d;
    }

    int best_shape_rows(int z, double a, double b)
    {
        int best = 1;
        double best_value = -1.0;
        for (int rows : divisors(z))
        {
            const double value = shape_objective(rows, z, a, b);
            if (value > best_value)
            {
                best_value = value;
                best = rows;
            }
        }
        return best;
    }

    double distributed_gain(double f, double f_c, double u0, double v0, const DeploymentPlan &plan)
    {
        if (plan.count < 1)
            throw std::invalid_argument("deployment needs at least one sub-RIS");
        return plan.count * closed_form_gain(f, f_c, u0, v0, plan.shape);
    }

    std::vector<GainSweepRow> gain_sweep(const SystemConfig &cfg, EquivalentDirection target,
                                         std::span<const DeploymentPlan> plans, const std::string &scenario_id)
    {
        const auto freqs = channel::subcarrier_frequencies(cfg.f_c, cfg.bandwidth, cfg.num_subcarriers);
        std::vector<GainSweepRow> rows;
        rows.reserve(plans.size() * freqs.size());
        for (const auto &plan : plans)
            for (std::size_t m = 0; m < freqs.size(); ++m)
            {
                GainSweepRow row;
                row.scenario_id = scenario_id;
                row.plan_id = plan.id;
                row.subcarrier_index = int(m);
                row.frequency_hz = freqs[m];
                row.normalized_gain = distributed_gain(freqs[m], cfg.f_c, target.u0, target.v0, plan) / plan.elements();
                rows.push_back(std::move(row));
            }
        return rows;
    }

    std::vector<DeploymentPlan> reference_deployments()
    {
        return {{"scheme1", 1, {16, 16}}, {"scheme2", 4, {8, 8}}, {"scheme3", 4, {16, 4}}};
    }
}

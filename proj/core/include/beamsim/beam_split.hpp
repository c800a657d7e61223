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

#ifndef BEAMSIM_BEAM_SPLIT_HPP
#define BEAMSIM_BEAM_SPLIT_HPP

#include "beamsim/config.hpp"
#include "beamsim/geometry_channel.hpp"
#include "beamsim/types.hpp"

#include <span>
#include <string>
#include <vector>

// Array-gain analysis of the RIS beam split. All frequencies are absolute [Hz]; reflection
// amplitudes are fixed to one.
namespace beamsim::split
{
    struct RisShape
    {
        int rows = 1; // M_x
        int cols = 1; // M_y
        int elements() const { return rows * cols; }
    };

    // S co-located sub-RISs of identical shape
    struct DeploymentPlan
    {
        std::string id;
        int count = 1;
        RisShape shape;
        int elements() const { return count * shape.elements(); }
    };

    // Equivalent direction pair at the carrier, |u0|, |v0| <= 1
    struct EquivalentDirection
    {
        double u0 = 0.0;
        double v0 = 0.0;
    };

    // Per-element frequency response of the cascaded BS-RIS-user channel (single-antenna ends)
    CVector cascaded_frequency_response(std::span<const channel::PathParams> bs_paths,
                                        std::span<const channel::PathParams> user_paths,
                                        double f, double f_c, RisShape shape);

    // |sum exp(j{phi - pi (1 + f/f_c)[(m_x-1) u + (m_y-1) v]})|
    double array_gain(double f, double f_c, double u, double v, std::span<const double> phases, RisShape shape);

    // phi(m_x, m_y) = 2 pi [(m_x-1) u0 + (m_y-1) v0], row-major
    std::vector<double> optimal_reflection_phases(double u0, double v0, RisShape shape);

    // Sinc-ratio closed form of array_gain with optimal phases, evaluated at (u0, v0)
    double closed_form_gain(double f, double f_c, double u0, double v0, RisShape shape);

    // |sin(N x) / sin(x)| with the limit N at sin(x) -> 0
    double sinc_ratio(int n, double x);

    // |sin(a M_x) sin(b z / M_x)|; M_x must divide z
    double shape_objective(int rows, int z, double a, double b);

    std::vector<int> divisors(int z);

    // Divisor M_x of z maximizing shape_objective (smallest on ties)
    int best_shape_rows(int z, double a, double b);

    // Sum over sub-RISs of their sinc-ratio gains (co-located approximation)
    double distributed_gain(double f, double f_c, double u0, double v0, const DeploymentPlan &plan);

    struct GainSweepRow
    {
        std::string scenario_id;
        std::string plan_id;
        int subcarrier_index = 0; // zero-based
        double frequency_hz = 0.0;
        double normalized_gain = 0.0;
    };

    // Normalized distributed gain of every plan on every subcarrier of cfg
    std::vector<GainSweepRow> gain_sweep(const SystemConfig &cfg, EquivalentDirection target,
                                         std::span<const DeploymentPlan> plans, const std::string &scenario_id);

    // Scheme 1 (16x16), Scheme 2 (4 x 8x8), Scheme 3 (4 x 16x4)
    std::vector<DeploymentPlan> reference_deployments();
}

#endif

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

#ifndef BEAMSIM_SCENARIOS_HPP
#define BEAMSIM_SCENARIOS_HPP

#include "beamsim/beam_split.hpp"
#include "beamsim/config.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace beamsim
{
    struct SweepSpec
    {
        std::vector<double> p_max_dbm{-10.0, -5.0, 0.0, 5.0, 10.0};
        std::vector<int> k_t_values{4, 8, 16, 32};
        std::vector<double> bandwidths_hz{5e9, 10e9, 15e9};
        split::EquivalentDirection direction{0.5, 0.5};
        std::vector<split::DeploymentPlan> plans; // empty: scenario default
        int gain_subcarriers = 128;               // subcarrier grid for the gain-sweep figures
    };

    struct Scenario
    {
        std::string id;         // fig2 ... fig13 or custom
        SystemConfig base;      // config after JSON overrides
        SweepSpec sweep;
        std::uint64_t seed = 1; // first seed; seed i of the ensemble is seed + i
        int num_seeds = 10;
    };

    std::vector<std::string> scenario_ids();
    bool is_registered(std::string_view id);

    // Optional "sweep" object of a config document; absent keys keep the defaults
    SweepSpec parse_sweep(std::string_view json_text);

    struct ScenarioOutput
    {
        std::vector<std::filesystem::path> files;
    };

    // Runs the scenario and writes its CSVs plus manifest.json into out_dir.
    // Throws ConfigError for unknown ids or an unwritable directory.
    ScenarioOutput run_scenario(const Scenario &s, const std::filesystem::path &out_dir);

    // Beam-split gain sweep of cfg over the plans in sweep (gain-sweep CLI command)
    ScenarioOutput run_gain_sweep(const SystemConfig &cfg, const SweepSpec &sweep, const std::filesystem::path &out_dir);
}

#endif

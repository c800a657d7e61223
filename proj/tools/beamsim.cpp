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

#include "beamsim/config.hpp"
#include "beamsim/errors.hpp"
#include "beamsim/io.hpp"
#include "beamsim/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace
{
    constexpr int kExitOk = 0;
    constexpr int kExitConfig = 2;
    constexpr int kExitSolver = 3;

    void report(const beamsim::ScenarioOutput &out)
    {
        for (const auto &f : out.files)
            std::cout << "wrote " << f.string() << "\n";
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"beamsim: wideband THz RIS beamforming simulator"};
    app.set_version_flag("--version", beamsim::io::version_string());
    app.require_subcommand(1);

    std::string config_path;
    std::string scenario_id;
    std::string out_dir;
    std::uint64_t seed = 1;
    int num_seeds = 10;

    std::string ids;
    for (const auto &id : beamsim::scenario_ids())
        ids += (ids.empty() ? "" : ", ") + id;

    auto *run = app.add_subcommand("run", "Run a scenario and write its CSV files and manifest");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--scenario", scenario_id, "Scenario id (" + ids + ")")->required();
    run->add_option("--seed", seed, "First seed of the ensemble")->required();
    run->add_option("--out", out_dir, "Output directory")->required();
    run->add_option("--seeds", num_seeds, "Number of seeds")->check(CLI::PositiveNumber);

    auto *sweep = app.add_subcommand("gain-sweep", "Write the beam-split gain sweep of the configured deployments");
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--out", out_dir, "Output directory")->required();

    auto *validate = app.add_subcommand("validate", "Check a config file and exit");
    validate->add_option("--config", config_path, "JSON config file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kExitConfig;
    }

    try
    {
        const std::string text = beamsim::io::read_text(config_path);
        beamsim::SystemConfig cfg = beamsim::parse_config(text);
        const beamsim::SweepSpec spec = beamsim::parse_sweep(text);

        if (*validate)
        {
            std::cout << "config ok: " << config_path << "\n";
            return kExitOk;
        }
        if (*sweep)
        {
            report(beamsim::run_gain_sweep(cfg, spec, out_dir));
            return kExitOk;
        }

        if (!beamsim::is_registered(scenario_id))
            throw beamsim::ConfigError("unknown scenario id '" + scenario_id + "' (known: " + ids + ")");
        cfg.seed = seed;
        beamsim::Scenario s;
        s.id = scenario_id;
        s.base = cfg;
        s.sweep = spec;
        s.seed = seed;
        s.num_seeds = num_seeds;
        report(beamsim::run_scenario(s, out_dir));
        return kExitOk;
    }
    catch (const beamsim::SolverError &e)
    {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
}

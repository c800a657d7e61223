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

#include <gtest/gtest.h>

using namespace beamsim;

TEST(Config, DefaultsAreValid)
{
    SystemConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(cfg.total_ris_elements(), 256);
    EXPECT_EQ(cfg.subarray_size(), 1);
}

TEST(Config, EmptyDocumentKeepsDefaults)
{
    const SystemConfig cfg = parse_config("{}");
    EXPECT_DOUBLE_EQ(cfg.f_c, 100e9);
    EXPECT_EQ(cfg.num_subcarriers, 8);
    EXPECT_EQ(cfg.n_rf, cfg.num_ris);
    EXPECT_NEAR(watts_to_dbm(cfg.p_max), 0.0, 1e-12);
    EXPECT_NEAR(watts_to_dbm(cfg.sigma2), -82.0, 1e-12);
}

TEST(Config, PowersAreReadInDbm)
{
    const SystemConfig cfg = parse_config(R"({"p_max_dbm": 10, "sigma2_dbm": -90})");
    EXPECT_NEAR(cfg.p_max, 1e-2, 1e-15);
    EXPECT_NEAR(cfg.sigma2, 1e-12, 1e-24);
}

TEST(Config, RoundTrip)
{
    SystemConfig cfg = parse_config(R"({"n_tx": 64, "k_t": 8, "b": 15e9, "gain_model": "free_space",
                                        "solver": {"unit_modulus": true, "admm_max_iter": 77},
                                        "geometry": {"user_radius": 2.5}})");
    const SystemConfig back = parse_config(config_to_json(cfg));
    EXPECT_EQ(back.n_tx, 64);
    EXPECT_EQ(back.k_t, 8);
    EXPECT_DOUBLE_EQ(back.bandwidth, 15e9);
    EXPECT_EQ(back.gain_model, GainModel::free_space);
    EXPECT_TRUE(back.solver.unit_modulus);
    EXPECT_EQ(back.solver.admm_max_iter, 77);
    EXPECT_DOUBLE_EQ(back.geometry.user_radius, 2.5);
    EXPECT_NEAR(back.p_max, cfg.p_max, 1e-18);
}

TEST(Config, IdentityModeFollowsAntennaCount)
{
    const SystemConfig cfg = parse_config(R"({"n_tx": 32, "analog_mode": "identity"})");
    EXPECT_EQ(cfg.n_rf, 32);
}

TEST(Config, RejectsBadDocuments)
{
    EXPECT_THROW(parse_config("not json"), ConfigError);
    EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
    EXPECT_THROW(parse_config(R"({"n_txx": 4})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"n_tx": "many"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"solver": {"bogus": 1}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"geometry": {"bs_position": [1, 2]}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"gain_model": "rayleigh"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"analog_mode": "magic"})"), ConfigError);
}

TEST(Config, RejectsInvariantViolations)
{
    EXPECT_THROW(parse_config(R"({"n_tx": 16, "k_t": 5})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"n_rf": 3})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"r": 2})"), ConfigError); // positions still list four panels
    EXPECT_THROW(parse_config(R"({"m": 0})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"b": 3e11})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"solver": {"wmmse_tol": 0}})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"analog_mode": "identity", "n_tx": 16, "n_rf": 4})"), ConfigError);
}

TEST(Config, SweepKeyIsIgnored)
{
    EXPECT_NO_THROW(parse_config(R"({"sweep": {"p_max_dbm": [0]}})"));
}

TEST(Config, MissingFile)
{
    EXPECT_THROW(load_config("/nonexistent/beamsim.json"), ConfigError);
}

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

#ifndef BEAMSIM_IO_HPP
#define BEAMSIM_IO_HPP

#include "beamsim/beam_split.hpp"
#include "beamsim/digital_beamforming.hpp"
#include "beamsim/geometry_channel.hpp"
#include "beamsim/ris_optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace beamsim::io
{
    // Plain CSV writer: header row, then rows of pre-formatted cells. Doubles use "%.17g".
    class CsvWriter
    {
    public:
        explicit CsvWriter(std::vector<std::string> header);

        void add_row(std::vector<std::string> cells);
        std::string str() const;
        void save(const std::filesystem::path &path) const; // throws ConfigError if unwritable

        std::size_t rows() const { return rows_.size(); }

    private:
        std::vector<std::string> header_;
        std::vector<std::vector<std::string>> rows_;
    };

    std::string fmt(double value);
    std::string fmt(long long value);
    inline std::string fmt(int value) { return fmt(static_cast<long long>(value)); }
    inline std::string fmt(std::uint64_t value) { return std::to_string(value); }

    // scenario_id, plan_id, subcarrier_index, frequency_hz, normalized_gain
    CsvWriter gain_sweep_csv(const std::vector<split::GainSweepRow> &rows);

    // iteration, sum_rate_bps_hz, power_used, mu
    CsvWriter wmmse_trace_csv(const std::vector<digital::WmmseTraceRow> &rows);

    // iteration, objective, primal_residual, dual_residual, rho_admm
    CsvWriter admm_trace_csv(const std::vector<ris::AdmmTraceRow> &rows);

    // Channel dump for cross-implementation regression: dimensions, seed, carrier, subcarrier grid,
    // complex entries as [re, im] pairs (row-major) and the generating path parameters.
    std::string channels_to_json(const channel::ChannelSet &ch);
    channel::ChannelSet channels_from_json(const std::string &text);

    void write_text(const std::filesystem::path &path, const std::string &text);
    std::string read_text(const std::filesystem::path &path);

    // Version string baked in at configure time
    std::string version_string();
}

#endif

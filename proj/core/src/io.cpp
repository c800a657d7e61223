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

#include "beamsim/io.hpp"
#include "beamsim/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#ifndef BEAMSIM_VERSION_STRING
#define BEAMSIM_VERSION_STRING "0.0.0+unknown"
#endif

namespace beamsim::io
{
    using json = nlohmann::json;

    namespace
    {
        json complex_pair(cd z) { return json::array({z.real(), z.imag()}); }

        cd pair_complex(const json &j)
        {
            if (!j.is_array() || j.size() != 2)
                throw ConfigError("complex entries must be [re, im] pairs");
            return {j[0].get<double>(), j[1].get<double>()};
        }

        json matrix_json(const CMatrix &a)
        {
            json rows = json::array();
            for (Eigen::Index i = 0; i < a.rows(); ++i)
            {
                json row = json::array();
                for (Eigen::Index j = 0; j < a.cols(); ++j)
                    row.push_back(complex_pair(a(i, j)));
                rows.push_back(std::move(row));
            }
            return rows;
        }

        CMatrix json_matrix(const json &rows, Eigen::Index n_rows, Eigen::Index n_cols)
        {
            if (!rows.is_array() || Eigen::Index(rows.size()) != n_rows)
                throw ConfigError("matrix dump has the wrong number of rows");
            CMatrix a(n_rows, n_cols);
            for (Eigen::Index i = 0; i < n_rows; ++i)
            {
                if (Eigen::Index(rows[i].size()) != n_cols)
                    throw ConfigError("matrix dump has the wrong number of columns");
                for (Eigen::Index j = 0; j < n_cols; ++j)
                    a(i, j) = pair_complex(rows[i][j]);
            }
            return a;
        }

        json path_json(const channel::PathParams &p)
        {
            return {{"gain", complex_pair(p.gain)},
                    {"delay", p.delay},
                    {"bs_angle", p.bs_angle},
                    {"ris_azimuth", p.ris_azimuth},
                    {"ris_elevation", p.ris_elevation}};
        }

        channel::PathParams json_path(const json &j)
        {
            channel::PathParams p;
            p.gain = pair_complex(j.at("gain"));
            p.delay = j.at("delay").get<double>();
            p.bs_angle = j.at("bs_angle").get<double>();
            p.ris_azimuth = j.at("ris_azimuth").get<double>();
            p.ris_elevation = j.at("ris_elevation").get<double>();
            return p;
        }

        std::string csv_escape(const std::string &cell)
        {
            if (cell.find_first_of(",\"\n") == std::string::npos)
                return cell;
            std::string out = "\"";
            for (char c : cell)
            {
                if (c == '"')
                    out += '"';
                out += c;
            }
            return out + "\"";
        }
    }

    CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void CsvWriter::add_row(std::vector<std::string> cells)
    {
        if (cells.size() != header_.size())
            throw std::invalid_argument("CSV row width does not match the header");
        rows_.push_back(std::move(cells));
    }

    std::string CsvWriter::str() const
    {
        std::string out;
        auto emit = [&out](const std::vector<std::string> &cells)
        {
            for (std::size_t i = 0; i < cells.size(); ++i)
            {
                if (i)
                    out += ',';
                out += csv_escape(cells[i]);
            }
            out += '\n';
        };
        emit(header_);
        for (const auto &row : rows_)
            emit(row);
        return out;
    }

    void CsvWriter::save(const std::filesystem::path &path) const { write_text(path, str()); }

    std::string fmt(double value)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        return buf;
    }

    std::string fmt(long long value) { return std::to_string(value); }

    CsvWriter gain_sweep_csv(const std::vector<split::GainSweepRow> &rows)
    {
        CsvWriter csv({"scenario_id", "plan_id", "subcarrier_index", "frequency_hz", "normalized_gain"});
        for (const auto &r : rows)
            csv.add_row({r.scenario_id, r.plan_id, fmt(r.subcarrier_index), fmt(r.frequency_hz), fmt(r.normalized_gain)});
        return csv;
    }

    CsvWriter wmmse_trace_csv(const std::vector<digital::WmmseTraceRow> &rows)
    {
        CsvWriter csv({"iteration", "sum_rate_bps_hz", "power_used", "mu"});
        for (const auto &r : rows)
            csv.add_row({fmt(r.iteration), fmt(r.sum_rate_bps_hz), fmt(r.power_used), fmt(r.mu)});
        return csv;
    }

    CsvWriter admm_trace_csv(const std::vector<ris::AdmmTraceRow> &rows)
    {
        CsvWriter csv({"iteration", "objective", "primal_residual", "dual_residual", "rho_admm"});
        for (const auto &r : rows)
            csv.add_row({fmt(r.iteration), fmt(r.objective), fmt(r.primal_residual), fmt(r.dual_residual),
                         fmt(r.rho_admm)});
        return csv;
    }

    std::string channels_to_json(const channel::ChannelSet &ch)
    {
        json j;
        j["num_ris"] = ch.num_ris;
        j["num_subcarriers"] = ch.num_subcarriers;
        j["num_users"] = ch.num_users;
        j["n_tx"] = ch.n_tx;
        j["ris_rows"] = ch.ris_rows;
        j["ris_cols"] = ch.ris_cols;
        j["seed"] = ch.seed;
        j["f_c"] = ch.f_c;
        j["frequencies"] = ch.frequencies;

        json g = json::array();
        for (const auto &m : ch.G)
            g.push_back(matrix_json(m));
        j["G"] = std::move(g);
        json f = json::array();
        for (const auto &row : ch.f)
            f.push_back(matrix_json(row)[0]);
        j["f"] = std::move(f);

        json bs = json::array();
        for (const auto &per_ris : ch.paths.bs_ris)
        {
            json list = json::array();
            for (const auto &p : per_ris)
                list.push_back(path_json(p));
            bs.push_back(std::move(list));
        }
        json users = json::array();
        for (const auto &per_ris : ch.paths.ris_user)
        {
            json per_user = json::array();
            for (const auto &paths : per_ris)
            {
                json list = json::array();
                for (const auto &p : paths)
                    list.push_back(path_json(p));
                per_user.push_back(std::move(list));
            }
            users.push_back(std::move(per_user));
        }
        j["paths"] = {{"bs_ris", bs}, {"ris_user", users}};
        return j.dump();
    }

    channel::ChannelSet channels_from_json(const std::string &text)
    {
        try
        {
            const json j = json::parse(text);
            channel::ChannelSet ch;
            ch.num_ris = j.at("num_ris").get<int>();
            ch.num_subcarriers = j.at("num_subcarriers").get<int>();
            ch.num_users = j.at("num_users").get<int>();
            ch.n_tx = j.at("n_tx").get<int>();
            ch.ris_rows = j.at("ris_rows").get<int>();
            ch.ris_cols = j.at("ris_cols").get<int>();
            ch.seed = j.at("seed").get<std::uint64_t>();
            ch.f_c = j.at("f_c").get<double>();
            ch.frequencies = j.at("frequencies").get<std::vector<double>>();

            const Eigen::Index n = ch.ris_elements();
            const std::size_t blocks = std::size_t(ch.num_ris) * ch.num_subcarriers;
            if (j.at("G").size() != blocks || j.at("f").size() != blocks * ch.num_users)
                throw ConfigError("channel dump has inconsistent block counts");
            for (const auto &g : j.at("G"))
                ch.G.push_back(json_matrix(g, n, ch.n_tx));
            for (const auto &row : j.at("f"))
                ch.f.push_back(json_matrix(json::array({row}), 1, n).row(0));

            for (const auto &per_ris : j.at("paths").at("bs_ris"))
            {
                std::vector<channel::PathParams> list;
                for (const auto &p : per_ris)
                    list.push_back(json_path(p));
                ch.paths.bs_ris.push_back(std::move(list));
            }
            for (const auto &per_ris : j.at("paths").at("ris_user"))
            {
                std::vector<std::vector<channel::PathParams>> per_user;
                for (const auto &paths : per_ris)
                {
                    std::vector<channel::PathParams> list;
                    for (const auto &p : paths)
                        list.push_back(json_path(p));
                    per_user.push_back(std::move(list));
                }
                ch.paths.ris_user.push_back(std::move(per_user));
            }
            return ch;
        }
        catch (const json::exception &e)
        {
            throw ConfigError(std::string("malformed channel dump: ") + e.what());
        }
    }

    void write_text(const std::filesystem::path &path, const std::string &text)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw ConfigError("cannot write '" + path.string() + "'");
        out << text;
        if (!out)
            throw ConfigError("write to '" + path.string() + "' failed");
    }

    std::string read_text(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError("cannot read '" + path.string() + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string version_string() { return BEAMSIM_VERSION_STRING; }
}

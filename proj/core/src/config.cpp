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

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace beamsim
{
    using json = nlohmann::json;

    namespace
    {
        void require(bool condition, const std::string &what)
        {
            if (!condition)
                throw ConfigError("invalid config: " + what);
        }

        void reject_unknown(const json &j, const std::set<std::string> &known, const std::string &where)
        {
            for (const auto &[key, value] : j.items())
                if (!known.count(key))
                    throw ConfigError("unknown key '" + key + "' in " + where);
        }

        template <typename T>
        void read(const json &j, const char *key, T &out)
        {
            if (!j.contains(key))
                return;
            try
            {
                out = j.at(key).get<T>();
            }
            catch (const json::exception &e)
            {
                throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
            }
        }

        Eigen::Vector3d to_vec3(const json &j, const std::string &what)
        {
            if (!j.is_array() || j.size() != 3)
                throw ConfigError(what + " must be a [x, y, z] array");
            Eigen::Vector3d v;
            for (int i = 0; i < 3; ++i)
            {
                if (!j[i].is_number())
                    throw ConfigError(what + " must contain numbers");
                v[i] = j[i].get<double>();
            }
            return v;
        }

        std::vector<Eigen::Vector3d> to_vec3_list(const json &j, const std::string &what)
        {
            if (!j.is_array())
                throw ConfigError(what + " must be an array of positions");
            std::vector<Eigen::Vector3d> out;
            for (const auto &item : j)
                out.push_back(to_vec3(item, what));
            return out;
        }

        json from_vec3(const Eigen::Vector3d &v) { return json::array({v.x(), v.y(), v.z()}); }

        GainModel parse_gain_model(const std::string &s)
        {
            if (s == "unit")
                return GainModel::unit;
            if (s == "free_space")
                return GainModel::free_space;
            throw ConfigError("gain_model must be 'unit' or 'free_space', got '" + s + "'");
        }

        AnalogMode parse_analog_mode(const std::string &s)
        {
            if (s == "true_time_delay")
                return AnalogMode::true_time_delay;
            if (s == "phase_shift_only")
                return AnalogMode::phase_shift_only;
            if (s == "identity")
                return AnalogMode::identity;
            throw ConfigError("analog_mode must be 'true_time_delay', 'phase_shift_only' or 'identity', got '" + s + "'");
        }
    }

    std::string_view to_string(GainModel m)
    {
        return m == GainModel::unit ? "unit" : "free_space";
    }

    std::string_view to_string(AnalogMode m)
    {
        switch (m)
        {
        case AnalogMode::true_time_delay:
            return "true_time_delay";
        case AnalogMode::phase_shift_only:
            return "phase_shift_only";
        case AnalogMode::identity:
            return "identity";
        }
        return "unknown";
    }

    void SystemConfig::validate() const
    {
        require(f_c > 0.0, "f_c must be positive");
        require(bandwidth >= 0.0 && bandwidth < 2.0 * f_c, "b must lie in [0, 2 f_c)");
        require(num_subcarriers >= 1, "m must be >= 1");
        require(n_tx >= 1, "n_tx must be >= 1");
        require(n_rf >= 1, "n_rf must be >= 1");
        require(k_t >= 1, "k_t must be >= 1");
        require(num_ris >= 1, "r must be >= 1");
        require(ris_rows >= 1 && ris_cols >= 1, "m_x and m_y must be >= 1");
        require(num_users >= 1, "k must be >= 1");
        require(p_max > 0.0 && std::isfinite(p_max), "p_max must be positive and finite");
        require(sigma2 > 0.0 && std::isfinite(sigma2), "sigma2 must be positive and finite");
        require(l1 >= 1 && l2 >= 1, "l1 and l2 must be >= 1");
        if (analog_mode == AnalogMode::identity)
            require(n_rf == n_tx, "identity analog mode needs n_rf == n_tx");
        else
        {
            require(n_tx % k_t == 0, "n_tx must be a multiple of k_t");
            require(n_rf == num_ris, "n_rf must equal r (one RF chain per RIS)");
        }
        require(int(geometry.ris_positions.size()) == num_ris, "geometry.ris_positions must list r positions");
        require(geometry.user_positions.empty() || int(geometry.user_positions.size()) == num_users,
                "geometry.user_positions must be empty or list k positions");
        require(geometry.user_radius >= 0.0, "geometry.user_radius must be >= 0");
        require(geometry.bs_array_axis.norm() > 0.0, "geometry.bs_array_axis must be nonzero");
        require(solver.wmmse_tol > 0.0 && solver.ris_tol > 0.0 && solver.admm_tol > 0.0 && solver.outer_tol > 0.0,
                "solver tolerances must be positive");
        require(solver.wmmse_max_iter >= 1 && solver.ris_max_sweeps >= 1 && solver.admm_max_iter >= 1 &&
                    solver.outer_max_iter >= 1,
                "solver iteration caps must be >= 1");
    }

    SystemConfig parse_config(std::string_view json_text)
    {
        json j;
        try
        {
            j = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!j.is_object())
            throw ConfigError("config must be a JSON object");

        reject_unknown(j,
                       {"f_c", "b", "m", "n_tx", "n_rf", "k_t", "r", "m_x", "m_y", "k", "p_max_dbm", "sigma2_dbm",
                        "l1", "l2", "seed", "gain_model", "analog_mode", "quantize_td", "solver", "geometry", "sweep"},
                       "config");

        SystemConfig cfg;
        read(j, "f_c", cfg.f_c);
        read(j, "b", cfg.bandwidth);
        read(j, "m", cfg.num_subcarriers);
        read(j, "n_tx", cfg.n_tx);
        read(j, "k_t", cfg.k_t);
        read(j, "r", cfg.num_ris);
        read(j, "m_x", cfg.ris_rows);
        read(j, "m_y", cfg.ris_cols);
        read(j, "k", cfg.num_users);
        read(j, "l1", cfg.l1);
        read(j, "l2", cfg.l2);
        read(j, "seed", cfg.seed);
        read(j, "quantize_td", cfg.quantize_td);

        // N_RF follows R unless given explicitly
        cfg.n_rf = cfg.num_ris;
        read(j, "n_rf", cfg.n_rf);

        double dbm = 0.0;
        if (j.contains("p_max_dbm"))
        {
            read(j, "p_max_dbm", dbm);
            cfg.p_max = dbm_to_watts(dbm);
        }
        if (j.contains("sigma2_dbm"))
        {
            read(j, "sigma2_dbm", dbm);
            cfg.sigma2 = dbm_to_watts(dbm);
        }

        std::string s;
        if (j.contains("gain_model"))
        {
            read(j, "gain_model", s);
            cfg.gain_model = parse_gain_model(s);
        }
        if (j.contains("analog_mode"))
        {
            read(j, "analog_mode", s);
            cfg.analog_mode = parse_analog_mode(s);
            if (cfg.analog_mode == AnalogMode::identity && !j.contains("n_rf"))
                cfg.n_rf = cfg.n_tx;
        }

        if (j.contains("solver"))
        {
            const json &js = j["solver"];
            if (!js.is_object())
                throw ConfigError("solver must be an object");
            reject_unknown(js,
                           {"wmmse_tol", "wmmse_max_iter", "ris_tol", "ris_max_sweeps", "admm_tol", "admm_max_iter",
                            "outer_tol", "outer_max_iter", "unit_modulus"},
                           "solver");
            read(js, "wmmse_tol", cfg.solver.wmmse_tol);
            read(js, "wmmse_max_iter", cfg.solver.wmmse_max_iter);
            read(js, "ris_tol", cfg.solver.ris_tol);
            read(js, "ris_max_sweeps", cfg.solver.ris_max_sweeps);
            read(js, "admm_tol", cfg.solver.admm_tol);
            read(js, "admm_max_iter", cfg.solver.admm_max_iter);
            read(js, "outer_tol", cfg.solver.outer_tol);
            read(js, "outer_max_iter", cfg.solver.outer_max_iter);
            read(js, "unit_modulus", cfg.solver.unit_modulus);
        }

        if (j.contains("geometry"))
        {
            const json &jg = j["geometry"];
            if (!jg.is_object())
                throw ConfigError("geometry must be an object");
            reject_unknown(jg,
                           {"bs_position", "bs_array_axis", "ris_positions", "user_center", "user_radius",
                            "user_positions"},
                           "geometry");
            Geometry &g = cfg.geometry;
            if (jg.contains("bs_position"))
                g.bs_position = to_vec3(jg["bs_position"], "geometry.bs_position");
            if (jg.contains("bs_array_axis"))
                g.bs_array_axis = to_vec3(jg["bs_array_axis"], "geometry.bs_array_axis");
            if (jg.contains("ris_positions"))
                g.ris_positions = to_vec3_list(jg["ris_positions"], "geometry.ris_positions");
            if (jg.contains("user_center"))
                g.user_center = to_vec3(jg["user_center"], "geometry.user_center");
            read(jg, "user_radius", g.user_radius);
            if (jg.contains("user_positions"))
                g.user_positions = to_vec3_list(jg["user_positions"], "geometry.user_positions");
        }

        cfg.validate();
        return cfg;
    }

    SystemConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot read config file '" + path.string() + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    std::string config_to_json(const SystemConfig &cfg, int indent)
    {
        json j;
        j["f_c"] = cfg.f_c;
        j["b"] = cfg.bandwidth;
        j["m"] = cfg.num_subcarriers;
        j["n_tx"] = cfg.n_tx;
        j["n_rf"] = cfg.n_rf;
        j["k_t"] = cfg.k_t;
        j["r"] = cfg.num_ris;
        j["m_x"] = cfg.ris_rows;
        j["m_y"] = cfg.ris_cols;
        j["k"] = cfg.num_users;
        j["p_max_dbm"] = watts_to_dbm(cfg.p_max);
        j["sigma2_dbm"] = watts_to_dbm(cfg.sigma2);
        j["l1"] = cfg.l1;
        j["l2"] = cfg.l2;
        j["seed"] = cfg.seed;
        j["gain_model"] = std::string(to_string(cfg.gain_model));
        j["analog_mode"] = std::string(to_string(cfg.analog_mode));
        j["quantize_td"] = cfg.quantize_td;

        const SolverOptions &so = cfg.solver;
        j["solver"] = {{"wmmse_tol", so.wmmse_tol},   {"wmmse_max_iter", so.wmmse_max_iter},
                       {"ris_tol", so.ris_tol},       {"ris_max_sweeps", so.ris_max_sweeps},
                       {"admm_tol", so.admm_tol},     {"admm_max_iter", so.admm_max_iter},
                       {"outer_tol", so.outer_tol},   {"outer_max_iter", so.outer_max_iter},
                       {"unit_modulus", so.unit_modulus}};

        const Geometry &g = cfg.geometry;
        json ris = json::array();
        for (const auto &p : g.ris_positions)
            ris.push_back(from_vec3(p));
        json users = json::array();
        for (const auto &p : g.user_positions)
            users.push_back(from_vec3(p));
        j["geometry"] = {{"bs_position", from_vec3(g.bs_position)},
                         {"bs_array_axis", from_vec3(g.bs_array_axis)},
                         {"ris_positions", ris},
                         {"user_center", from_vec3(g.user_center)},
                         {"user_radius", g.user_radius},
                         {"user_positions", users}};
        return j.dump(indent);
    }
}

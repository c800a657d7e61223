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

#include "beamsim/scenarios.hpp"
#include "beamsim/errors.hpp"
#include "beamsim/io.hpp"
#include "beamsim/orchestrator.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <map>

namespace beamsim
{
    using json = nlohmann::json;

    namespace
    {
        constexpr int kShapeBudget = 1600;
        const double kShapeCoefficients[] = {0.005, 0.01};

        struct Context
        {
            const Scenario &s;
            std::filesystem::path dir;
            ScenarioOutput out;

            void save(const io::CsvWriter &csv, const std::string &name)
            {
                csv.save(dir / name);
                out.files.push_back(dir / name);
            }

            void save_text(const std::string &text, const std::string &name)
            {
                io::write_text(dir / name, text);
                out.files.push_back(dir / name);
            }

            std::uint64_t seed(int i) const { return s.seed + std::uint64_t(i); }
        };

        struct Scheme
        {
            std::string label;
            std::function<void(SystemConfig &)> apply;
        };

        std::string ghz_label(double hz)
        {
            const double ghz = hz / 1e9;
            if (std::abs(ghz - std::round(ghz)) < 1e-9)
                return std::to_string(static_cast<long long>(std::round(ghz))) + "ghz";
            std::string s = io::fmt(ghz);
            for (char &c : s)
                if (c == '.')
                    c = 'p';
            return s + "ghz";
        }

        template <typename F>
        auto with_context(const std::string &id, std::uint64_t seed, F &&f)
        {
            try
            {
                return f();
            }
            catch (const SolverError &e)
            {
                throw SolverError("scenario " + id + ", seed " + std::to_string(seed) + ": " + e.what());
            }
        }

        double mean_of(const std::vector<double> &v)
        {
            double s = 0.0;
            for (double x : v)
                s += x;
            return v.empty() ? 0.0 : s / double(v.size());
        }

        double std_of(const std::vector<double> &v)
        {
            if (v.size() < 2)
                return 0.0;
            const double mu = mean_of(v);
            double s = 0.0;
            for (double x : v)
                s += (x - mu) * (x - mu);
            return std::sqrt(s / double(v.size() - 1));
        }

        void add_trace_rows(io::CsvWriter &csv, const RunResult &r)
        {
            for (std::size_t i = 0; i < r.rate_trace.size(); ++i)
                csv.add_row({io::fmt(r.seed), io::fmt(int(i)), io::fmt(r.rate_trace[i])});
        }

        io::CsvWriter trace_csv() { return io::CsvWriter({"seed", "outer_iteration", "sum_rate_bps_hz"}); }
        io::CsvWriter power_csv() { return io::CsvWriter({"scenario", "p_max_dbm", "scheme", "mean_rate", "std_rate"}); }
        io::CsvWriter per_seed_csv()
        {
            return io::CsvWriter({"scenario", "p_max_dbm", "scheme", "seed", "sum_rate_bps_hz"});
        }

        // Mean/std rate over the seed ensemble for every (P_max, scheme) pair
        void rate_vs_power(Context &ctx, const std::vector<Scheme> &schemes)
        {
            io::CsvWriter summary = power_csv();
            io::CsvWriter per_seed = per_seed_csv();
            for (double p_dbm : ctx.s.sweep.p_max_dbm)
                for (const auto &scheme : schemes)
                {
                    std::vector<double> rates;
                    for (int i = 0; i < ctx.s.num_seeds; ++i)
                    {
                        SystemConfig cfg = ctx.s.base;
                        cfg.p_max = dbm_to_watts(p_dbm);
                        cfg.seed = ctx.seed(i);
                        scheme.apply(cfg);
                        cfg.validate();
                        const double rate = with_context(ctx.s.id, cfg.seed, [&] { return algorithm1(cfg).final_rate(); });
                        rates.push_back(rate);
                        per_seed.add_row({ctx.s.id, io::fmt(p_dbm), scheme.label, io::fmt(cfg.seed), io::fmt(rate)});
                    }
                    summary.add_row(
                        {ctx.s.id, io::fmt(p_dbm), scheme.label, io::fmt(mean_of(rates)), io::fmt(std_of(rates))});
                }
            ctx.save(summary, "rate_vs_power.csv");
            ctx.save(per_seed, "rate_vs_power_per_seed.csv");
        }

        // Convergence traces of the proposed scheme, a set of comparison schemes and the fully-digital bound
        void convergence(Context &ctx, const std::vector<Scheme> &extra)
        {
            io::CsvWriter proposed = trace_csv();
            io::CsvWriter digital = trace_csv();
            std::vector<io::CsvWriter> others(extra.size(), trace_csv());
            std::map<std::string, std::vector<double>> finals;

            for (int i = 0; i < ctx.s.num_seeds; ++i)
            {
                SystemConfig cfg = ctx.s.base;
                cfg.seed = ctx.seed(i);
                with_context(ctx.s.id, cfg.seed, [&] {
                    const channel::ChannelSet ch = channel::synthesize_channels(cfg);
                    const analog::AnalogFrontend front = analog::build_frontend(cfg, ch);
                    const RunResult hybrid = algorithm1(cfg, ch, front);
                    const RunResult bound = fully_digital_run(cfg, ch, front, hybrid);
                    add_trace_rows(proposed, hybrid);
                    add_trace_rows(digital, bound);
                    finals["proposed"].push_back(hybrid.final_rate());
                    finals["fully_digital"].push_back(bound.final_rate());
                    if (i == 0)
                    {
                        ctx.save(io::wmmse_trace_csv(hybrid.wmmse_trace), "wmmse_trace.csv");
                        ctx.save(io::admm_trace_csv(hybrid.admm_trace), "admm_trace.csv");
                        ctx.save_text(io::channels_to_json(ch), "channels.json");
                        ctx.save_text(analog::frontend_to_json(front), "frontend.json");
                    }
                    for (std::size_t e = 0; e < extra.size(); ++e)
                    {
                        SystemConfig alt = cfg;
                        extra[e].apply(alt);
                        alt.validate();
                        const RunResult r = algorithm1(alt, ch, analog::build_frontend(alt, ch));
                        add_trace_rows(others[e], r);
                        finals[extra[e].label].push_back(r.final_rate());
                    }
                    return 0;
                });
            }

            ctx.save(proposed, "rate_trace.csv");
            ctx.save(digital, "rate_trace_fully_digital.csv");
            for (std::size_t e = 0; e < extra.size(); ++e)
                ctx.save(others[e], "rate_trace_" + extra[e].label + ".csv");

            io::CsvWriter summary = power_csv();
            io::CsvWriter per_seed = per_seed_csv();
            const double p_dbm = watts_to_dbm(ctx.s.base.p_max);
            std::vector<std::string> labels{"proposed", "fully_digital"};
            for (const auto &e : extra)
                labels.push_back(e.label);
            for (const auto &label : labels)
            {
                const auto &rates = finals[label];
                summary.add_row({ctx.s.id, io::fmt(p_dbm), label, io::fmt(mean_of(rates)), io::fmt(std_of(rates))});
                for (std::size_t i = 0; i < rates.size(); ++i)
                    per_seed.add_row({ctx.s.id, io::fmt(p_dbm), label, io::fmt(ctx.seed(int(i))), io::fmt(rates[i])});
            }
            ctx.save(summary, "rate_vs_power.csv");
            ctx.save(per_seed, "rate_vs_power_per_seed.csv");
        }

        void gain_figure(Context &ctx, std::vector<split::DeploymentPlan> defaults)
        {
            const auto &plans = ctx.s.sweep.plans.empty() ? defaults : ctx.s.sweep.plans;
            SystemConfig cfg = ctx.s.base;
            cfg.num_subcarriers = ctx.s.sweep.gain_subcarriers;
            ctx.save(io::gain_sweep_csv(split::gain_sweep(cfg, ctx.s.sweep.direction, plans, ctx.s.id)),
                     "gain_sweep.csv");
        }

        void fig2(Context &ctx)
        {
            io::CsvWriter csv({"scenario_id", "a", "b", "m_x", "m_y", "objective"});
            for (double c : kShapeCoefficients)
                for (int rows : split::divisors(kShapeBudget))
                    csv.add_row({ctx.s.id, io::fmt(c), io::fmt(c), io::fmt(rows), io::fmt(kShapeBudget / rows),
                                 io::fmt(split::shape_objective(rows, kShapeBudget, c, c))});
            ctx.save(csv, "shape_objective.csv");
        }

        void fig3(Context &ctx)
        {
            std::vector<split::DeploymentPlan> plans;
            for (int n : {8, 16, 24, 32, 40})
                plans.push_back({std::to_string(n) + "x" + std::to_string(n), 1, {n, n}});
            gain_figure(ctx, plans);
        }

        void fig4(Context &ctx)
        {
            std::vector<split::DeploymentPlan> plans;
            for (auto [rows, cols] : {std::pair{8, 8}, {16, 4}, {32, 2}, {64, 1}})
                plans.push_back({std::to_string(rows) + "x" + std::to_string(cols), 1, {rows, cols}});
            gain_figure(ctx, plans);
        }

        void fig5(Context &ctx) { gain_figure(ctx, split::reference_deployments()); }

        Scheme no_td()
        {
            return {"no_td", [](SystemConfig &c) { c.analog_mode = AnalogMode::phase_shift_only; }};
        }

        void fig8(Context &ctx) { convergence(ctx, {}); }

        void fig9(Context &ctx) { convergence(ctx, {no_td()}); }

        void fig10(Context &ctx)
        {
            std::vector<Scheme> schemes;
            for (int kt : ctx.s.sweep.k_t_values)
                schemes.push_back({"td_kt" + std::to_string(kt), [kt](SystemConfig &c) { c.k_t = kt; }});
            schemes.push_back(no_td());
            rate_vs_power(ctx, schemes);
        }

        void fig12(Context &ctx)
        {
            const Geometry defaults;
            auto distributed = [defaults](SystemConfig &c, int rows, int cols)
            {
                if (int(c.geometry.ris_positions.size()) != 4)
                    c.geometry.ris_positions = defaults.ris_positions;
                c.num_ris = 4;
                c.n_rf = 4;
                c.ris_rows = rows;
                c.ris_cols = cols;
            };
            std::vector<Scheme> schemes{
                {"scheme1",
                 [](SystemConfig &c)
                 {
                     c.num_ris = 1;
                     c.n_rf = 1;
                     c.ris_rows = 16;
                     c.ris_cols = 16;
                     c.geometry.ris_positions = {{0.0, 90.0, 7.0}};
                 }},
                {"scheme2", [distributed](SystemConfig &c) { distributed(c, 8, 8); }},
                {"scheme3", [distributed](SystemConfig &c) { distributed(c, 16, 4); }},
            };
            rate_vs_power(ctx, schemes);
        }

        void fig13(Context &ctx)
        {
            std::vector<Scheme> schemes;
            for (double b : ctx.s.sweep.bandwidths_hz)
            {
                const std::string tag = "_b" + ghz_label(b);
                schemes.push_back({"proposed" + tag, [b](SystemConfig &c) { c.bandwidth = b; }});
                schemes.push_back({"no_td" + tag,
                                   [b](SystemConfig &c)
                                   {
                                       c.bandwidth = b;
                                       c.analog_mode = AnalogMode::phase_shift_only;
                                   }});
            }
            rate_vs_power(ctx, schemes);
        }

        using Runner = void (*)(Context &);

        const std::map<std::string, Runner> &registry()
        {
            static const std::map<std::string, Runner> runners{
                {"fig2", fig2},   {"fig3", fig3},   {"fig4", fig4},   {"fig5", fig5},   {"fig8", fig8},
                {"fig9", fig9},   {"fig10", fig10}, {"fig12", fig12}, {"fig13", fig13}, {"custom", fig8},
            };
            return runners;
        }

        std::filesystem::path prepare_dir(const std::filesystem::path &dir)
        {
            std::error_code ec;
            std::filesystem::create_directories(dir, ec);
            if (ec || !std::filesystem::is_directory(dir))
                throw ConfigError("cannot create output directory '" + dir.string() + "'");
            return dir;
        }

        json sweep_json(const SweepSpec &sw)
        {
            json plans = json::array();
            for (const auto &p : sw.plans)
                plans.push_back({{"id", p.id}, {"count", p.count}, {"rows", p.shape.rows}, {"cols", p.shape.cols}});
            return {{"p_max_dbm", sw.p_max_dbm},
                    {"k_t_values", sw.k_t_values},
                    {"bandwidths_hz", sw.bandwidths_hz},
                    {"direction", {sw.direction.u0, sw.direction.v0}},
                    {"plans", plans},
                    {"gain_subcarriers", sw.gain_subcarriers}};
        }

        void write_manifest(Context &ctx, double wall_clock)
        {
            json seeds = json::array();
            for (int i = 0; i < ctx.s.num_seeds; ++i)
                seeds.push_back(ctx.seed(i));
            json files = json::array();
            for (const auto &f : ctx.out.files)
                files.push_back(f.filename().string());
            json m{{"scenario", ctx.s.id},
                   {"version", io::version_string()},
                   {"seed", ctx.s.seed},
                   {"num_seeds", ctx.s.num_seeds},
                   {"seeds", seeds},
                   {"wall_clock_s", wall_clock},
                   {"config", json::parse(config_to_json(ctx.s.base))},
                   {"sweep", sweep_json(ctx.s.sweep)},
                   {"files", files}};
            ctx.save_text(m.dump(2) + "\n", "manifest.json");
        }
    }

    std::vector<std::string> scenario_ids()
    {
        std::vector<std::string> ids;
        for (const auto &[id, runner] : registry())
            ids.push_back(id);
        return ids;
    }

    bool is_registered(std::string_view id) { return registry().count(std::string(id)) > 0; }

    SweepSpec parse_sweep(std::string_view json_text)
    {
        json doc;
        try
        {
            doc = json::parse(json_text);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        SweepSpec sw;
        if (!doc.is_object() || !doc.contains("sweep"))
            return sw;
        const json &j = doc["sweep"];
        if (!j.is_object())
            throw ConfigError("sweep must be an object");
        try
        {
            for (const auto &[key, value] : j.items())
            {
                if (key == "p_max_dbm")
                    sw.p_max_dbm = value.get<std::vector<double>>();
                else if (key == "k_t_values")
                    sw.k_t_values = value.get<std::vector<int>>();
                else if (key == "bandwidths_hz")
                    sw.bandwidths_hz = value.get<std::vector<double>>();
                else if (key == "direction")
                {
                    const auto d = value.get<std::vector<double>>();
                    if (d.size() != 2 || std::abs(d[0]) > 1.0 || std::abs(d[1]) > 1.0)
                        throw ConfigError("sweep.direction must be [u0, v0] with |u0|, |v0| <= 1");
                    sw.direction = {d[0], d[1]};
                }
                else if (key == "plans")
                {
                    for (const auto &p : value)
                    {
                        split::DeploymentPlan plan{p.at("id").get<std::string>(), p.value("count", 1),
                                                   {p.at("rows").get<int>(), p.at("cols").get<int>()}};
                        if (plan.count < 1 || plan.shape.rows < 1 || plan.shape.cols < 1)
                            throw ConfigError("sweep plan '" + plan.id + "' needs positive count and shape");
                        sw.plans.push_back(plan);
                    }
                }
                else if (key == "gain_subcarriers")
                    sw.gain_subcarriers = value.get<int>();
                else
                    throw ConfigError("unknown key '" + key + "' in sweep");
            }
        }
        catch (const json::exception &e)
        {
            throw ConfigError(std::string("bad sweep specification: ") + e.what());
        }
        if (sw.gain_subcarriers < 1)
            throw ConfigError("sweep.gain_subcarriers must be >= 1");
        for (int kt : sw.k_t_values)
            if (kt < 1)
                throw ConfigError("sweep.k_t_values must be positive");
        for (double b : sw.bandwidths_hz)
            if (b < 0.0)
                throw ConfigError("sweep.bandwidths_hz must be non-negative");
        return sw;
    }

    ScenarioOutput run_scenario(const Scenario &s, const std::filesystem::path &out_dir)
    {
        const auto it = registry().find(s.id);
        if (it == registry().end())
            throw ConfigError("unknown scenario id '" + s.id + "'");
        if (s.num_seeds < 1)
            throw ConfigError("number of seeds must be >= 1");
        s.base.validate();

        const auto t0 = std::chrono::steady_clock::now();
        Context ctx{s, prepare_dir(out_dir), {}};
        it->second(ctx);
        write_manifest(ctx, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        return ctx.out;
    }

    ScenarioOutput run_gain_sweep(const SystemConfig &cfg, const SweepSpec &sweep, const std::filesystem::path &out_dir)
    {
        Scenario s;
        s.id = "gain_sweep";
        s.base = cfg;
        s.sweep = sweep;
        s.seed = cfg.seed;
        s.num_seeds = 1;

        const auto t0 = std::chrono::steady_clock::now();
        Context ctx{s, prepare_dir(out_dir), {}};
        gain_figure(ctx, split::reference_deployments());
        write_manifest(ctx, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        return ctx.out;
    }
}

// SPDX-License-Identifier: Apache-2.0
//
// rasense: rotatable-antenna sparse-array DOA estimation via tensor decomposition
// Copyright (C) 2026 The rasense authors
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

#include "rasense/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef RASENSE_VERSION
#define RASENSE_VERSION "unknown"
#endif

namespace rasense
{
    namespace fs = std::filesystem;

    namespace
    {
        class OutputError : public std::runtime_error
        {
            using std::runtime_error::runtime_error;
        };

        struct RunContext
        {
            Command command;
            RunConfig config;
            std::uint64_t seed;
            bool seed_generated;
            fs::path dir;
            std::vector<std::string> files;
            std::map<std::string, std::string> extra; // effective per-command settings
        };

        void write_file(RunContext &ctx, const std::string &name, const std::string &content)
        {
            const fs::path path = ctx.dir / name;
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw OutputError("cannot write " + path.string());
            out << content;
            out.close();
            if (!out)
                throw OutputError("failed while writing " + path.string());
            ctx.files.push_back(name);
        }

        void write_manifest(RunContext &ctx)
        {
            std::map<std::string, std::string> kv = flatten_config(ctx.config);
            kv["simulation.seed"] = std::to_string(ctx.seed);
            for (const auto &[k, v] : ctx.extra)
                kv[k] = v;

            std::ostringstream os;
            os << "rasense_version=" << RASENSE_VERSION << '\n';
            os << "command=" << command_name(ctx.command) << '\n';
            os << "seed_source=" << (ctx.seed_generated ? "generated" : "config") << '\n';
            for (const auto &[k, v] : kv)
                os << k << '=' << v << '\n';
            std::string files;
            for (std::size_t i = 0; i < ctx.files.size(); ++i)
                files += (i ? "," : "") + ctx.files[i];
            os << "files=" << files << '\n';
            write_file(ctx, std::string(command_name(ctx.command)) + ".manifest", os.str());
        }

        std::string list_repr(const std::vector<double> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? "," : "") + format_number(v[i]);
            return s;
        }

        std::string schemes_repr(const std::vector<Scheme> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? "," : "") + std::string(scheme_name(v[i]));
            return s;
        }

        std::string summarize_rows(const std::vector<SweepRow> &rows)
        {
            // Mean RMSE per scheme across all rows, in first-seen order.
            std::vector<Scheme> order;
            std::map<Scheme, std::pair<double, int>> acc;
            for (const auto &r : rows)
            {
                if (!acc.count(r.scheme))
                    order.push_back(r.scheme);
                acc[r.scheme].first += r.rmse_deg;
                acc[r.scheme].second += 1;
            }
            std::string s;
            for (Scheme sc : order)
                s += " " + std::string(scheme_name(sc)) + "=" +
                     format_number(acc[sc].first / acc[sc].second);
            return s;
        }

        void run_svc_curves(RunContext &ctx, std::ostream &out)
        {
            const ExperimentParams &p = ctx.config.params;
            const auto rows = svc_curves(ctx.config.svc_target, p, p.grid());
            std::ostringstream os;
            write_svc_csv(os, rows);
            const std::string name = "svc-curves.csv";
            write_file(ctx, name, os.str());

            const auto lobes = grating_lobe_angles(ctx.config.svc_target, p.geometry(Scheme::US_RA), -p.theta_max,
                                                   p.theta_max);
            std::string lobe_list;
            for (const auto &l : lobes)
                if (!l.is_true_direction())
                    lobe_list += (lobe_list.empty() ? "" : ",") + format_number(rad2deg(l.angle));
            ctx.extra["svc.grating_lobes_deg"] = lobe_list;
            out << "svc-curves: target " << format_number(rad2deg(ctx.config.svc_target)) << " deg, p="
                << format_number(p.directivity) << ", L=" << format_number(p.sparse_factor) << ", "
                << rows.size() << " rows, grating lobes [" << lobe_list << "] deg -> " << (ctx.dir / name).string()
                << '\n';
        }

        void run_sweep_command(RunContext &ctx, std::ostream &out)
        {
            const RunConfig &cfg = ctx.config;
            SweepSpec base;
            base.trials = cfg.trials;
            base.base_seed = ctx.seed;
            base.base = cfg.params;

            std::vector<SweepRow> rows;
            std::vector<double> values;
            std::vector<Scheme> schemes;

            switch (ctx.command)
            {
            case Command::rmse_vs_snr:
            {
                base.variable = SweepVariable::snr_db;
                values = cfg.sweep.values.value_or(std::vector<double>{-5, 0, 5, 10, 15, 20});
                schemes = cfg.sweep.schemes.value_or(
                    std::vector<Scheme>{std::begin(all_schemes), std::end(all_schemes)});
                base.values = values;
                base.schemes = schemes;
                rows = run_sweep(base);
                break;
            }
            case Command::rmse_vs_sparse:
            {
                base.variable = SweepVariable::sparse_factor;
                values = cfg.sweep.values.value_or(std::vector<double>{1, 2, 3, 4});
                for (double v : values)
                    if (v < 1.0)
                        throw ConfigError("sweep.values", "sparse factors must be >= 1");
                schemes = cfg.sweep.schemes.value_or(std::vector<Scheme>{Scheme::US_RA, Scheme::US_OA});
                const auto directivities = cfg.sweep.directivities.value_or(std::vector<double>{2, 4, 6});
                const double snr = cfg.sweep.snr_db.value_or(5.0);
                base.base.snr_db = snr;
                base.base.noise_power.reset();
                base.values = values;
                ctx.extra["sweep.directivities.effective"] = list_repr(directivities);
                ctx.extra["sweep.snr_db.effective"] = format_number(snr);

                std::vector<Scheme> ra, oa;
                for (Scheme s : schemes)
                    (uses_rotation(s) ? ra : oa).push_back(s);
                if (!ra.empty())
                    for (double p : directivities)
                    {
                        SweepSpec spec = base;
                        spec.base.directivity = p;
                        spec.schemes = ra;
                        auto part = run_sweep(spec);
                        rows.insert(rows.end(), part.begin(), part.end());
                    }
                if (!oa.empty())
                {
                    SweepSpec spec = base;
                    spec.schemes = oa;
                    auto part = run_sweep(spec);
                    rows.insert(rows.end(), part.begin(), part.end());
                }
                break;
            }
            case Command::rmse_vs_directivity:
            {
                base.variable = SweepVariable::directivity;
                values = cfg.sweep.values.value_or(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8});
                for (double v : values)
                    if (v < 0.0)
                        throw ConfigError("sweep.values", "directivities must be >= 0");
                schemes = cfg.sweep.schemes.value_or(std::vector<Scheme>{Scheme::US_RA, Scheme::UD_RA});
                if (cfg.sweep.snr_db)
                {
                    base.base.snr_db = *cfg.sweep.snr_db;
                    base.base.noise_power.reset();
                }
                base.values = values;
                base.schemes = schemes;
                rows = run_sweep(base);
                break;
            }
            default:
                break;
            }

            ctx.extra["sweep.values.effective"] = list_repr(values);
            ctx.extra["sweep.schemes.effective"] = schemes_repr(schemes);

            std::ostringstream os;
            write_sweep_csv(os, rows);
            const std::string name = std::string(command_name(ctx.command)) + ".csv";
            write_file(ctx, name, os.str());
            out << command_name(ctx.command) << ": " << rows.size() << " rows x " << cfg.trials
                << " trials, mean RMSE (deg)" << summarize_rows(rows) << " -> " << (ctx.dir / name).string() << '\n';
        }

        void run_single(RunContext &ctx, std::ostream &out)
        {
            const RunConfig &cfg = ctx.config;
            const TrialRunner runner(cfg.params);
            const AngularGrid grid = cfg.params.grid();
            const auto schemes =
                cfg.sweep.schemes.value_or(std::vector<Scheme>{std::begin(all_schemes), std::end(all_schemes)});
            ctx.extra["sweep.schemes.effective"] = schemes_repr(schemes);

            std::ostringstream table;
            table << "scheme,target_index,true_deg,est_deg,error_deg,peak_score,low_confidence\n";
            std::string summary;
            std::vector<std::pair<std::string, std::string>> dumps;

            for (Scheme sc : schemes)
            {
                const auto [res, est] = runner.run_with_estimate(sc, ctx.seed, true);
                for (std::size_t i = 0; i < res.est_doas.size(); ++i)
                {
                    const double t = rad2deg(res.true_doas[i]), e = rad2deg(res.est_doas[i]);
                    table << scheme_name(sc) << ',' << i + 1 << ',' << format_number(t) << ',' << format_number(e)
                          << ',' << format_number(e - t) << ',' << format_number(est.peak_scores[i]) << ','
                          << (est.low_confidence[i] ? 1 : 0) << '\n';
                }
                summary += " " + std::string(scheme_name(sc)) + "=[";
                for (std::size_t i = 0; i < res.est_doas.size(); ++i)
                    summary += (i ? " " : "") + format_number(std::round(rad2deg(res.est_doas[i]) * 1000.0) / 1000.0);
                summary += "]";

                const auto &pts = grid.points();
                if (uses_rotation(sc))
                {
                    const rmat &joint = *est.spectra, &arr = *est.array_spectra, &gain = *est.gain_spectra;
                    for (Eigen::Index k = 0; k < joint.rows(); ++k)
                    {
                        std::ostringstream spec;
                        spec << "theta_deg,array_svc,gain_svc,joint_svc\n";
                        for (std::size_t g = 0; g < pts.size(); ++g)
                        {
                            const auto gi = static_cast<Eigen::Index>(g);
                            spec << format_number(rad2deg(pts[g])) << ',' << format_number(arr(k, gi)) << ','
                                 << format_number(gain(k, gi)) << ',' << format_number(joint(k, gi)) << '\n';
                        }
                        dumps.emplace_back("single-run_spectrum_" + std::string(scheme_name(sc)) + "_target" +
                                               std::to_string(k + 1) + ".csv",
                                           spec.str());
                    }
                }
                else
                {
                    std::ostringstream spec;
                    spec << "theta_deg,music_pseudo_spectrum\n";
                    for (std::size_t g = 0; g < pts.size(); ++g)
                        spec << format_number(rad2deg(pts[g])) << ','
                             << format_number((*est.spectra)(0, static_cast<Eigen::Index>(g))) << '\n';
                    dumps.emplace_back("single-run_spectrum_" + std::string(scheme_name(sc)) + ".csv", spec.str());
                }
            }

            write_file(ctx, "single-run.csv", table.str());
            for (const auto &[name, content] : dumps)
                write_file(ctx, name, content);
            out << "single-run seed=" << ctx.seed << " estimates (deg):" << summary << " -> "
                << (ctx.dir / "single-run.csv").string() << '\n';
        }
    } // namespace

    std::string_view command_name(Command c)
    {
        switch (c)
        {
        case Command::svc_curves:
            return "svc-curves";
        case Command::rmse_vs_snr:
            return "rmse-vs-snr";
        case Command::rmse_vs_sparse:
            return "rmse-vs-sparse";
        case Command::rmse_vs_directivity:
            return "rmse-vs-directivity";
        case Command::single_run:
            return "single-run";
        }
        return "?";
    }

    std::optional<Command> parse_command(std::string_view name)
    {
        for (Command c : all_commands)
            if (command_name(c) == name)
                return c;
        return std::nullopt;
    }

    int dispatch(Command command, RunConfig config, std::ostream &out, std::ostream &err)
    {
        RunContext ctx{command, config, 0, false, fs::path(config.output_dir), {}, {}};
        if (config.seed)
            ctx.seed = *config.seed;
        else
        {
            std::random_device rd;
            ctx.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
            ctx.seed_generated = true;
        }

        std::error_code ec;
        fs::create_directories(ctx.dir, ec);
        if (ec || !fs::is_directory(ctx.dir))
        {
            err << "error: cannot create output directory " << ctx.dir.string() << ": " << ec.message() << '\n';
            return 2;
        }

        try
        {
            switch (command)
            {
            case Command::svc_curves:
                run_svc_curves(ctx, out);
                break;
            case Command::single_run:
                run_single(ctx, out);
                break;
            default:
                run_sweep_command(ctx, out);
                break;
            }
            write_manifest(ctx);
        }
        catch (const OutputError &e)
        {
            err << "error: " << e.what() << '\n';
            return 2;
        }
        catch (const ConfigError &e)
        {
            err << "error: " << e.what() << '\n';
            return 2;
        }
        catch (const std::invalid_argument &e)
        {
            err << "error: invalid parameters: " << e.what() << '\n';
            return 2;
        }
        return 0;
    }

} // namespace rasense

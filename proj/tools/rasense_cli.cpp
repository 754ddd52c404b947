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
#include "rasense/config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace
{
    std::string description(rasense::Command c)
    {
        switch (c)
        {
        case rasense::Command::svc_curves:
            return "Array, gain and joint correlation curves around one direction";
        case rasense::Command::rmse_vs_snr:
            return "RMSE of all four schemes across SNR";
        case rasense::Command::rmse_vs_sparse:
            return "RMSE across the sparse factor L for several directivities";
        case rasense::Command::rmse_vs_directivity:
            return "RMSE of the rotating schemes across the directivity factor p";
        case rasense::Command::single_run:
            return "One realization per scheme, with estimates and spectra";
        }
        return "";
    }
}

int main(int argc, char **argv)
{
    using namespace rasense;

    CLI::App app{"Rotatable-antenna DOA sensing simulator"};
    app.require_subcommand(1, 1);

    std::string config_path;
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<double> directivity, target_deg;

    for (Command c : all_commands)
    {
        CLI::App *sub = app.add_subcommand(std::string(command_name(c)), description(c));
        sub->add_option("-c,--config", config_path, "JSON config file")->check(CLI::ExistingFile);
        sub->add_option("-o,--output-dir", output_dir, "Directory for CSV and manifest files");
        sub->add_option("--seed", seed, "Base seed (overrides the config)");
        if (c != Command::svc_curves && c != Command::single_run)
            sub->add_option("--trials", trials, "Monte Carlo trials per sweep point")->check(CLI::PositiveNumber);
        sub->add_option("--directivity", directivity, "Directivity factor p (overrides the config)")
            ->check(CLI::NonNegativeNumber);
        if (c == Command::svc_curves)
            sub->add_option("--target-deg", target_deg, "Reference direction in degrees");
    }

    CLI11_PARSE(app, argc, argv);

    const CLI::App *sub = app.get_subcommands().front();
    const Command command = *parse_command(sub->get_name());

    RunConfig config;
    try
    {
        config = config_path.empty() ? parse_config("") : load_config(config_path);
        if (seed)
            config.seed = seed;
        if (output_dir)
            config.output_dir = *output_dir;
        if (trials)
            config.trials = *trials;
        if (directivity)
            config.params.directivity = *directivity;
        if (target_deg)
        {
            const double t = deg2rad(*target_deg);
            if (std::abs(t) > config.params.theta_max)
                throw ConfigError("svc.target_deg", "target lies outside the sensing range");
            config.svc_target = t;
        }
        config.params.validate();
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    return dispatch(command, std::move(config), std::cout, std::cerr);
}

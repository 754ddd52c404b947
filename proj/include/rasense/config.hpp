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

#ifndef RASENSE_CONFIG_HPP
#define RASENSE_CONFIG_HPP

#include "rasense/harness.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rasense
{
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(const std::string &key, const std::string &what)
            : std::runtime_error("config key '" + key + "': " + what), key_(key)
        {
        }
        const std::string &key() const { return key_; }

    private:
        std::string key_;
    };

    // Per-command sweep overrides; unset fields take the command's defaults.
    struct SweepConfig
    {
        std::optional<std::vector<double>> values;
        std::optional<std::vector<double>> directivities; // rmse-vs-sparse only
        std::optional<double> snr_db;
        std::optional<std::vector<Scheme>> schemes;
    };

    // Parsed run configuration. Angles are radians here; the document uses degrees.
    struct RunConfig
    {
        ExperimentParams params;
        std::optional<std::uint64_t> seed;
        int trials = 200;
        SweepConfig sweep;
        double svc_target = deg2rad(15.0);
        std::string output_dir = "results";
    };

    // Parses a JSON document (comments allowed). Empty input yields all defaults:
    // N = 8, L = 2, p = 3, M = 7, T = 20, SNR 10 dB, targets -20/15/45 deg, range +-60 deg.
    // Unknown keys and invalid values raise ConfigError naming the key.
    RunConfig parse_config(std::string_view text);
    RunConfig load_config(const std::string &path);

    // Canonical flat key=value listing of every setting (angles in degrees).
    std::map<std::string, std::string> flatten_config(const RunConfig &config);

} // namespace rasense

#endif

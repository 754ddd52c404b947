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

#ifndef RASENSE_COMMANDS_HPP
#define RASENSE_COMMANDS_HPP

#include "rasense/config.hpp"

#include <iosfwd>
#include <optional>
#include <string_view>

namespace rasense
{
    enum class Command
    {
        svc_curves,
        rmse_vs_snr,
        rmse_vs_sparse,
        rmse_vs_directivity,
        single_run,
    };

    inline constexpr Command all_commands[] = {Command::svc_curves, Command::rmse_vs_snr, Command::rmse_vs_sparse,
                                               Command::rmse_vs_directivity, Command::single_run};

    std::string_view command_name(Command c);
    std::optional<Command> parse_command(std::string_view name);

    // Runs a command: writes <output_dir>/<command>.csv (plus spectrum dumps for single-run)
    // and <output_dir>/<command>.manifest, prints a one-line summary to out.
    // Returns 0 on success, 2 on invalid parameters or unwritable output.
    int dispatch(Command command, RunConfig config, std::ostream &out, std::ostream &err);

} // namespace rasense

#endif

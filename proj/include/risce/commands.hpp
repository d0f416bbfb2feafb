// SPDX-License-Identifier: Apache-2.0
//
// risce: channel estimation for RIS-assisted multi-user uplinks
// Copyright (C) 2026 The risce authors
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

#pragma once

#include "risce/config.hpp"
#include "risce/validation.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace risce {

/// Exit codes shared by the subcommands.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// "# key=value" lines written ahead of every CSV: config hash, command, pilot overheads.
std::vector<std::pair<std::string, std::string>> output_metadata(const RunConfig &config,
                                                                 const std::string &command);

/// Overhead summary lines, one per training round, for the log stream.
std::vector<std::string> overhead_lines(const RunConfig &config);

/// One warning per training length T that is not a power of two.
std::vector<std::string> training_warnings(const RunConfig &config);

/// Closed-form curves. The CSV goes to config.out_path, diagnostics to `log`.
int cmd_theory(const RunConfig &config, std::ostream &log);

/// Monte Carlo sweep. `workers` = 0 takes RISCE_WORKERS or the OpenMP default.
int cmd_sweep(const RunConfig &config, std::ostream &log, Execution exec = Execution::Parallel,
              int workers = 0);

/// Pass/fail table on `out`; nonzero when any check fails.
int cmd_validate(const ValidationOptions &options, std::ostream &out);

/// Reference scenario, all estimators, N_G = 16.
RunConfig fig2_run_config();

/// Reference scenario, all estimators, N_G in {4, 8, 16, 32}.
RunConfig fig3_run_config();

/// Sweep plus closed forms for a figure configuration, with overheads on `log`.
int cmd_reproduce(const RunConfig &config, const std::string &name, std::ostream &log,
                  int workers = 0);

} // namespace risce

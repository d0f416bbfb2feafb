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

#include "risce/montecarlo.hpp"

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace risce {

/// Reference deployment: 8 BS antennas, 8 x 8 RIS, 4 UEs, blocked direct link.
Scenario reference_scenario();

/// Desk-scale deployment: 4 BS antennas, 4 x 4 RIS, 2 UEs.
Scenario desk_scenario();

struct RunConfig {
    std::string scenario_path;  ///< empty when built from defaults
    SweepConfig sweep;
    std::string out_path = "-"; ///< "-" writes to stdout
    int tau_c = 0;              ///< coherence interval in slots, 0 = unspecified
    double snr_min_db = -10.0;
    double snr_max_db = 40.0;
    double snr_step_db = 10.0;

    /// Rebuilds sweep.snr_db from the min/max/step fields.
    void apply_snr_grid();
};

/// Reference scenario, 5 estimators, N_G = 16, gamma from -10 to 40 dB in 10 dB steps.
RunConfig default_run_config();

/// Desk scenario, N_G = 4, 5000 trials, same SNR grid.
RunConfig desk_run_config();

/// Parses the sectioned key-value format over `base`. Errors name the source, line and key.
RunConfig parse_run_config(std::istream &in, const std::string &source_name, RunConfig base);
RunConfig load_run_config(const std::string &path, RunConfig base);

/// Evenly spaced points from min to max inclusive.
std::vector<double> snr_grid(double min_db, double max_db, double step_db);

/// Canonical text of every resolved parameter; equal configs give equal text.
std::string canonical_text(const RunConfig &config);

/// FNV-1a 64 of canonical_text, as 16 hex digits.
std::string config_hash(const RunConfig &config);

} // namespace risce

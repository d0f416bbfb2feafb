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

#include <iosfwd>
#include <string>
#include <vector>

namespace risce {

struct CheckResult {
    std::string id;    ///< e.g. "ES-1"
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct ValidationOptions {
    Scenario scenario = desk_scenario();
    int n_groups = 4;
    int trials = 5000;
    std::uint64_t seed = 20260101;
    std::vector<double> snr_db{-10.0, 0.0, 10.0, 20.0, 30.0, 40.0};
};

/// Identifiers and names of every check, in execution order.
std::vector<std::pair<std::string, std::string>> validation_catalog();

/// Runs every check. An exception inside a check marks it failed with the message as detail.
std::vector<CheckResult> run_validation(const ValidationOptions &options);

void print_validation_table(std::ostream &out, const std::vector<CheckResult> &results);

} // namespace risce

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

#include <iosfwd>
#include <string>
#include <vector>

namespace risce {

// CSV schema. Lines starting with '#' are metadata ("# key=value") and precede the header.
// Floating-point fields use 17 significant digits; non-finite values are written as nan/inf.

inline const std::vector<std::string> sweep_columns{
    "estimator", "n_groups", "snr_db",      "rho",         "trials",
    "nmse_empirical", "stderr", "nmse_theory", "nmse_floor", "seed"};

inline const std::vector<std::string> theory_columns{
    "estimator", "n_groups", "snr_db", "rho", "nmse_theory", "nmse_floor"};

std::string format_double(double x);

struct CsvTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_sweep_csv(std::ostream &out, const MseReport &report,
                     const std::vector<std::pair<std::string, std::string>> &metadata);
void write_theory_csv(std::ostream &out, const MseReport &report,
                      const std::vector<std::pair<std::string, std::string>> &metadata);

/// Throws ConfigError with the line number on a malformed table.
CsvTable read_csv(std::istream &in);

/// Parses a table written by write_sweep_csv; the header must match sweep_columns.
std::vector<MseRow> parse_sweep_csv(std::istream &in);

/// Parses a table written by write_theory_csv; the header must match theory_columns.
std::vector<MseRow> parse_theory_csv(std::istream &in);

} // namespace risce

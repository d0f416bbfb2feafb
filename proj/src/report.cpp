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

#include "risce/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace risce {

std::string format_double(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

void write_metadata(std::ostream &out,
                    const std::vector<std::pair<std::string, std::string>> &metadata)
{
    for (const auto &[k, v] : metadata)
        out << "# " << k << '=' << v << '\n';
}

void write_header(std::ostream &out, const std::vector<std::string> &cols)
{
    for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << cols[i];
    out << '\n';
}

double field_double(const std::string &s, std::size_t line)
{
    char *end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw ConfigError("csv line " + std::to_string(line) + ": bad number '" + s + "'");
    return x;
}

long long field_int(const std::string &s, std::size_t line)
{
    char *end = nullptr;
    const long long x = std::strtoll(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size())
        throw ConfigError("csv line " + std::to_string(line) + ": bad integer '" + s + "'");
    return x;
}

EstimatorKind field_estimator(const std::string &s, std::size_t line)
{
    const auto k = parse_estimator(s);
    if (!k)
        throw ConfigError("csv line " + std::to_string(line) + ": unknown estimator '" + s + "'");
    return *k;
}

CsvTable read_checked(std::istream &in, const std::vector<std::string> &expected)
{
    CsvTable t = read_csv(in);
    if (t.header != expected)
        throw ConfigError("csv: header does not match the expected schema");
    return t;
}

} // namespace

void write_sweep_csv(std::ostream &out, const MseReport &report,
                     const std::vector<std::pair<std::string, std::string>> &metadata)
{
    write_metadata(out, metadata);
    write_header(out, sweep_columns);
    for (const auto &r : report.rows) {
        out << to_string(r.estimator) << ',' << r.n_groups << ',' << format_double(r.snr_db) << ','
            << format_double(r.rho) << ',' << r.trials << ',' << format_double(r.nmse_empirical)
            << ',' << format_double(r.stderr_) << ',' << format_double(r.nmse_theory) << ','
            << format_double(r.nmse_floor) << ',' << r.seed << '\n';
    }
}

void write_theory_csv(std::ostream &out, const MseReport &report,
                      const std::vector<std::pair<std::string, std::string>> &metadata)
{
    write_metadata(out, metadata);
    write_header(out, theory_columns);
    for (const auto &r : report.rows) {
        out << to_string(r.estimator) << ',' << r.n_groups << ',' << format_double(r.snr_db) << ','
            << format_double(r.rho) << ',' << format_double(r.nmse_theory) << ','
            << format_double(r.nmse_floor) << '\n';
    }
}

CsvTable read_csv(std::istream &in)
{
    CsvTable t;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r')
            throw ConfigError("csv line " + std::to_string(n) + ": CRLF line ending");
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            std::string key = line.substr(1, eq == std::string::npos ? std::string::npos : eq - 1);
            const auto b = key.find_first_not_of(' ');
            key = b == std::string::npos ? std::string{} : key.substr(b);
            t.metadata.emplace_back(key, eq == std::string::npos ? "" : line.substr(eq + 1));
            continue;
        }
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ','))
            fields.push_back(f);
        if (line.back() == ',')
            fields.emplace_back();
        if (t.header.empty()) {
            t.header = std::move(fields);
        } else {
            if (fields.size() != t.header.size())
                throw ConfigError("csv line " + std::to_string(n) + ": expected " +
                                  std::to_string(t.header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
            t.rows.push_back(std::move(fields));
        }
    }
    if (t.header.empty())
        throw ConfigError("csv: missing header row");
    return t;
}

std::vector<MseRow> parse_sweep_csv(std::istream &in)
{
    const CsvTable t = read_checked(in, sweep_columns);
    std::vector<MseRow> rows;
    std::size_t line = 0;
    for (const auto &f : t.rows) {
        ++line;
        MseRow r;
        r.estimator = field_estimator(f[0], line);
        r.n_groups = static_cast<int>(field_int(f[1], line));
        r.snr_db = field_double(f[2], line);
        r.rho = field_double(f[3], line);
        r.trials = static_cast<int>(field_int(f[4], line));
        r.nmse_empirical = field_double(f[5], line);
        r.stderr_ = field_double(f[6], line);
        r.nmse_theory = field_double(f[7], line);
        r.nmse_floor = field_double(f[8], line);
        r.seed = std::strtoull(f[9].c_str(), nullptr, 10);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<MseRow> parse_theory_csv(std::istream &in)
{
    const CsvTable t = read_checked(in, theory_columns);
    std::vector<MseRow> rows;
    std::size_t line = 0;
    for (const auto &f : t.rows) {
        ++line;
        MseRow r;
        r.estimator = field_estimator(f[0], line);
        r.n_groups = static_cast<int>(field_int(f[1], line));
        r.snr_db = field_double(f[2], line);
        r.rho = field_double(f[3], line);
        r.nmse_theory = field_double(f[4], line);
        r.nmse_floor = field_double(f[5], line);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace risce

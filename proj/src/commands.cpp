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

#include "risce/commands.hpp"
#include "risce/report.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <functional>
#include <iostream>
#include <ostream>

namespace risce {

namespace {

// Writes through a binary stream so line endings stay LF on every platform.
void emit(const std::string &path, const std::function<void(std::ostream &)> &write)
{
    if (path.empty() || path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ConfigError("cannot open output file '" + path + "'");
    write(out);
    if (!out)
        throw ConfigError("failed writing output file '" + path + "'");
}

void report_failures(const MseReport &report, std::ostream &log)
{
    for (const auto &r : report.rows) {
        if (!r.error.empty())
            log << "warning: " << to_string(r.estimator) << " (N_G = " << r.n_groups
                << ", " << format_double(r.snr_db) << " dB): " << r.error << '\n';
        else if (r.failures > 0)
            log << "warning: " << to_string(r.estimator) << " (N_G = " << r.n_groups << ", "
                << format_double(r.snr_db) << " dB): " << r.failures << " failed trials\n";
        if (r.degenerate)
            log << "note: " << to_string(r.estimator) << " (N_G = " << r.n_groups
                << ") inner Gram matrix rank-deficient; pseudo-inverse used\n";
    }
}

} // namespace

std::vector<std::pair<std::string, std::string>> output_metadata(const RunConfig &config,
                                                                 const std::string &command)
{
    const SystemGeometry &g = config.sweep.scenario.geometry;
    const int K = g.n_users(), N = g.n_elements();
    std::vector<std::pair<std::string, std::string>> md{
        {"config_hash", config_hash(config)},
        {"command", command},
        {"K", std::to_string(K)},
        {"N", std::to_string(N)},
        {"M", std::to_string(g.m_antennas)},
        {"tau_p_full", std::to_string(pilot_overhead(K, N, N).full)},
    };
    for (int ng : config.sweep.n_groups)
        md.emplace_back("tau_p_ng" + std::to_string(ng), std::to_string(pilot_overhead(K, N, ng).grouped));
    if (config.tau_c > 0)
        md.emplace_back("tau_c", std::to_string(config.tau_c));
    md.emplace_back("normalized", config.sweep.normalized ? "true" : "false");
    return md;
}

std::vector<std::string> overhead_lines(const RunConfig &config)
{
    const SystemGeometry &g = config.sweep.scenario.geometry;
    const int K = g.n_users(), N = g.n_elements();
    std::vector<std::string> out;
    auto line = [&](const std::string &label, int tau) {
        std::string s = label + ": tau_p = " + std::to_string(tau);
        if (config.tau_c > 0) {
            s += " of tau_c = " + std::to_string(config.tau_c);
            if (tau > config.tau_c)
                s += " (exceeds the coherence interval)";
        }
        out.push_back(std::move(s));
    };
    line("full training K(N+1), N = " + std::to_string(N), pilot_overhead(K, N, N).full);
    for (int ng : config.sweep.n_groups)
        line("grouped training K(N_G+1), N_G = " + std::to_string(ng), pilot_overhead(K, N, ng).grouped);
    return out;
}

std::vector<std::string> training_warnings(const RunConfig &config)
{
    const int N = config.sweep.scenario.geometry.n_elements();
    std::vector<int> lengths;
    for (EstimatorKind kind : config.sweep.estimators) {
        if (uses_grouped_training(kind))
            for (int ng : config.sweep.n_groups)
                lengths.push_back(ng + 1);
        else
            lengths.push_back(N + 1);
    }
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
    std::vector<std::string> out;
    for (int T : lengths)
        if (!std::has_single_bit(static_cast<unsigned>(T)))
            out.push_back("warning: T = " + std::to_string(T) +
                          " is not a power of two; the stacked training rows are not guaranteed orthogonal");
    return out;
}

int cmd_theory(const RunConfig &config, std::ostream &log)
{
    for (const auto &w : training_warnings(config))
        log << w << '\n';
    const MseReport report = theory_curves(config.sweep);
    report_failures(report, log);
    const auto md = output_metadata(config, "theory");
    emit(config.out_path, [&](std::ostream &o) { write_theory_csv(o, report, md); });
    log << "config_hash " << config_hash(config) << '\n';
    return exit_ok;
}

int cmd_sweep(const RunConfig &config, std::ostream &log, Execution exec, int workers)
{
    for (const auto &w : training_warnings(config))
        log << w << '\n';
    const MseReport report = run_sweep(config.sweep, exec, workers);
    report_failures(report, log);
    const auto md = output_metadata(config, "sweep");
    emit(config.out_path, [&](std::ostream &o) { write_sweep_csv(o, report, md); });
    log << "config_hash " << config_hash(config) << ", " << config.sweep.n_trials << " trials x "
        << config.sweep.snr_db.size() << " SNR points, wall time " << report.wall_time_s << " s\n";
    return exit_ok;
}

int cmd_validate(const ValidationOptions &options, std::ostream &out)
{
    const auto results = run_validation(options);
    print_validation_table(out, results);
    for (const auto &r : results)
        if (!r.passed)
            return exit_failure;
    return exit_ok;
}

RunConfig fig2_run_config()
{
    RunConfig c = default_run_config();
    c.sweep.n_groups = {16};
    return c;
}

RunConfig fig3_run_config()
{
    RunConfig c = default_run_config();
    c.sweep.n_groups = {4, 8, 16, 32};
    return c;
}

int cmd_reproduce(const RunConfig &config, const std::string &name, std::ostream &log, int workers)
{
    for (const auto &l : overhead_lines(config))
        log << l << '\n';
    for (const auto &w : training_warnings(config))
        log << w << '\n';
    const MseReport report = run_sweep(config.sweep, Execution::Parallel, workers);
    report_failures(report, log);
    const auto md = output_metadata(config, name);
    emit(config.out_path, [&](std::ostream &o) { write_sweep_csv(o, report, md); });
    log << "config_hash " << config_hash(config) << ", wall time " << report.wall_time_s << " s\n";
    return exit_ok;
}

} // namespace risce

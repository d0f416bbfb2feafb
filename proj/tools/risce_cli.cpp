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

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace risce;

struct Overrides {
    std::string config_path;
    bool desk = false;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> snr_min, snr_max, snr_step;
    std::optional<std::string> groups;
    std::optional<std::string> estimators;
    std::optional<std::string> out;
};

void add_common(CLI::App *cmd, Overrides &o, bool sweep_flags)
{
    cmd->add_option("--config", o.config_path, "scenario file (sections [scenario], [sweep], [output])")
        ->check(CLI::ExistingFile);
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per SNR point")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "base seed");
    cmd->add_option("--groups", o.groups, "comma-separated N_G values, e.g. 4,8");
    if (!sweep_flags)
        return;
    cmd->add_flag("--desk", o.desk, "start from the desk-scale scenario instead of the reference one");
    cmd->add_option("--snr-min-db", o.snr_min, "first SNR point, dB");
    cmd->add_option("--snr-max-db", o.snr_max, "last SNR point, dB");
    cmd->add_option("--snr-step-db", o.snr_step, "SNR step, dB");
    cmd->add_option("--estimators", o.estimators,
                    "comma-separated subset of LS,LMMSE,GroupingLS,GroupingLMMSE,CorrelatedGroupingLMMSE");
    cmd->add_option("--out", o.out, "output CSV path, '-' for stdout");
}

std::vector<int> parse_groups(const std::string &text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 1)
                throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception &) {
            throw ConfigError("--groups: bad value '" + tok + "'");
        }
    }
    if (out.empty())
        throw ConfigError("--groups: no values given");
    return out;
}

std::vector<EstimatorKind> parse_estimator_list(const std::string &text)
{
    std::vector<EstimatorKind> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty())
            continue;
        const auto k = parse_estimator(tok);
        if (!k)
            throw ConfigError("--estimators: unknown estimator '" + tok + "'");
        out.push_back(*k);
    }
    if (out.empty())
        throw ConfigError("--estimators: the estimator list is empty");
    return out;
}

RunConfig resolve(RunConfig base, const Overrides &o)
{
    if (o.desk)
        base = desk_run_config();
    if (!o.config_path.empty())
        base = load_run_config(o.config_path, std::move(base));
    if (o.trials)
        base.sweep.n_trials = *o.trials;
    if (o.seed)
        base.sweep.base_seed = *o.seed;
    if (o.snr_min)
        base.snr_min_db = *o.snr_min;
    if (o.snr_max)
        base.snr_max_db = *o.snr_max;
    if (o.snr_step)
        base.snr_step_db = *o.snr_step;
    base.apply_snr_grid();
    if (o.groups)
        base.sweep.n_groups = parse_groups(*o.groups);
    if (o.estimators)
        base.sweep.estimators = parse_estimator_list(*o.estimators);
    if (o.out)
        base.out_path = *o.out;
    base.sweep.validate();
    return base;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"risce: channel estimation for RIS-assisted multi-user uplinks"};
    app.require_subcommand(1);

    Overrides theory_o, sweep_o, fig2_o, fig3_o, validate_o;
    auto *theory = app.add_subcommand("theory", "closed-form error curves and high-power floors");
    add_common(theory, theory_o, true);
    auto *sweep = app.add_subcommand("sweep", "Monte Carlo sweep with closed forms alongside");
    add_common(sweep, sweep_o, true);
    auto *fig2 = app.add_subcommand("reproduce-fig2", "error versus SNR at N_G = 16, reference scenario");
    add_common(fig2, fig2_o, true);
    auto *fig3 = app.add_subcommand("reproduce-fig3", "error versus SNR for N_G in {4, 8, 16, 32}");
    add_common(fig3, fig3_o, true);
    auto *validate = app.add_subcommand("validate", "run the invariant checks and print a pass/fail table");
    add_common(validate, validate_o, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*theory)
            return cmd_theory(resolve(default_run_config(), theory_o), std::cerr);
        if (*sweep)
            return cmd_sweep(resolve(default_run_config(), sweep_o), std::cerr);
        if (*fig2)
            return cmd_reproduce(resolve(fig2_run_config(), fig2_o), "reproduce-fig2", std::cerr);
        if (*fig3)
            return cmd_reproduce(resolve(fig3_run_config(), fig3_o), "reproduce-fig3", std::cerr);
        if (*validate) {
            ValidationOptions opt;
            if (!validate_o.config_path.empty()) {
                RunConfig base = desk_run_config();
                opt.scenario = load_run_config(validate_o.config_path, base).sweep.scenario;
            }
            if (validate_o.trials)
                opt.trials = *validate_o.trials;
            if (validate_o.seed)
                opt.seed = *validate_o.seed;
            if (validate_o.groups)
                opt.n_groups = parse_groups(*validate_o.groups).front();
            return cmd_validate(opt, std::cout);
        }
    } catch (const ConfigError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const DomainError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failure;
    }
    return exit_usage;
}

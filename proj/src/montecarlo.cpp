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

#include "risce/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

namespace risce {

void Scenario::validate() const
{
    geometry.validate();
    fading.validate(geometry.n_users());
    if (!(sigma_w2 >= 0.0) || !std::isfinite(sigma_w2))
        throw ConfigError("scenario: noise power must be finite and >= 0");
}

Grouping scenario_grouping(const Scenario &scenario, int n_groups)
{
    const SystemGeometry &g = scenario.geometry;
    const int N = g.n_elements();
    if (n_groups < 1 || n_groups > N || N % n_groups != 0)
        throw ConfigError("n_groups = " + std::to_string(n_groups) + " must divide N = " +
                          std::to_string(N));
    if (scenario.layout == GroupLayout::Contiguous)
        return Grouping::contiguous(N, n_groups);

    const int size = N / n_groups;
    int best_x = 0;
    for (int tx = 1; tx <= size; ++tx) {
        if (size % tx != 0 || g.n_x % tx != 0 || g.n_y % (size / tx) != 0)
            continue;
        const int ty = size / tx;
        if (best_x == 0 || std::abs(tx - ty) < std::abs(best_x - size / best_x) ||
            (std::abs(tx - ty) == std::abs(best_x - size / best_x) && tx > best_x))
            best_x = tx;
    }
    if (best_x == 0)
        return Grouping::contiguous(N, n_groups);
    return Grouping::grid_tiles(g.n_x, g.n_y, best_x, size / best_x);
}

void SweepConfig::validate() const
{
    scenario.validate();
    if (estimators.empty())
        throw ConfigError("sweep: estimator list is empty");
    if (snr_db.empty())
        throw ConfigError("sweep: no SNR points");
    if (n_trials < 1)
        throw ConfigError("sweep: trials must be >= 1");
    const bool any_grouped = std::any_of(estimators.begin(), estimators.end(), uses_grouped_training);
    if (any_grouped && n_groups.empty())
        throw ConfigError("sweep: grouped estimators need at least one n_groups value");
    for (int ng : n_groups)
        scenario_grouping(scenario, ng);
    for (double x : snr_db)
        if (!std::isfinite(x))
            throw ConfigError("sweep: SNR points must be finite");
    if (axis == SnrAxis::Gamma && !(scenario.sigma_w2 > 0.0))
        throw ConfigError("sweep: an SNR axis in gamma needs a positive noise power");
}

double pilot_power(const SweepConfig &config, const ChannelStatistics &stats, double snr_db)
{
    const double lin = std::pow(10.0, snr_db / 10.0);
    if (config.axis == SnrAxis::Rho)
        return lin;
    const double mean_g =
        std::accumulate(stats.rho_g.begin(), stats.rho_g.end(), 0.0) / stats.n_users();
    const double per_unit = stats.n_users() * stats.n_elements() * stats.rho_A * mean_g;
    return lin * config.scenario.sigma_w2 / per_unit;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t snr_index, std::uint64_t trial_index,
                          std::uint64_t stream)
{
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(base);
    h = mix(h ^ snr_index);
    h = mix(h ^ trial_index);
    return mix(h ^ stream);
}

SweepModel build_sweep_model(const SweepConfig &config, const ChannelStatistics &stats)
{
    SweepModel model;
    model.stats = stats;
    const int N = stats.n_elements();
    const int K = stats.n_users();
    auto round_for = [&](int ng) -> SweepModel::Round & {
        for (auto &r : model.rounds)
            if (r.n_groups == ng)
                return r;
        SweepModel::Round r;
        r.n_groups = ng;
        r.grouping = scenario_grouping(config.scenario, ng);
        model.rounds.push_back(std::move(r));
        return model.rounds.back();
    };
    for (EstimatorKind kind : config.estimators) {
        const std::vector<int> settings = uses_grouped_training(kind) ? config.n_groups : std::vector<int>{N};
        for (int ng : settings) {
            auto &r = round_for(ng);
            if (std::find(r.kinds.begin(), r.kinds.end(), kind) == r.kinds.end())
                r.kinds.push_back(kind);
        }
    }

    const long n_rounds = static_cast<long>(model.rounds.size());
    for (auto &r : model.rounds)
        r.banks.resize(static_cast<std::size_t>(K));
    std::string first_error;
    const long tasks = n_rounds * K;
#pragma omp parallel for schedule(dynamic, 1) num_threads(default_workers())
    for (long t = 0; t < tasks; ++t) {
        auto &r = model.rounds[static_cast<std::size_t>(t / K)];
        const int k = static_cast<int>(t % K);
        try {
            const TrainingConfig tc = make_training_config(r.grouping, K, 0, std::vector<double>(K, 1.0),
                                                           config.scenario.sigma_w2);
            r.banks[static_cast<std::size_t>(k)].emplace(stats, k, tc, r.kinds);
        } catch (const std::exception &e) {
#pragma omp critical(risce_model_error)
            if (first_error.empty())
                first_error = e.what();
        }
    }
    if (!first_error.empty())
        throw NumericalError("building estimator designs: " + first_error);
    return model;
}

SnrPlan plan_snr_point(const SweepConfig &config, const SweepModel &model, double snr_db,
                       bool with_designs)
{
    const ChannelStatistics &stats = model.stats;
    const int K = stats.n_users();
    const int N = stats.n_elements();

    SnrPlan plan;
    plan.snr_db = snr_db;
    plan.rho = pilot_power(config, stats, snr_db);
    const std::vector<double> rho(K, plan.rho);
    for (const auto &r : model.rounds)
        plan.rounds.push_back({r.n_groups, make_training_config(r.grouping, K, 0, rho, config.scenario.sigma_w2)});

    for (EstimatorKind kind : config.estimators) {
        const std::vector<int> settings = uses_grouped_training(kind) ? config.n_groups : std::vector<int>{N};
        for (int ng : settings) {
            SnrPlan::Cell cell;
            cell.kind = kind;
            cell.n_groups = ng;
            while (model.rounds[cell.round].n_groups != ng)
                ++cell.round;
            const auto &round = model.rounds[cell.round];
            try {
                for (int k = 0; k < K; ++k) {
                    const EstimatorBank &bank = *round.banks[static_cast<std::size_t>(k)];
                    EstimatorBank::Evaluation ev = bank.evaluate(kind, plan.rho, with_designs);
                    const double prior = bank.prior_trace();
                    const double scale = config.normalized ? 1.0 / prior : 1.0;
                    cell.degenerate = cell.degenerate || ev.degenerate || bank.floor_degenerate(kind);
                    if (with_designs)
                        cell.design.push_back(std::move(ev.design));
                    cell.prior_trace.push_back(prior);
                    cell.raw_trace.push_back(ev.mse);
                    cell.theory.push_back(ev.mse * scale);
                    cell.floor += bank.floor(kind) * scale / K;
                }
            } catch (const std::exception &e) {
                cell.design.clear();
                cell.error = e.what();
            }
            plan.cells.push_back(std::move(cell));
        }
    }
    return plan;
}

SnrPlan plan_snr_point(const SweepConfig &config, const ChannelStatistics &stats, double snr_db)
{
    return plan_snr_point(config, build_sweep_model(config, stats), snr_db, true);
}

TrialOutcome run_trial(const SweepConfig &config, const ChannelSampler &sampler,
                       const SnrPlan &plan, std::size_t snr_index, std::size_t trial_index)
{
    const ChannelStatistics &stats = sampler.statistics();
    const int K = stats.n_users();

    Rng channel_rng(derive_seed(config.base_seed, snr_index, trial_index, 0));
    const ChannelRealization real = sampler.sample(channel_rng);

    std::vector<ObservationSet> obs;
    std::vector<std::uint64_t> obs_digest;
    obs.reserve(plan.rounds.size());
    for (const auto &round : plan.rounds) {
        Rng noise_rng(derive_seed(config.base_seed, snr_index, trial_index,
                                  1 + static_cast<std::uint64_t>(round.n_groups)));
        obs.push_back(synthesize_received(real, stats, round.training, noise_rng));
        obs_digest.push_back(digest(obs.back().y_combined));
    }

    TrialOutcome out;
    out.channel_digest = digest(real.s);
    const std::size_t n = plan.cells.size();
    out.sq_error.assign(n, 0.0);
    out.per_user.assign(n, std::vector<double>(K, 0.0));
    out.failed.assign(n, 0);
    out.input_digest.assign(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
        const auto &cell = plan.cells[c];
        out.input_digest[c] = obs_digest[cell.round];
        if (!cell.error.empty()) {
            out.failed[c] = 1;
            continue;
        }
        double sum = 0.0;
        for (int k = 0; k < K; ++k) {
            const cvec s_hat = cell.design[k].apply(obs[cell.round].y_combined[k]);
            double e = (real.s[k] - s_hat).squaredNorm();
            if (config.normalized)
                e /= cell.prior_trace[k];
            out.per_user[c][k] = e;
            sum += e;
        }
        out.sq_error[c] = sum / K;
        if (!std::isfinite(out.sq_error[c]))
            out.failed[c] = 1;
    }
    return out;
}

int default_workers()
{
    if (const char *env = std::getenv("RISCE_WORKERS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 4096)
            return static_cast<int>(v);
        throw ConfigError(std::string("RISCE_WORKERS must be a positive integer, got '") + env + "'");
    }
    return std::max(1, omp_get_max_threads());
}

namespace {

std::vector<TrialOutcome> run_trials_serial(const SweepConfig &config, const ChannelSampler &sampler,
                                            const SnrPlan &plan, std::size_t snr_index)
{
    std::vector<TrialOutcome> out(static_cast<std::size_t>(config.n_trials));
    for (std::size_t t = 0; t < out.size(); ++t)
        out[t] = run_trial(config, sampler, plan, snr_index, t);
    return out;
}

std::vector<TrialOutcome> run_trials_parallel(const SweepConfig &config,
                                              const ChannelSampler &sampler, const SnrPlan &plan,
                                              std::size_t snr_index, int workers)
{
    const long n = config.n_trials;
    std::vector<TrialOutcome> out(static_cast<std::size_t>(n));
    std::string first_error;
#pragma omp parallel for schedule(dynamic, 8) num_threads(workers)
    for (long t = 0; t < n; ++t) {
        try {
            out[static_cast<std::size_t>(t)] =
                run_trial(config, sampler, plan, snr_index, static_cast<std::size_t>(t));
        } catch (const std::exception &e) {
#pragma omp critical(risce_trial_error)
            if (first_error.empty())
                first_error = e.what();
        }
    }
    if (!first_error.empty())
        throw NumericalError("trial failed: " + first_error);
    return out;
}

MseRow theory_row(const SweepConfig &config, const SnrPlan &plan, const SnrPlan::Cell &cell)
{
    MseRow row;
    row.estimator = cell.kind;
    row.n_groups = cell.n_groups;
    row.snr_db = plan.snr_db;
    row.rho = plan.rho;
    row.seed = config.base_seed;
    row.error = cell.error;
    row.degenerate = cell.degenerate;
    if (!cell.error.empty()) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.nmse_theory = row.nmse_floor = row.trace_theory = nan;
        return row;
    }
    const double K = static_cast<double>(cell.theory.size());
    row.per_user_theory = cell.theory;
    row.nmse_theory = std::accumulate(cell.theory.begin(), cell.theory.end(), 0.0) / K;
    row.trace_theory = std::accumulate(cell.raw_trace.begin(), cell.raw_trace.end(), 0.0) / K;
    row.nmse_floor = cell.floor;
    return row;
}

// Ordered reduction in trial index order, independent of how the trials were scheduled.
void reduce_into(MseRow &row, const std::vector<TrialOutcome> &trials, std::size_t cell, int K)
{
    std::vector<double> v;
    v.reserve(trials.size());
    std::vector<double> per_user(K, 0.0);
    for (const auto &t : trials) {
        if (t.failed[cell]) {
            ++row.failures;
            continue;
        }
        v.push_back(t.sq_error[cell]);
        for (int k = 0; k < K; ++k)
            per_user[k] += t.per_user[cell][k];
    }
    row.trials = static_cast<int>(v.size());
    if (v.empty()) {
        row.nmse_empirical = row.stderr_ = std::numeric_limits<double>::quiet_NaN();
        return;
    }
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    row.nmse_empirical = mean;
    row.stderr_ = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
    for (auto &p : per_user)
        p /= n;
    row.per_user_empirical = std::move(per_user);
}

} // namespace

MseReport run_sweep(const SweepConfig &config, Execution exec, int workers)
{
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    if (workers <= 0)
        workers = default_workers();

    const ChannelSampler sampler(build_statistics(config.scenario.geometry, config.scenario.fading));
    const int K = sampler.statistics().n_users();
    const SweepModel model = build_sweep_model(config, sampler.statistics());
    MseReport report;
    for (std::size_t si = 0; si < config.snr_db.size(); ++si) {
        const SnrPlan plan = plan_snr_point(config, model, config.snr_db[si]);
        const auto trials = exec == Execution::Serial
                                ? run_trials_serial(config, sampler, plan, si)
                                : run_trials_parallel(config, sampler, plan, si, workers);
        for (std::size_t c = 0; c < plan.cells.size(); ++c) {
            MseRow row = theory_row(config, plan, plan.cells[c]);
            reduce_into(row, trials, c, K);
            report.rows.push_back(std::move(row));
        }
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

MseReport theory_curves(const SweepConfig &config)
{
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const SweepModel model =
        build_sweep_model(config, build_statistics(config.scenario.geometry, config.scenario.fading));
    MseReport report;
    for (double snr : config.snr_db) {
        const SnrPlan plan = plan_snr_point(config, model, snr, false);
        for (const auto &cell : plan.cells)
            report.rows.push_back(theory_row(config, plan, cell));
    }
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace risce

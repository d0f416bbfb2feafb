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

#include "risce/estimator_bank.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace risce {

/// Geometry, fading and receiver noise of one simulated deployment.
struct Scenario {
    SystemGeometry geometry;
    FadingParams fading;
    double sigma_w2 = 1.2589254117941661e-12;  ///< watts
    GroupLayout layout = GroupLayout::Contiguous;

    void validate() const;
};

/// Groups of adjacent elements. Contiguous (default) follows the element numbering; GridTiles
/// picks the most nearly square tile that divides the RIS grid.
Grouping scenario_grouping(const Scenario &scenario, int n_groups);

enum class SnrAxis {
    Gamma,  ///< received SNR gamma = rho K N rho_A mean_k(rho_g,k) / sigma_w2, in dB
    Rho,    ///< pilot power rho in dBW
};

struct SweepConfig {
    Scenario scenario;
    std::vector<EstimatorKind> estimators{all_estimators.begin(), all_estimators.end()};
    std::vector<double> snr_db;
    SnrAxis axis = SnrAxis::Gamma;
    int n_trials = 1000;
    std::vector<int> n_groups;
    std::uint64_t base_seed = 1;
    /// Divide squared errors and traces by Tr[C_ss]; false reports raw traces.
    bool normalized = true;

    void validate() const;
};

/// Pilot power (common to all users) that puts the sweep at `snr_db`.
double pilot_power(const SweepConfig &config, const ChannelStatistics &stats, double snr_db);

/// splitmix64 finalizer over (base, snr index, trial index, stream).
/// Stream 0 draws the channel; stream 1 + N_G draws the noise of the training round with
/// N_G groups (N_G = N for the ungrouped estimators).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t snr_index, std::uint64_t trial_index,
                          std::uint64_t stream);

struct MseRow {
    EstimatorKind estimator = EstimatorKind::LMMSE;
    int n_groups = 0;
    double snr_db = 0.0;
    double rho = 0.0;
    int trials = 0;    ///< successful trials
    int failures = 0;  ///< trials whose estimate could not be formed
    double nmse_empirical = 0.0;
    double stderr_ = 0.0;
    double nmse_theory = 0.0;
    double nmse_floor = 0.0;
    double trace_theory = 0.0;  ///< raw Tr of the error covariance, averaged over users
    bool degenerate = false;
    std::uint64_t seed = 0;
    std::vector<double> per_user_empirical;
    std::vector<double> per_user_theory;
    std::string error;  ///< non-empty when the design itself failed
};

struct MseReport {
    std::vector<MseRow> rows;
    double wall_time_s = 0.0;
};

/// Pilot-power-independent state of a sweep: one training round per distinct N_G (N_G = N
/// for the ungrouped estimators) and one EstimatorBank per round and user.
struct SweepModel {
    struct Round {
        int n_groups = 0;
        Grouping grouping;
        std::vector<EstimatorKind> kinds;
        std::vector<std::optional<EstimatorBank>> banks;  ///< per user
    };
    ChannelStatistics stats;
    std::vector<Round> rounds;
};

/// Banks are built in parallel over (round, user); the result does not depend on scheduling.
SweepModel build_sweep_model(const SweepConfig &config, const ChannelStatistics &stats);

/// Everything that is fixed for one SNR point: training rounds and per-user designs.
struct SnrPlan {
    struct Round {
        int n_groups = 0;
        TrainingConfig training;
    };
    struct Cell {
        EstimatorKind kind = EstimatorKind::LMMSE;
        int n_groups = 0;
        std::size_t round = 0;
        std::vector<AffineEstimator> design;  ///< per user, empty for theory-only plans
        std::vector<double> prior_trace;      ///< Tr[C_ss,k]
        std::vector<double> theory;           ///< per user, normalized unless configured raw
        std::vector<double> raw_trace;
        double floor = 0.0;
        bool degenerate = false;
        std::string error;
    };
    double snr_db = 0.0;
    double rho = 0.0;
    std::vector<Round> rounds;
    std::vector<Cell> cells;
};

/// Designs and closed forms of every (estimator, N_G) cell at one SNR point.
SnrPlan plan_snr_point(const SweepConfig &config, const SweepModel &model, double snr_db,
                       bool with_designs = true);
SnrPlan plan_snr_point(const SweepConfig &config, const ChannelStatistics &stats, double snr_db);

struct TrialOutcome {
    std::vector<double> sq_error;            ///< per cell, averaged over users
    std::vector<std::vector<double>> per_user;  ///< per cell, per user
    std::vector<std::uint8_t> failed;        ///< per cell
    std::vector<std::uint64_t> input_digest; ///< per cell, digest of the observations consumed
    std::uint64_t channel_digest = 0;
};

/// One channel draw and one observation set per training round, shared by every cell.
TrialOutcome run_trial(const SweepConfig &config, const ChannelSampler &sampler,
                       const SnrPlan &plan, std::size_t snr_index, std::size_t trial_index);

enum class Execution { Serial, Parallel };

/// Worker count from RISCE_WORKERS, falling back to the OpenMP default.
int default_workers();

/// Rows ordered by SNR point, then by the estimator list, then by n_groups.
/// Identical for either execution mode and any worker count (wall time aside).
MseReport run_sweep(const SweepConfig &config, Execution exec = Execution::Parallel,
                    int workers = 0);

/// Closed-form rows only (trials = 0).
MseReport theory_curves(const SweepConfig &config);

} // namespace risce

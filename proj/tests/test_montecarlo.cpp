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

#include "support.hpp"

#include <doctest.h>

#include <set>
#include <sstream>

using namespace risce;
using namespace risce::testing;

namespace {

SweepConfig small_sweep(int trials)
{
    SweepConfig c = desk_run_config().sweep;
    c.n_trials = trials;
    c.snr_db = {0.0, 30.0};
    return c;
}

std::string csv(const MseReport &r)
{
    std::ostringstream o;
    write_sweep_csv(o, r, {});
    return o.str();
}

} // namespace

TEST_CASE("seed derivation is pure and separates every coordinate")
{
    CHECK(derive_seed(1, 2, 3, 4) == derive_seed(1, 2, 3, 4));
    std::set<std::uint64_t> seen;
    for (std::uint64_t b = 0; b < 3; ++b)
        for (std::uint64_t s = 0; s < 4; ++s)
            for (std::uint64_t t = 0; t < 50; ++t)
                for (std::uint64_t st = 0; st < 3; ++st)
                    seen.insert(derive_seed(b, s, t, st));
    CHECK(seen.size() == 3u * 4u * 50u * 3u);
}

TEST_CASE("SNR axis: gamma definition and the rho axis")
{
    SweepConfig c = small_sweep(1);
    const ChannelStatistics &st = desk_stats();
    double mean_g = 0.0;
    for (double g : st.rho_g)
        mean_g += g / st.n_users();
    const double rho = pilot_power(c, st, 20.0);
    const double gamma = rho * st.n_users() * st.n_elements() * st.rho_A * mean_g / c.scenario.sigma_w2;
    CHECK(10.0 * std::log10(gamma) == doctest::Approx(20.0).epsilon(1e-12));
    c.axis = SnrAxis::Rho;
    CHECK(pilot_power(c, st, -10.0) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("sweep configuration validation")
{
    SweepConfig c = small_sweep(10);
    c.estimators.clear();
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_sweep(10);
    c.snr_db.clear();
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_sweep(0);
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = small_sweep(10);
    c.n_groups.clear();
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.estimators = {EstimatorKind::LS, EstimatorKind::LMMSE};
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("serial and parallel kernels produce identical reports")
{
    const SweepConfig c = small_sweep(300);
    const std::string ref = csv(run_sweep(c, Execution::Serial, 1));
    CHECK(csv(run_sweep(c, Execution::Serial, 1)) == ref);
    for (int w : {1, 2, 5})
        CHECK(csv(run_sweep(c, Execution::Parallel, w)) == ref);
    SweepConfig other = c;
    other.base_seed = 2;
    CHECK(csv(run_sweep(other, Execution::Serial, 1)) != ref);
}

TEST_CASE("paired trials: every estimator of a training round sees the same observations")
{
    SweepConfig c = small_sweep(1);
    c.n_groups = {2, 4};
    const ChannelSampler sampler(desk_stats());
    const SnrPlan plan = plan_snr_point(c, desk_stats(), 10.0);
    const TrialOutcome a = run_trial(c, sampler, plan, 0, 7);
    const TrialOutcome b = run_trial(c, sampler, plan, 0, 7);
    CHECK(a.input_digest == b.input_digest);
    CHECK(a.sq_error == b.sq_error);
    for (std::size_t i = 0; i < plan.cells.size(); ++i)
        for (std::size_t j = 0; j < plan.cells.size(); ++j)
            if (plan.cells[i].round == plan.cells[j].round)
                CHECK(a.input_digest[i] == a.input_digest[j]);
            else
                CHECK(a.input_digest[i] != a.input_digest[j]);
    CHECK(run_trial(c, sampler, plan, 0, 8).channel_digest != a.channel_digest);
}

TEST_CASE("row statistics: mean and sd / sqrt(n) of the per-trial errors")
{
    SweepConfig c = small_sweep(200);
    c.snr_db = {10.0};
    const ChannelSampler sampler(desk_stats());
    const SnrPlan plan = plan_snr_point(c, desk_stats(), 10.0);
    const MseReport report = run_sweep(c, Execution::Serial, 1);
    REQUIRE(report.rows.size() == plan.cells.size());
    for (std::size_t cell = 0; cell < plan.cells.size(); ++cell) {
        std::vector<double> v;
        for (int t = 0; t < c.n_trials; ++t)
            v.push_back(run_trial(c, sampler, plan, 0, t).sq_error[cell]);
        double mean = 0.0;
        for (double x : v)
            mean += x / v.size();
        double ss = 0.0;
        for (double x : v)
            ss += (x - mean) * (x - mean);
        const MseRow &row = report.rows[cell];
        CHECK(row.trials == c.n_trials);
        CHECK(row.nmse_empirical == doctest::Approx(mean).epsilon(1e-12));
        CHECK(row.stderr_ == doctest::Approx(std::sqrt(ss / (v.size() - 1)) / std::sqrt(double(v.size()))).epsilon(1e-10));
        CHECK(row.nmse_empirical >= 0.0);
    }
}

TEST_CASE("standard error shrinks by about 1/sqrt(2) when trials double")
{
    SweepConfig c = small_sweep(2000);
    c.estimators = {EstimatorKind::LMMSE, EstimatorKind::CorrelatedGroupingLMMSE};
    const MseReport a = run_sweep(c);
    c.n_trials = 4000;
    const MseReport b = run_sweep(c);
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        CHECK(b.rows[i].stderr_ / a.rows[i].stderr_ == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("estimates are unbiased in the mean")
{
    SweepConfig c = small_sweep(1);
    c.estimators = {EstimatorKind::LMMSE, EstimatorKind::CorrelatedGroupingLMMSE};
    const ChannelStatistics &st = desk_stats();
    const ChannelSampler sampler(st);
    const SnrPlan plan = plan_snr_point(c, st, 10.0);
    const int n = 10000;
    for (const auto &cell : plan.cells) {
        const TrainingConfig &tc = plan.rounds[cell.round].training;
        const Index L = st.cascade_length();
        cvec sum = cvec::Zero(L);
        Eigen::VectorXd sq = Eigen::VectorXd::Zero(L);
        for (int t = 0; t < n; ++t) {
            Rng rng(derive_seed(99, 0, t, 0));
            const ChannelRealization r = sampler.sample(rng);
            const ObservationSet obs = synthesize_received(r, st, tc, rng);
            const cvec e = cell.design[0].apply(obs.y_combined[0]) - r.s[0];
            sum += e;
            sq += e.cwiseAbs2();
        }
        const cvec mean = sum / n;
        const double se = std::sqrt((sq / n - mean.cwiseAbs2()).sum() / n);
        CHECK(mean.norm() < 3.0 * se);
    }
}

TEST_CASE("theory curves match the sweep closed forms and carry no trials")
{
    const SweepConfig c = small_sweep(20);
    const MseReport th = theory_curves(c);
    const MseReport mc = run_sweep(c);
    REQUIRE(th.rows.size() == mc.rows.size());
    for (std::size_t i = 0; i < th.rows.size(); ++i) {
        CHECK(th.rows[i].trials == 0);
        CHECK(th.rows[i].nmse_theory == mc.rows[i].nmse_theory);
        CHECK(th.rows[i].nmse_floor == mc.rows[i].nmse_floor);
        CHECK(th.rows[i].estimator == mc.rows[i].estimator);
    }
}

TEST_CASE("empirical error tracks the closed forms for every estimator")
{
    SweepConfig c = small_sweep(3000);
    c.snr_db = {-10.0, 10.0, 30.0};
    for (const MseRow &r : run_sweep(c).rows) {
        CAPTURE(to_string(r.estimator));
        CAPTURE(r.snr_db);
        CHECK(std::abs(r.nmse_empirical - r.nmse_theory) < 5.0 * r.stderr_ + 1e-3 * r.nmse_theory);
    }
}

TEST_CASE("raw traces when normalization is off")
{
    SweepConfig c = small_sweep(50);
    c.normalized = false;
    const MseReport raw = run_sweep(c);
    const MseReport norm = run_sweep(small_sweep(50));
    for (std::size_t i = 0; i < raw.rows.size(); ++i) {
        CHECK(raw.rows[i].nmse_theory == doctest::Approx(raw.rows[i].trace_theory).epsilon(1e-12));
        CHECK(raw.rows[i].nmse_theory > norm.rows[i].nmse_theory);
    }
}

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

#include "risce/validation.hpp"
#include "risce/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace risce {

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

using CheckFn = std::function<Outcome(const ValidationOptions &)>;

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

TrainingConfig grouped_training(const ValidationOptions &o, const ChannelStatistics &st, int ng,
                                double rho)
{
    return make_training_config(scenario_grouping(o.scenario, ng), st.n_users(), 0,
                                std::vector<double>(st.n_users(), rho), o.scenario.sigma_w2);
}

SweepConfig base_sweep(const ValidationOptions &o)
{
    SweepConfig c;
    c.scenario = o.scenario;
    c.snr_db = o.snr_db;
    c.n_groups = {o.n_groups};
    c.n_trials = o.trials;
    c.base_seed = o.seed;
    return c;
}

double top_rho(const ValidationOptions &o, const ChannelStatistics &st)
{
    return pilot_power(base_sweep(o), st, o.snr_db.back());
}

Outcome check_correlation(const ValidationOptions &o)
{
    double worst_herm = 0.0, worst_diag = 0.0, min_eig = 1.0;
    for (double eta : o.scenario.fading.eta) {
        const cmat R = exp_correlation_matrix(eta, o.scenario.geometry);
        worst_herm = std::max(worst_herm, (R - R.adjoint()).cwiseAbs().maxCoeff());
        worst_diag = std::max(worst_diag, (R.diagonal().array() - 1.0).abs().maxCoeff());
        min_eig = std::min(min_eig, linalg::min_eigenvalue(R));
    }
    const bool ok = worst_herm == 0.0 && worst_diag == 0.0 && min_eig > -1e-10;
    return {ok, "min eigenvalue " + sci(min_eig) + ", hermitian defect " + sci(worst_herm)};
}

Outcome check_steering(const ValidationOptions &o)
{
    const ChannelStatistics st = build_statistics(o.scenario.geometry, o.scenario.fading);
    double worst = 0.0;
    for (const auto &v : st.g_bar)
        worst = std::max(worst, (v.cwiseAbs().array() - 1.0).abs().maxCoeff());
    for (const auto &v : st.a_bar)
        worst = std::max(worst, (v.cwiseAbs().array() - 1.0).abs().maxCoeff());
    return {worst < 1e-12, "max | |x| - 1 | = " + sci(worst)};
}

Outcome check_moment_oracle(const ValidationOptions &o)
{
    const ChannelStatistics st = build_statistics(o.scenario.geometry, o.scenario.fading);
    const ChannelSampler sampler(st);
    const int n = 50000;
    Rng rng(o.seed);
    const int K = st.n_users();
    const Index L = st.cascade_length();
    std::vector<cvec> sum(K, cvec::Zero(L));
    std::vector<cmat> outer(K, cmat::Zero(L, L));
    for (int i = 0; i < n; ++i) {
        const ChannelRealization r = sampler.sample(rng);
        for (int k = 0; k < K; ++k) {
            sum[k] += r.s[k];
            outer[k].noalias() += r.s[k] * r.s[k].adjoint();
        }
    }
    double worst_mean_z = 0.0, worst_cov = 0.0;
    for (int k = 0; k < K; ++k) {
        const cvec mu = mean_s(st, k);
        const cmat C = cov_ss(st, k);
        const cvec m_hat = sum[k] / n;
        const cmat C_hat = outer[k] / n - m_hat * m_hat.adjoint();
        for (Index i = 0; i < L; ++i) {
            const double se = std::sqrt(std::max(C(i, i).real(), 1e-300) / n);
            if (C(i, i).real() > 0.0)
                worst_mean_z = std::max(worst_mean_z, std::abs(m_hat(i) - mu(i)) / se);
            else
                worst_mean_z = std::max(worst_mean_z, std::abs(m_hat(i)) > 0.0 ? 1e9 : 0.0);
        }
        worst_cov = std::max(worst_cov, (C_hat - C).cwiseAbs().maxCoeff() / C.cwiseAbs().maxCoeff());
    }
    return {worst_mean_z < 5.0 && worst_cov < 0.05,
            "mean max z " + sci(worst_mean_z) + ", covariance max rel " + sci(worst_cov)};
}

Outcome check_large_scale(const ValidationOptions &o)
{
    const ChannelStatistics st = build_statistics(o.scenario.geometry, o.scenario.fading);
    bool ok = st.rho_A > 0.0;
    for (double g : st.rho_g)
        ok = ok && g > 0.0 && g < 1.0;
    for (double b : st.rho_b)
        ok = ok && (o.scenario.fading.direct_link_blocked ? b == 0.0 : b > 0.0);
    const double f = o.scenario.fading.rho_0;
    ok = ok && path_loss(10.0, 2.2, f) > path_loss(20.0, 2.2, f);
    return {ok, "rho_A " + sci(st.rho_A) + ", rho_g[0] " + sci(st.rho_g.front())};
}

Outcome check_psd_factor(const ValidationOptions &o)
{
    const ChannelStatistics st = build_statistics(o.scenario.geometry, o.scenario.fading);
    double worst = 0.0;
    for (int k = 0; k < st.n_users(); ++k) {
        const cmat C = cov_ss(st, k);
        const cmat F = linalg::psd_factor(C);
        worst = std::max(worst, (F * F.adjoint() - C).cwiseAbs().maxCoeff() / C.cwiseAbs().maxCoeff());
    }
    return {worst < 1e-8, "max rel reconstruction error " + sci(worst)};
}

Outcome check_hadamard(const ValidationOptions &o)
{
    for (int T = 1; T <= 64; T *= 2) {
        const Eigen::MatrixXd H = hadamard(T);
        if (H.transpose() * H != T * Eigen::MatrixXd::Identity(T, T))
            return {false, "Gram of order " + std::to_string(T) + " is not T I"};
    }
    const Grouping grouping = scenario_grouping(o.scenario, o.n_groups);
    const TrainingPatterns tp = training_patterns(grouping, o.n_groups + 1);
    const Index T = static_cast<Index>(tp.group_patterns.size());
    Eigen::MatrixXd X(T, o.n_groups + 1);
    for (Index t = 0; t < T; ++t) {
        X(t, 0) = 1.0;
        X.row(t).tail(o.n_groups) = tp.group_patterns[t].real().transpose();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(X);
    return {lu.rank() == X.cols(), "orders 1..64 exact; training matrix rank " +
                                       std::to_string(lu.rank()) + " of " + std::to_string(X.cols())};
}

Outcome check_pilots(const ValidationOptions &o)
{
    const int K = o.scenario.geometry.n_users();
    const cmat P = pilot_sequences(K);
    const double err = (P * P.adjoint() - K * cmat::Identity(K, K)).cwiseAbs().maxCoeff();
    return {err < 1e-10, "max |Phi Phi^H - K I| = " + sci(err)};
}

Outcome check_leakage(const ValidationOptions &o)
{
    ValidationOptions quiet = o;
    quiet.scenario.sigma_w2 = 0.0;
    const ChannelStatistics st = build_statistics(quiet.scenario.geometry, quiet.scenario.fading);
    const int K = st.n_users();
    const TrainingConfig tc = grouped_training(quiet, st, o.n_groups, 1.0);
    Rng rng(o.seed + 1);
    ChannelRealization r = sample_realization(st, rng);
    double worst = 0.0;
    for (int active = 0; active < K; ++active) {
        ChannelRealization solo = r;
        for (int k = 0; k < K; ++k)
            if (k != active)
                solo.s[k].setZero();
        const ObservationSet obs = synthesize_received(solo, st, tc, draw_noise(tc, st.n_antennas(), rng));
        const double ref = obs.y_combined[active].norm();
        for (int k = 0; k < K; ++k)
            if (k != active)
                worst = std::max(worst, obs.y_combined[k].norm() / ref);
    }
    return {worst < 1e-10, "max relative leakage " + sci(worst)};
}

Outcome check_overhead(const ValidationOptions &o)
{
    const SystemGeometry &g = o.scenario.geometry;
    const int K = g.n_users(), N = g.n_elements(), NG = o.n_groups;
    const PilotOverhead ov = pilot_overhead(K, N, NG);
    bool rejected = false;
    try {
        training_patterns(scenario_grouping(o.scenario, NG), NG);
    } catch (const ConfigError &) {
        rejected = true;
    }
    const bool ok = ov.full == K * (N + 1) && ov.grouped == K * (NG + 1) && rejected;
    return {ok, "tau_p full " + std::to_string(ov.full) + ", grouped " + std::to_string(ov.grouped) +
                    (rejected ? ", T < N_G + 1 rejected" : ", T < N_G + 1 accepted")};
}

Outcome check_cov_ss(const ValidationOptions &o)
{
    const ChannelStatistics st = build_statistics(o.scenario.geometry, o.scenario.fading);
    double min_eig = 1.0, herm = 0.0;
    for (int k = 0; k < st.n_users(); ++k) {
        const cmat C = cov_ss(st, k);
        herm = std::max(herm, (C - C.adjoint()).cwiseAbs().maxCoeff());
        min_eig = std::min(min_eig, linalg::min_eigenvalue(C) / C.cwiseAbs().maxCoeff());
    }
    return {herm < 1e-12 && min_eig > -1e-10,
            "relative min eigenvalue " + sci(min_eig) + ", hermitian defect " + sci(herm)};
}

Outcome check_cov_uu(const ValidationOptions &o)
{
    const ChannelStatistics st = build_statistics(o.scenario.geometry, o.scenario.fading);
    const TrainingConfig tc = grouped_training(o, st, o.n_groups, 1.0);
    const ChannelSampler sampler(st);
    Rng rng(o.seed + 2);
    const int n = 20000;
    double worst = 0.0, min_eig = 1.0;
    for (int k = 0; k < st.n_users(); ++k) {
        const cmat Cu = cov_uu(cov_ss(st, k), st.n_antennas(), tc.grouping);
        min_eig = std::min(min_eig, linalg::min_eigenvalue(Cu) / Cu.cwiseAbs().maxCoeff());
        const cvec mu = mean_s(st, k);
        cmat acc = cmat::Zero(Cu.rows(), Cu.cols());
        for (int i = 0; i < n; ++i) {
            const cvec u = group_aggregate(sampler.sample(rng).s[k], mu, st.n_antennas(), tc.grouping);
            acc.noalias() += u * u.adjoint();
        }
        worst = std::max(worst, (acc / n - Cu).cwiseAbs().maxCoeff() / Cu.cwiseAbs().maxCoeff());
    }
    return {worst < 0.05 && min_eig > -1e-10,
            "sample vs closed form max rel " + sci(worst) + ", relative min eigenvalue " + sci(min_eig)};
}

Outcome check_cov_yy(const ValidationOptions &o)
{
    const ChannelStatistics st = build_statistics(o.scenario.geometry, o.scenario.fading);
    const TrainingConfig tc = grouped_training(o, st, o.n_groups, top_rho(o, st));
    for (int k = 0; k < st.n_users(); ++k) {
        const MomentSet m = build_moments(st, k, tc);
        linalg::factor_hpd(m.cov_yy, "C_yy");
        const cmat Cuy_direct = std::sqrt(m.rho) * aggregation_matrix(m.n_antennas, m.grouping).cast<cplx>() *
                                m.cov_ss * m.Z.adjoint();
        const double err = (Cuy_direct - m.cov_uy).cwiseAbs().maxCoeff() / m.cov_uy.cwiseAbs().maxCoeff();
        if (err > 1e-9)
            return {false, "C_uy differs from P C_sy: " + sci(err)};
    }
    return {true, "C_yy positive definite; C_uy = P C_sy"};
}

Outcome check_collapse(const ValidationOptions &o)
{
    const ChannelStatistics st = build_statistics(o.scenario.geometry, o.scenario.fading);
    const int N = st.n_elements();
    double worst_gain = 0.0, worst_trace = 0.0;
    for (double snr : o.snr_db) {
        const TrainingConfig tc = grouped_training(o, st, N, pilot_power(base_sweep(o), st, snr));
        for (int k = 0; k < st.n_users(); ++k) {
            const MomentSet m = build_moments(st, k, tc);
            const AffineEstimator a = design_lmmse(m);
            const AffineEstimator b = design_correlated_grouping_lmmse(m);
            worst_gain = std::max(worst_gain, (a.gain - b.gain).norm() / a.gain.norm());
            worst_trace = std::max(worst_trace, rel(error_covariance(m).trace().real(),
                                                    lmmse_error_covariance(m).trace().real()));
        }
    }
    return {worst_gain < 1e-8 && worst_trace < 1e-8,
            "gain rel " + sci(worst_gain) + ", trace rel " + sci(worst_trace)};
}

Outcome check_error_cov(const ValidationOptions &o)
{
    Rng rng(o.seed + 3);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double worst_eig = 0.0, worst_ratio = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        ValidationOptions f = o;
        const double eta = 0.5 + 0.499 * U(rng);
        f.scenario.fading.eta.assign(f.scenario.fading.eta.size(), eta);
        const ChannelStatistics st = build_statistics(f.scenario.geometry, f.scenario.fading);
        const int divisors[] = {1, 2, 4, 8, 16};
        const int ng = divisors[trial % 5];
        if (st.n_elements() % ng != 0)
            continue;
        const double rho = top_rho(o, st) * std::pow(10.0, -6.0 * U(rng));
        const TrainingConfig tc = grouped_training(f, st, ng, rho);
        for (int k = 0; k < st.n_users(); ++k) {
            const MomentSet m = build_moments(st, k, tc);
            const cmat E = error_covariance(m);
            const double scale = m.cov_ss.cwiseAbs().maxCoeff();
            worst_eig = std::min(worst_eig, linalg::min_eigenvalue(E) / scale);
            worst_ratio = std::max(worst_ratio, E.trace().real() / m.cov_ss.trace().real());
        }
    }
    return {worst_eig >= -1e-8 && worst_ratio <= 1.0,
            "min eigenvalue / max|C_ss| " + sci(worst_eig) + ", max Tr ratio " + sci(worst_ratio)};
}

Outcome check_monotone(const ValidationOptions &o)
{
    const ChannelStatistics st = build_statistics(o.scenario.geometry, o.scenario.fading);
    const double hi = top_rho(o, st);
    double worst = 0.0;
    for (int ng : {o.n_groups, st.n_elements()}) {
        std::vector<double> prev(st.n_users(), 2.0);
        for (int i = 0; i < 20; ++i) {
            const double rho = hi * std::pow(10.0, -8.0 + 10.0 * i / 19.0);
            const TrainingConfig tc = grouped_training(o, st, ng, rho);
            for (int k = 0; k < st.n_users(); ++k) {
                const MomentSet m = build_moments(st, k, tc);
                const double e = normalized_mse(error_covariance(m), m.cov_ss);
                worst = std::max(worst, e - prev[k]);
                prev[k] = e;
            }
        }
    }
    return {worst <= 1e-10, "largest increase " + sci(worst)};
}

Outcome check_ordering(const ValidationOptions &o)
{
    SweepConfig c = base_sweep(o);
    c.estimators = {EstimatorKind::GroupingLMMSE, EstimatorKind::CorrelatedGroupingLMMSE};
    const MseReport r = theory_curves(c);
    const std::size_t n = c.snr_db.size();
    double worst = 0.0, top_gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = r.rows[2 * i].nmse_theory;
        const double cg = r.rows[2 * i + 1].nmse_theory;
        worst = std::max(worst, cg - g);
        if (i + 1 == n)
            top_gap = (g - cg) / g;
    }
    return {worst <= 0.0 && top_gap >= 0.10,
            "max(CG - GroupingLMMSE) " + sci(worst) + ", top-SNR separation " + sci(top_gap)};
}

Outcome check_floor(const ValidationOptions &o)
{
    const ChannelStatistics st = build_statistics(o.scenario.geometry, o.scenario.fading);
    const double rho = top_rho(o, st) * 1e12;
    const TrainingConfig grouped = grouped_training(o, st, o.n_groups, rho);
    const TrainingConfig full = grouped_training(o, st, st.n_elements(), rho);
    double worst_floor = 0.0, worst_lmmse = 0.0;
    for (int k = 0; k < st.n_users(); ++k) {
        const MomentSet m = build_moments(st, k, grouped);
        worst_floor = std::max(worst_floor, rel(normalized_mse(error_covariance(m), m.cov_ss),
                                                asymptotic_mse(m).nmse));
        const MomentSet f = build_moments(st, k, full);
        worst_lmmse = std::max(worst_lmmse, normalized_mse(lmmse_error_covariance(f), f.cov_ss));
    }
    return {worst_floor < 0.01 && worst_lmmse < 1e-6,
            "floor rel " + sci(worst_floor) + ", LMMSE at 1e12 rho " + sci(worst_lmmse)};
}

Outcome check_ls(const ValidationOptions &o)
{
    ValidationOptions quiet = o;
    quiet.scenario.sigma_w2 = 0.0;
    const ChannelStatistics st = build_statistics(o.scenario.geometry, o.scenario.fading);
    const TrainingConfig tc = grouped_training(quiet, st, st.n_elements(), 1.0);
    Rng rng(o.seed + 4);
    const ChannelRealization r = sample_realization(st, rng);
    const ObservationSet obs = synthesize_received(r, st, tc, rng);
    double worst = 0.0;
    for (int k = 0; k < st.n_users(); ++k) {
        const cmat Z = build_Z(k, st, tc, false);
        const cvec s_hat = ls_conventional(obs.y_combined[k], Z, 1.0).s_hat;
        worst = std::max(worst, (s_hat - r.s[k]).norm() / r.s[k].norm());
    }
    return {worst < 1e-9, "noiseless relative error " + sci(worst)};
}

Outcome check_determinism(const ValidationOptions &o)
{
    SweepConfig c = base_sweep(o);
    c.n_trials = 200;
    const MseReport a = run_sweep(c, Execution::Serial);
    const MseReport b = run_sweep(c, Execution::Parallel, 4);
    const MseReport d = run_sweep(c, Execution::Parallel, 3);
    std::ostringstream sa, sb, sd;
    write_sweep_csv(sa, a, {});
    write_sweep_csv(sb, b, {});
    write_sweep_csv(sd, d, {});
    const bool ok = sa.str() == sb.str() && sa.str() == sd.str();
    return {ok, ok ? "serial, 4 and 3 workers byte-identical" : "outputs differ"};
}

Outcome check_theory_empirical(const ValidationOptions &o)
{
    SweepConfig c = base_sweep(o);
    c.estimators = {EstimatorKind::LMMSE, EstimatorKind::CorrelatedGroupingLMMSE};
    const MseReport r = run_sweep(c);
    double worst = 0.0;
    for (const auto &row : r.rows)
        worst = std::max(worst, rel(row.nmse_empirical, row.nmse_theory));
    return {worst < 0.05, "max relative gap " + sci(worst) + " over " + std::to_string(r.rows.size()) +
                              " cells at " + std::to_string(c.n_trials) + " trials"};
}

Outcome check_unbiased(const ValidationOptions &o)
{
    SweepConfig c = base_sweep(o);
    c.estimators = {EstimatorKind::CorrelatedGroupingLMMSE};
    c.snr_db = {o.snr_db[o.snr_db.size() / 2]};
    const ChannelSampler sampler(build_statistics(c.scenario.geometry, c.scenario.fading));
    const ChannelStatistics &st = sampler.statistics();
    const SnrPlan plan = plan_snr_point(c, st, c.snr_db.front());
    const int n = 10000;
    const Index L = st.cascade_length();
    double worst = 0.0;
    for (int k = 0; k < st.n_users(); ++k) {
        cvec sum = cvec::Zero(L);
        Eigen::VectorXd sq = Eigen::VectorXd::Zero(L);
        Rng rng(derive_seed(o.seed, 99, static_cast<std::uint64_t>(k), 0));
        for (int i = 0; i < n; ++i) {
            const ChannelRealization r = sampler.sample(rng);
            const ObservationSet obs = synthesize_received(r, st, plan.rounds.front().training, rng);
            const cvec e = plan.cells.front().design[k].apply(obs.y_combined[k]) - r.s[k];
            sum += e;
            sq += e.cwiseAbs2();
        }
        const cvec mean = sum / n;
        const double var = (sq / n).sum() - mean.squaredNorm();
        const double se = std::sqrt(var / n);
        worst = std::max(worst, mean.norm() / se);
    }
    // ||mean error|| against the standard error of the whole vector.
    return {worst < 3.0, "||mean error|| / standard error " + sci(worst)};
}

Outcome check_stderr(const ValidationOptions &o)
{
    SweepConfig c = base_sweep(o);
    c.estimators = {EstimatorKind::CorrelatedGroupingLMMSE};
    c.snr_db = {o.snr_db.front()};
    c.n_trials = 400;
    const ChannelSampler sampler(build_statistics(c.scenario.geometry, c.scenario.fading));
    const SnrPlan plan = plan_snr_point(c, sampler.statistics(), c.snr_db.front());
    std::vector<double> v;
    for (int t = 0; t < c.n_trials; ++t)
        v.push_back(run_trial(c, sampler, plan, 0, static_cast<std::size_t>(t)).sq_error.front());
    double mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= v.size();
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / (v.size() - 1)) / std::sqrt(static_cast<double>(v.size()));
    const MseRow row = run_sweep(c, Execution::Serial).rows.front();
    const bool ok = rel(row.stderr_, se) < 1e-12 && rel(row.nmse_empirical, mean) < 1e-12;
    return {ok, "report stderr " + sci(row.stderr_) + ", recomputed " + sci(se)};
}

Outcome check_csv(const ValidationOptions &o)
{
    SweepConfig c = base_sweep(o);
    c.n_trials = 50;
    c.snr_db = {0.0, 20.0};
    const MseReport r = run_sweep(c);
    std::stringstream ss;
    write_sweep_csv(ss, r, {{"config_hash", "test"}});
    const std::vector<MseRow> back = parse_sweep_csv(ss);
    bool ok = back.size() == r.rows.size();
    for (std::size_t i = 0; ok && i < back.size(); ++i)
        ok = back[i].estimator == r.rows[i].estimator && back[i].n_groups == r.rows[i].n_groups &&
             back[i].nmse_empirical == r.rows[i].nmse_empirical &&
             back[i].stderr_ == r.rows[i].stderr_ && back[i].nmse_theory == r.rows[i].nmse_theory &&
             back[i].nmse_floor == r.rows[i].nmse_floor && back[i].rho == r.rows[i].rho;
    return {ok, std::to_string(back.size()) + " rows round-tripped bit-exactly"};
}

Outcome check_config_hash(const ValidationOptions &)
{
    const RunConfig a = default_run_config();
    RunConfig b = default_run_config();
    const bool same = config_hash(a) == config_hash(b);
    b.sweep.base_seed += 1;
    const bool differs = config_hash(a) != config_hash(b);
    return {same && differs, "default hash " + config_hash(a)};
}

const std::vector<std::tuple<std::string, std::string, CheckFn>> &catalog()
{
    static const std::vector<std::tuple<std::string, std::string, CheckFn>> c = {
        {"CM-1", "correlation matrices hermitian, unit diagonal, PSD", check_correlation},
        {"CM-2", "LoS steering vectors unit modulus", check_steering},
        {"CM-3", "moment oracle: sample mean and covariance of s_k", check_moment_oracle},
        {"CM-4", "large-scale gains and blocked direct link", check_large_scale},
        {"CM-5", "PSD factor reproduces C_ss", check_psd_factor},
        {"TR-1", "Hadamard Gram = T I and training matrix full rank", check_hadamard},
        {"TR-2", "pilot Gram = K I", check_pilots},
        {"TR-3", "inter-user leakage after combining", check_leakage},
        {"TR-4", "pilot overhead and identifiability guard", check_overhead},
        {"ST-1", "C_ss hermitian PSD", check_cov_ss},
        {"ST-2", "C_uu matches sample covariance of u_k", check_cov_uu},
        {"ST-3", "C_yy positive definite, C_uy consistent", check_cov_yy},
        {"ES-1", "collapse: N_G = N equals conventional LMMSE", check_collapse},
        {"ES-2", "error covariance PSD with Tr <= Tr C_ss (fuzzed)", check_error_cov},
        {"ES-3", "theoretical error nonincreasing in rho", check_monotone},
        {"ES-4", "ordering: correlated grouping below grouping LMMSE", check_ordering},
        {"ES-5", "floor matches high-power limit; LMMSE floor vanishes", check_floor},
        {"ES-6", "LS exact in the noiseless case", check_ls},
        {"MC-1", "order independence across worker counts", check_determinism},
        {"MC-2", "empirical vs closed-form error within 5%", check_theory_empirical},
        {"MC-3", "unbiased in the mean; stderr = sd / sqrt(n)",
         [](const ValidationOptions &o) {
             const Outcome a = check_unbiased(o);
             const Outcome b = check_stderr(o);
             return Outcome{a.passed && b.passed, a.detail + "; " + b.detail};
         }},
        {"CLI-1", "CSV schema round trip", check_csv},
        {"CLI-2", "config hash stable and seed-sensitive", check_config_hash},
    };
    return c;
}

} // namespace

std::vector<std::pair<std::string, std::string>> validation_catalog()
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &[id, name, fn] : catalog())
        out.emplace_back(id, name);
    return out;
}

std::vector<CheckResult> run_validation(const ValidationOptions &options)
{
    std::vector<CheckResult> out;
    for (const auto &[id, name, fn] : catalog()) {
        CheckResult r{id, name, false, {}, 0.0};
        const auto start = std::chrono::steady_clock::now();
        try {
            const Outcome o = fn(options);
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception &e) {
            r.passed = false;
            r.detail = std::string("error: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(r));
    }
    return out;
}

void print_validation_table(std::ostream &out, const std::vector<CheckResult> &results)
{
    int failed = 0;
    for (const auto &r : results) {
        out << std::left << std::setw(6) << r.id << ' ' << (r.passed ? "PASS" : "FAIL") << "  "
            << std::setw(54) << r.name << ' ' << r.detail << '\n';
        failed += r.passed ? 0 : 1;
    }
    out << results.size() - failed << '/' << results.size() << " checks passed\n";
}

} // namespace risce

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

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace risce;
using namespace risce::testing;

namespace {

cmat ideal_prior(int k, const Grouping &g)
{
    const ChannelStatistics ideal = with_ideal_correlation(desk_stats(), g);
    return cov_uu(cov_ss(ideal, k), desk_stats().n_antennas(), g);
}

double theory(EstimatorKind kind, const MomentSet &m, const cmat &ideal)
{
    switch (kind) {
    case EstimatorKind::LMMSE: return normalized_mse(lmmse_error_covariance(m), m.cov_ss);
    case EstimatorKind::CorrelatedGroupingLMMSE: return normalized_mse(error_covariance(m), m.cov_ss);
    default: return affine_error(design_estimator(kind, m, ideal), m).mse() / m.cov_ss.trace().real();
    }
}

std::vector<double> log_rho_sweep(int points)
{
    std::vector<double> out;
    const double lo = desk_rho(-20.0), hi = desk_rho(50.0);
    for (int i = 0; i < points; ++i)
        out.push_back(lo * std::pow(hi / lo, i / double(points - 1)));
    return out;
}

} // namespace

TEST_CASE("decoupled scalar problem: LMMSE error per entry is c s / (rho c |z|^2 + s)")
{
    // Two entries, orthogonal columns in Z, diagonal prior: each entry is a scalar LMMSE problem.
    const Grouping g = Grouping::contiguous(1, 1);
    cmat Z(2, 2);
    Z << 2.0, 2.0, 2.0, -2.0;
    cmat C = cmat::Zero(2, 2);
    C(0, 0) = 0.7;
    C(1, 1) = 2.5;
    const cvec mu = cvec::Constant(2, cplx(0.3, -0.1));
    const double rho = 0.8, sigma2 = 0.05;
    const int users = 2;
    const MomentSet m = observation_moments(mu, C, C, Z, Z, rho, sigma2, users, 1, g);
    const double s = users * sigma2;
    const cmat E = lmmse_error_covariance(m);
    for (int i = 0; i < 2; ++i) {
        const double c = C(i, i).real();
        CHECK(E(i, i).real() == doctest::Approx(c * s / (rho * c * 8.0 + s)).epsilon(1e-12));
    }
    CHECK(std::abs(E(0, 1)) < 1e-14);
    // Scalar gain: sqrt(rho) c z / (rho c |z|^2 + s) applied to the projection on column i.
    const AffineEstimator est = design_lmmse(m);
    for (int i = 0; i < 2; ++i) {
        const double c = C(i, i).real();
        const cvec expected = std::sqrt(rho) * c * Z.col(i).adjoint() / (rho * c * 8.0 + s);
        CHECK((est.gain.row(i).transpose() - expected).norm() < 1e-12);
    }
}

TEST_CASE("LMMSE design and error match explicit inversion")
{
    for (double snr : {-10.0, 10.0, 30.0}) {
        CAPTURE(snr);
        const TrainingConfig tc = desk_training(16, desk_rho(snr));
        for (int k = 0; k < 2; ++k) {
            const MomentSet m = build_moments(desk_stats(), k, tc);
            const cmat G = literal_lmmse_gain(m);
            const AffineEstimator est = design_lmmse(m);
            CHECK(rel_diff(est.gain, G) < 1e-7);
            CHECK((est.offset - (m.mean_s - G * m.mean_y)).norm() < 1e-7 * m.mean_s.norm());
            CHECK(rel_diff(lmmse_error_covariance(m), literal_error(m, G)) < 1e-7);
        }
    }
}

TEST_CASE("correlated grouping design and error match the literal two-stage formula")
{
    for (int ng : {2, 4, 8}) {
        for (double snr : {-10.0, 10.0, 30.0}) {
            CAPTURE(ng);
            CAPTURE(snr);
            const TrainingConfig tc = desk_training(ng, desk_rho(snr));
            const MomentSet m = build_moments(desk_stats(), 0, tc);
            const cmat G = literal_cg_gain(m);
            const AffineEstimator est = design_correlated_grouping_lmmse(m);
            CHECK(rel_diff(est.gain, G) < 1e-6);
            CHECK(rel_diff(error_covariance(m).trace().real(), literal_error(m, G).trace().real()) < 1e-8);
            const AffineError ae = affine_error(est, m);
            CHECK(ae.bias.norm() < 1e-9 * m.mean_s.norm());
            CHECK(rel_diff(ae.mse(), error_covariance(m).trace().real()) < 1e-9);
            CHECK(!est.degenerate);
        }
    }
}

TEST_CASE("collapse: N_G = N gives the conventional LMMSE estimator")
{
    const int N = desk_stats().n_elements();
    Rng rng(4);
    for (int T : {N + 1, N + 3}) {
        for (double snr : {-10.0, 20.0, 40.0}) {
            const TrainingConfig tc = desk_training(N, desk_rho(snr), T);
            const ObservationSet obs = synthesize_received(sample_realization(desk_stats(), rng), desk_stats(), tc, rng);
            for (int k = 0; k < 2; ++k) {
                const MomentSet m = build_moments(desk_stats(), k, tc);
                const EstimateResult a = correlated_grouping_lmmse(obs.y_combined[k], m);
                const EstimateResult b = lmmse_conventional(obs.y_combined[k], m);
                CHECK((a.s_hat - b.s_hat).norm() <= 1e-8 * b.s_hat.norm());
                CHECK(rel_diff(*a.nmse_theory, *b.nmse_theory) < 1e-8);
            }
        }
    }
}

TEST_CASE("theoretical error is nonincreasing in pilot power")
{
    const Grouping g = scenario_grouping(desk_scenario(), 4);
    const cmat ideal = ideal_prior(0, g);
    for (EstimatorKind kind : all_estimators) {
        CAPTURE(to_string(kind));
        double prev = std::numeric_limits<double>::infinity();
        for (double rho : log_rho_sweep(20)) {
            const int ng = uses_grouped_training(kind) ? 4 : 16;
            const MomentSet m = build_moments(desk_stats(), 0, desk_training(ng, rho));
            const double e = theory(kind, m, ideal);
            CHECK(e >= 0.0);
            CHECK(e <= prev + 1e-10);
            prev = e;
        }
    }
}

TEST_CASE("ordering at matched overhead under eta = 0.99")
{
    const Grouping g = scenario_grouping(desk_scenario(), 4);
    double last_cg = 0.0, last_gl = 0.0;
    for (double rho : log_rho_sweep(20)) {
        for (int k = 0; k < 2; ++k) {
            const MomentSet m = build_moments(desk_stats(), k, desk_training(4, rho));
            const double cg = theory(EstimatorKind::CorrelatedGroupingLMMSE, m, {});
            const double gl = theory(EstimatorKind::GroupingLMMSE, m, ideal_prior(k, g));
            CHECK(cg <= gl);
            last_cg = cg;
            last_gl = gl;
        }
    }
    CHECK(last_cg < 0.9 * last_gl);
}

TEST_CASE("LMMSE dominates LS and correlated grouping dominates grouping LS")
{
    const Grouping g = scenario_grouping(desk_scenario(), 4);
    for (double rho : log_rho_sweep(8)) {
        const MomentSet full = build_moments(desk_stats(), 1, desk_training(16, rho));
        const MomentSet grp = build_moments(desk_stats(), 1, desk_training(4, rho));
        CHECK(theory(EstimatorKind::LMMSE, full, {}) <= theory(EstimatorKind::LS, full, {}));
        CHECK(theory(EstimatorKind::CorrelatedGroupingLMMSE, grp, {}) <=
              theory(EstimatorKind::GroupingLS, grp, ideal_prior(1, g)));
    }
}

TEST_CASE("high-power floor")
{
    for (int ng : {2, 4, 8}) {
        const double rho = desk_rho(40.0) * 1e12;
        const MomentSet m = build_moments(desk_stats(), 0, desk_training(ng, rho));
        const AsymptoticMse lim = asymptotic_mse(m);
        CHECK(lim.nmse > 0.0);
        CHECK(rel_diff(normalized_mse(error_covariance(m), m.cov_ss), lim.nmse) < 0.01);
        CHECK(lim.trace == doctest::Approx(lim.nmse * m.cov_ss.trace().real()).epsilon(1e-12));
        CHECK(estimator_floor(EstimatorKind::CorrelatedGroupingLMMSE, m, {}) == lim.nmse);
    }
    const MomentSet full = build_moments(desk_stats(), 0, desk_training(16, desk_rho(40.0) * 1e12));
    CHECK(normalized_mse(lmmse_error_covariance(full), full.cov_ss) < 1e-6);
    CHECK(estimator_floor(EstimatorKind::LMMSE, full, {}) < 1e-9);
    CHECK(estimator_floor(EstimatorKind::LS, full, {}) < 1e-9);
}

TEST_CASE("LS: exact in the noiseless case and a scaled matched filter for orthogonal training")
{
    const ChannelStatistics &st = desk_stats();
    const int T = 32;  // power of two, so the nonzero columns of Z are orthogonal
    const double rho = 0.6;
    const TrainingConfig tc = make_training_config(Grouping::contiguous(16, 16), 2, T, {rho, rho}, 0.0);
    Rng rng(12);
    const ChannelRealization real = sample_realization(st, rng);
    const ObservationSet obs = synthesize_received(real, st, tc, rng);
    for (int k = 0; k < 2; ++k) {
        const cmat Z = build_Z(k, st, tc, false);
        const cvec ls = ls_conventional(obs.y_combined[k], Z, rho).s_hat;
        CHECK((ls - real.s[k]).norm() < 1e-10 * real.s[k].norm());
        const Eigen::VectorXd norms = Z.colwise().squaredNorm().transpose();
        cvec mf = Z.adjoint() * obs.y_combined[k] / std::sqrt(rho);
        for (Index i = 0; i < mf.size(); ++i)
            mf(i) = norms(i) > 0.0 ? mf(i) / norms(i) : cplx(0.0);
        CHECK((ls - mf).norm() < 1e-12 * mf.norm());
    }
    cmat dup = cmat::Ones(6, 3);
    CHECK_THROWS_AS(design_ls(dup, 1.0), NumericalError);
}

TEST_CASE("error covariances stay Hermitian PSD over random configurations")
{
    Rng rng(2026);
    std::uniform_real_distribution<double> snr(-20.0, 50.0);
    const int groups[] = {1, 2, 4, 8, 16};
    for (int trial = 0; trial < 30; ++trial) {
        const int ng = groups[trial % 5];
        const int k = trial % 2;
        const MomentSet m = build_moments(desk_stats(), k, desk_training(ng, desk_rho(snr(rng))));
        for (const cmat &E : {error_covariance(m), lmmse_error_covariance(m)}) {
            const double scale = m.cov_ss.cwiseAbs().maxCoeff();
            CHECK((E - E.adjoint()).cwiseAbs().maxCoeff() <= 1e-10 * scale);
            CHECK(linalg::min_eigenvalue(E) >= -1e-8 * scale);
            CHECK(normalized_mse(E, m.cov_ss) >= 0.0);
        }
    }
}

TEST_CASE("grouping baselines reconstruct by equal division within groups")
{
    const Grouping g = scenario_grouping(desk_scenario(), 4);
    const Eigen::MatrixXd X = expansion_matrix(4, g);
    const Eigen::MatrixXd P = aggregation_matrix(4, g);
    const Eigen::MatrixXd XP = X * P;
    // Direct block passes through, each cascaded group block averages.
    CHECK(XP.topLeftCorner(4, 4).isIdentity());
    for (int n1 = 0; n1 < 16; ++n1)
        for (int n2 = 0; n2 < 16; ++n2)
            CHECK(XP(4 + n1, 4 + n2) == (g.group_of[n1] == g.group_of[n2] ? 0.25 : 0.0));

    const TrainingConfig tc = desk_training(4, desk_rho(20.0));
    const MomentSet m = build_moments(desk_stats(), 0, tc);
    Rng rng(21);
    const ObservationSet obs = synthesize_received(sample_realization(desk_stats(), rng), desk_stats(), tc, rng);
    for (EstimatorKind kind : {EstimatorKind::GroupingLS, EstimatorKind::GroupingLMMSE}) {
        const EstimateResult r = grouping_baseline(obs.y_combined[0], m, ideal_prior(0, g), kind);
        const cvec centred = r.s_hat - m.mean_s;
        for (int n = 1; n < 16; ++n)
            if (g.group_of[n] == g.group_of[0])
                CHECK(std::abs(centred(4 + n) - centred(4)) < 1e-12 * centred.norm());
        CHECK(*r.nmse_theory > *r.nmse_floor - 1e-12);
    }
    CHECK_THROWS(grouping_baseline(obs.y_combined[0], m, ideal_prior(0, g), EstimatorKind::LMMSE));
}

TEST_CASE("estimator names round trip")
{
    for (EstimatorKind kind : all_estimators)
        CHECK(parse_estimator(to_string(kind)) == kind);
    CHECK_FALSE(parse_estimator("MMSE").has_value());
    CHECK(uses_grouped_training(EstimatorKind::GroupingLS));
    CHECK_FALSE(uses_grouped_training(EstimatorKind::LS));
}

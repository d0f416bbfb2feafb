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

using namespace risce;
using risce::testing::desk_stats;
using risce::testing::desk_training;

namespace {

// Element-wise second moments of s = [b; a_m .* g] from the Rician parts of a and g.
cmat covariance_oracle(const ChannelStatistics &st, int k)
{
    const int M = st.n_antennas(), N = st.n_elements();
    const double kA = st.fading.kappa_A, kg = st.fading.kappa_g;
    cmat C = cmat::Zero(M * (N + 1), M * (N + 1));
    if (st.direct_link_active(k))
        C.topLeftCorner(M, M).setIdentity();
    for (int m1 = 0; m1 < M; ++m1)
        for (int m2 = 0; m2 < M; ++m2)
            for (int n1 = 0; n1 < N; ++n1)
                for (int n2 = 0; n2 < N; ++n2) {
                    const cplx Ea = kA / (1 + kA) * st.a_bar[m1](n1) * std::conj(st.a_bar[m2](n2)) +
                                    (m1 == m2 ? st.R0(n1, n2) / (1 + kA) : cplx(0.0));
                    const cplx Eg = kg / (1 + kg) * st.g_bar[k](n1) * std::conj(st.g_bar[k](n2)) +
                                    st.R[k](n1, n2) / (1 + kg);
                    const cplx ma = kA / (1 + kA) * st.a_bar[m1](n1) * std::conj(st.a_bar[m2](n2));
                    const cplx mg = kg / (1 + kg) * st.g_bar[k](n1) * std::conj(st.g_bar[k](n2));
                    C(M + m1 * N + n1, M + m2 * N + n2) = Ea * Eg - ma * mg;
                }
    return C;
}

} // namespace

TEST_CASE("mean of s: LoS product scaled by the Rician weights")
{
    const ChannelStatistics &st = desk_stats();
    const double kA = st.fading.kappa_A, kg = st.fading.kappa_g;
    const double w = std::sqrt(kA * kg / ((1 + kA) * (1 + kg)));
    for (int k = 0; k < st.n_users(); ++k) {
        const cvec mu = mean_s(st, k);
        const int M = st.n_antennas(), N = st.n_elements();
        CHECK(mu.head(M).isZero(0.0));
        for (int m = 0; m < M; ++m)
            CHECK((mu.segment(M + m * N, N) - w * st.a_bar[m].cwiseProduct(st.g_bar[k])).norm() < 1e-14);
    }
}

TEST_CASE("covariance of s matches the element-wise moment oracle")
{
    ChannelStatistics st = desk_stats();
    for (int k = 0; k < st.n_users(); ++k)
        CHECK(risce::testing::rel_diff(cov_ss(st, k), covariance_oracle(st, k)) < 1e-13);

    Scenario s = desk_scenario();
    s.fading.direct_link_blocked = false;
    const ChannelStatistics open = build_statistics(s.geometry, s.fading);
    const cmat C = cov_ss(open, 0);
    CHECK(C.topLeftCorner(4, 4).isIdentity(0.0));
    CHECK(risce::testing::rel_diff(C, covariance_oracle(open, 0)) < 1e-13);
    CHECK(cov_ss(st, 0).topLeftCorner(4, 4).isZero(0.0));
}

TEST_CASE("covariances are Hermitian PSD and C_yy is positive definite")
{
    const ChannelStatistics &st = desk_stats();
    for (int ng : {2, 4, 8, 16}) {
        const TrainingConfig tc = desk_training(ng, risce::testing::desk_rho(20.0));
        for (int k = 0; k < st.n_users(); ++k) {
            const MomentSet m = build_moments(st, k, tc);
            for (const cmat *X : {&m.cov_ss, &m.cov_uu, &m.cov_yy}) {
                CHECK((*X - X->adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * X->cwiseAbs().maxCoeff());
                CHECK(linalg::min_eigenvalue(*X) >= -1e-8 * X->cwiseAbs().maxCoeff());
            }
            CHECK(linalg::min_eigenvalue(m.cov_yy) > 0.0);
        }
    }
}

TEST_CASE("aggregation consistency of group-sum quadratic forms")
{
    const ChannelStatistics &st = desk_stats();
    const Grouping g = Grouping::contiguous(16, 4);
    const cmat C = cov_ss(st, 1);
    const cmat Cu = cov_uu(C, st.n_antennas(), g);
    const Eigen::MatrixXd P = aggregation_matrix(st.n_antennas(), g);
    REQUIRE(P.rows() == 4 * 5);
    REQUIRE(P.cols() == 4 * 17);
    Rng rng(17);
    for (int i = 0; i < 20; ++i) {
        const cvec x = complex_normal(P.rows(), rng);
        const cvec lifted = P.transpose().cast<cplx>() * x;
        const cplx lhs = x.dot(Cu * x);
        const cplx rhs = lifted.dot(C * lifted);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
    }
    const ChannelRealization r = sample_realization(st, rng);
    const cvec mu = mean_s(st, 1);
    const cvec u = group_aggregate(r.s[1], mu, st.n_antennas(), g);
    CHECK((u - P.cast<cplx>() * (r.s[1] - mu)).norm() < 1e-12 * u.norm());
    // Group sums: the first group of antenna 0 adds elements 0..3.
    CHECK(std::abs(u(4) - (r.s[1] - mu).segment(4, 4).sum()) < 1e-12);
}

TEST_CASE("observation moments follow the linear model")
{
    const ChannelStatistics &st = desk_stats();
    const double rho = 0.25;
    const TrainingConfig tc = desk_training(4, rho);
    const MomentSet m = build_moments(st, 0, tc);
    const double noise = st.n_users() * tc.sigma_w2;
    CHECK(m.noise_var == noise);
    CHECK((m.mean_y - std::sqrt(rho) * m.Z * m.mean_s).norm() < 1e-14 * m.mean_y.norm());
    CHECK(risce::testing::rel_diff(m.cov_sy, std::sqrt(rho) * m.cov_ss * m.Z.adjoint()) < 1e-14);
    CHECK(risce::testing::rel_diff(m.cov_uy, std::sqrt(rho) * m.cov_uu * m.Z_G.adjoint()) < 1e-14);
    cmat yy = rho * m.Z * m.cov_ss * m.Z.adjoint();
    yy.diagonal().array() += noise;
    CHECK(risce::testing::rel_diff(m.cov_yy, yy) < 1e-13);
}

TEST_CASE("ideal block correlation model")
{
    const Grouping g = Grouping::contiguous(16, 4);
    const cmat B = ideal_block_correlation(g);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            CHECK(B(i, j) == cplx(g.group_of[i] == g.group_of[j] ? 1.0 : 0.0));
    const ChannelStatistics ideal = with_ideal_correlation(desk_stats(), g);
    CHECK(ideal.R0 == B);
    for (const auto &R : ideal.R)
        CHECK(R == B);
}

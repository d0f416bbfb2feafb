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

#include "risce/statistics.hpp"

#include <cmath>

namespace risce {

cvec mean_s(const ChannelStatistics &stats, int k)
{
    const int M = stats.n_antennas();
    const int N = stats.n_elements();
    const double kA = stats.fading.kappa_A;
    const double kg = stats.fading.kappa_g;
    const double scale = std::sqrt(kA * kg / ((1.0 + kA) * (1.0 + kg)));
    cvec mu = cvec::Zero(static_cast<Index>(M) * (N + 1));
    for (int m = 0; m < M; ++m)
        mu.segment(M + static_cast<Index>(m) * N, N) =
            scale * stats.a_bar[m].cwiseProduct(stats.g_bar.at(k));
    return mu;
}

cmat cov_ss(const ChannelStatistics &stats, int k)
{
    const int M = stats.n_antennas();
    const int N = stats.n_elements();
    const double kA = stats.fading.kappa_A;
    const double kg = stats.fading.kappa_g;

    const cmat R_A = stats.R0 / (1.0 + kA);
    const cmat R_g = stats.R.at(k) / (1.0 + kg);
    const cmat G_bar = (kg / (1.0 + kg)) * stats.g_bar[k] * stats.g_bar[k].adjoint();
    const cmat diag_block = R_A.cwiseProduct(G_bar + R_g);
    const double los_A = kA / (1.0 + kA);

    cmat C = cmat::Zero(static_cast<Index>(M) * (N + 1), static_cast<Index>(M) * (N + 1));
    if (stats.direct_link_active(k))
        C.topLeftCorner(M, M).setIdentity();
    for (int m1 = 0; m1 < M; ++m1) {
        for (int m2 = 0; m2 < M; ++m2) {
            auto block = C.block(M + static_cast<Index>(m1) * N, M + static_cast<Index>(m2) * N, N, N);
            block = (los_A * stats.a_bar[m1] * stats.a_bar[m2].adjoint()).cwiseProduct(R_g);
            if (m1 == m2)
                block += diag_block;
        }
    }
    return C;
}

Eigen::MatrixXd aggregation_matrix(int n_antennas, const Grouping &grouping)
{
    grouping.validate();
    const int M = n_antennas;
    const int N = grouping.n_elements;
    const int NG = grouping.n_groups;
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(static_cast<Index>(M) * (NG + 1),
                                              static_cast<Index>(M) * (N + 1));
    P.topLeftCorner(M, M).setIdentity();
    for (int m = 0; m < M; ++m)
        for (int n = 0; n < N; ++n)
            P(M + static_cast<Index>(m) * NG + grouping.group_of[n], M + static_cast<Index>(m) * N + n) = 1.0;
    return P;
}

cmat cov_uu(const cmat &cov_ss, int n_antennas, const Grouping &grouping)
{
    const Eigen::MatrixXd P = aggregation_matrix(n_antennas, grouping);
    if (P.cols() != cov_ss.rows())
        throw DomainError("cov_uu: grouping does not match the covariance dimension");
    const cmat Pc = P.cast<cplx>();
    return Pc * cov_ss * Pc.transpose();
}

cvec group_aggregate(const cvec &s, const cvec &mean_s, int n_antennas, const Grouping &grouping)
{
    return aggregation_matrix(n_antennas, grouping).cast<cplx>() * (s - mean_s);
}

MomentSet observation_moments(const cvec &mean_s, const cmat &cov_ss, const cmat &cov_uu,
                              const cmat &Z, const cmat &Z_G, double rho, double sigma_w2,
                              int n_users, int n_antennas, const Grouping &grouping)
{
    MomentSet m;
    const double a = std::sqrt(rho);
    m.mean_s = mean_s;
    m.cov_ss = cov_ss;
    m.cov_uu = cov_uu;
    m.mean_y = a * (Z * mean_s);
    m.cov_sy = a * (cov_ss * Z.adjoint());
    m.cov_uy = a * (cov_uu * Z_G.adjoint());
    m.noise_var = n_users * sigma_w2;
    m.cov_yy = rho * (Z * cov_ss * Z.adjoint());
    m.cov_yy.diagonal().array() += m.noise_var;
    m.cov_yy = linalg::hermitian_part(m.cov_yy);
    m.Z = Z;
    m.Z_G = Z_G;
    m.rho = rho;
    m.n_antennas = n_antennas;
    m.grouping = grouping;
    return m;
}

MomentSet build_moments(const ChannelStatistics &stats, int k, const TrainingConfig &config)
{
    const int M = stats.n_antennas();
    const cmat C = cov_ss(stats, k);
    return observation_moments(mean_s(stats, k), C, cov_uu(C, M, config.grouping),
                               build_Z(k, stats, config, false), build_Z(k, stats, config, true),
                               config.rho.at(k), config.sigma_w2, config.n_users(), M,
                               config.grouping);
}

cmat ideal_block_correlation(const Grouping &grouping)
{
    const int N = grouping.n_elements;
    cmat R = cmat::Zero(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (grouping.group_of[i] == grouping.group_of[j])
                R(i, j) = 1.0;
    return R;
}

ChannelStatistics with_ideal_correlation(const ChannelStatistics &stats, const Grouping &grouping)
{
    ChannelStatistics out = stats;
    const cmat R = ideal_block_correlation(grouping);
    out.R0 = R;
    for (auto &Rk : out.R)
        Rk = R;
    return out;
}

} // namespace risce

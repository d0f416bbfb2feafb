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

#include "risce/training.hpp"

namespace risce {

/// First and second moments of the normalized cascaded channel s_k, of the group-aggregate
/// vector u_k and of the combined observation y_k, together with the observation model
/// they were computed for.
struct MomentSet {
    cvec mean_s;
    cmat cov_ss;
    cmat cov_uu;
    cvec mean_y;
    cmat cov_sy;
    cmat cov_uy;
    cmat cov_yy;

    cmat Z;
    cmat Z_G;
    double rho = 0.0;
    double noise_var = 0.0;  ///< K sigma_w^2, variance of the combined noise
    int n_antennas = 0;
    Grouping grouping;
};

/// E[s_k] = sqrt(kA kg / ((1 + kA)(1 + kg))) [0_M; a_bar_1 .* g_bar_k; ...].
cvec mean_s(const ChannelStatistics &stats, int k);

/// Covariance of s_k. The direct-link block is I_M when the link is active and zero when it
/// is blocked (the normalized direct channel is then identically zero). Cascaded blocks
///   (m1, m2): A_bar_{m1,m2} .* R_g + [m1 == m2] R_A .* (G_bar + R_g)
/// with R_A = R_0 / (1 + kA), R_g = R_k / (1 + kg), G_bar = kg / (1 + kg) g_bar g_bar^H and
/// A_bar_{m1,m2} = kA / (1 + kA) a_bar_m1 a_bar_m2^H.
cmat cov_ss(const ChannelStatistics &stats, int k);

/// u = P (s - E[s]): keeps the direct block and sums each cascaded block over the groups.
/// Real M(N_G + 1) x M(N + 1) matrix.
Eigen::MatrixXd aggregation_matrix(int n_antennas, const Grouping &grouping);

cmat cov_uu(const cmat &cov_ss, int n_antennas, const Grouping &grouping);

/// u_k from a draw of s_k.
cvec group_aggregate(const cvec &s, const cvec &mean_s, int n_antennas, const Grouping &grouping);

/// E[y] = sqrt(rho) Z E[s], C_sy = sqrt(rho) C_ss Z^H, C_uy = sqrt(rho) C_uu Z_G^H,
/// C_yy = rho Z C_ss Z^H + K sigma_w^2 I.
MomentSet observation_moments(const cvec &mean_s, const cmat &cov_ss, const cmat &cov_uu,
                              const cmat &Z, const cmat &Z_G, double rho, double sigma_w2,
                              int n_users, int n_antennas, const Grouping &grouping);

/// All moments of user k under `config`.
MomentSet build_moments(const ChannelStatistics &stats, int k, const TrainingConfig &config);

/// I_{N_G} (x) 1 1^H generalized to any grouping: 1 where two elements share a group.
cmat ideal_block_correlation(const Grouping &grouping);

/// Copy of `stats` whose correlation matrices follow the ideal block model.
ChannelStatistics with_ideal_correlation(const ChannelStatistics &stats, const Grouping &grouping);

} // namespace risce

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

#include "risce/statistics.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace risce {

enum class EstimatorKind { LS, LMMSE, GroupingLS, GroupingLMMSE, CorrelatedGroupingLMMSE };

inline constexpr std::array<EstimatorKind, 5> all_estimators{
    EstimatorKind::LS, EstimatorKind::LMMSE, EstimatorKind::GroupingLS,
    EstimatorKind::GroupingLMMSE, EstimatorKind::CorrelatedGroupingLMMSE};

std::string_view to_string(EstimatorKind kind);
std::optional<EstimatorKind> parse_estimator(std::string_view name);

/// Grouped kinds train with T = N_G + 1 grouped patterns, the others with T = N + 1.
bool uses_grouped_training(EstimatorKind kind);

/// Relative cutoff for the pseudo-inverses in the correlated-grouping estimator and the
/// high-power limit.
inline constexpr double pinv_cutoff = 1e-10;

/// s_hat = offset + gain * y. Every estimator here is affine in the observation, so the
/// design is done once per (user, power) and reused for every trial.
struct AffineEstimator {
    cvec offset;
    cmat gain;
    /// An inner pseudo-inverse dropped directions that carry prior variance.
    bool degenerate = false;
    Index rank = 0;

    cvec apply(const cvec &y) const { return offset + gain * y; }
};

struct EstimateResult {
    cvec s_hat;
    std::optional<cmat> error_cov;
    std::optional<double> nmse_theory;
    std::optional<double> nmse_floor;
    bool degenerate = false;
};

/// s_hat = E[s] + C_sy C_yy^{-1} (y - E[y]).
AffineEstimator design_lmmse(const MomentSet &m);

/// s_hat = (Z^H Z)^{-1} Z^H y / sqrt(rho) over the columns of Z that are not identically zero
/// (a blocked direct link); those entries are estimated as 0. Throws NumericalError if the
/// remaining columns are rank-deficient.
AffineEstimator design_ls(const cmat &Z, double rho);

/// Group-level least squares on Z_G, spread equally over each group's elements.
AffineEstimator design_grouping_ls(const MomentSet &m);

/// Group-level LMMSE under the ideal block-correlation prior `cov_uu_ideal`, spread equally
/// over each group's elements.
AffineEstimator design_grouping_lmmse(const MomentSet &m, const cmat &cov_uu_ideal);

/// Two-stage estimator: LMMSE of the group sums u, then LMMSE of s from u_hat,
///   s_hat = E[s] + C_sy C_yy^{-1} C_uy^H (C_uy C_yy^{-1} C_uy^H)^+ C_uy C_yy^{-1} (y - E[y]).
/// Evaluated in the whitened domain: with W = C_yy^{-1/2} on the signal subspace,
/// E = W C_sy^H and F = W C_uy^H, the gain is E^H P_F W where P_F projects onto range(F).
/// Singular values of F below pinv_cutoff * sigma_max are dropped.
AffineEstimator design_correlated_grouping_lmmse(const MomentSet &m);

/// Equal-division expansion of a group-level vector back to M(N+1) entries.
Eigen::MatrixXd expansion_matrix(int n_antennas, const Grouping &grouping);

/// Error covariance C_ss - C_sy C_yy^{-1} C_sy^H of the conventional LMMSE estimator.
cmat lmmse_error_covariance(const MomentSet &m);

/// Error covariance of the correlated-grouping estimator,
///   C_ss - C_sy C_yy^{-1} C_uy^H (C_uy C_yy^{-1} C_uy^H)^+ C_uy C_yy^{-1} C_sy^H.
cmat error_covariance(const MomentSet &m);

struct AffineError {
    cmat cov;   ///< covariance of s - s_hat
    cvec bias;  ///< E[s - s_hat]
    double mse() const { return cov.trace().real() + bias.squaredNorm(); }
};

/// Exact error moments of any affine estimator under the true moments `m`.
AffineError affine_error(const AffineEstimator &est, const MomentSet &m);

/// Tr[error_cov] / Tr[cov_ss].
double normalized_mse(const cmat &error_cov, const cmat &cov_ss);

struct AsymptoticMse {
    double nmse = 0.0;   ///< normalized by Tr[C_ss]
    double trace = 0.0;  ///< raw trace
    bool rank_deficient = false;
};

/// High-power limit of the correlated-grouping error: with A = Z C_ss Z^H,
///   Tr[C_ss - C_ss Z^H A^+ Z_G C_uu (C_uu Z_G^H A^+ Z_G C_uu)^+ C_uu Z_G^H A^+ Z C_ss].
AsymptoticMse asymptotic_mse(const MomentSet &m);

/// High-power normalized MSE floor of `kind` under the training in `m`.
/// `cov_uu_ideal` is only read for GroupingLMMSE.
double estimator_floor(EstimatorKind kind, const MomentSet &m, const cmat &cov_uu_ideal);

/// Build the affine design of `kind`. `cov_uu_ideal` is only read for GroupingLMMSE.
AffineEstimator design_estimator(EstimatorKind kind, const MomentSet &m, const cmat &cov_uu_ideal);

EstimateResult lmmse_conventional(const cvec &y, const MomentSet &m);
EstimateResult ls_conventional(const cvec &y, const cmat &Z, double rho);
EstimateResult grouping_baseline(const cvec &y, const MomentSet &m, const cmat &cov_uu_ideal,
                                 EstimatorKind kind);
EstimateResult correlated_grouping_lmmse(const cvec &y, const MomentSet &m);

} // namespace risce

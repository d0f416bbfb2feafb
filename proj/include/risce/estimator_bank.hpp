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

#include "risce/estimators.hpp"

#include <map>
#include <string>
#include <vector>

namespace risce {

/// Pilot-power-independent precomputation for one user and one training round.
///
/// Everything that scales with rho factors out of A = Z C_ss Z^H, so its eigenbasis, the
/// least-squares pseudo-inverses and the high-power floors are computed once and each pilot
/// power costs only diagonal rescaling plus, when a design is requested, one product.
/// Results agree with the MomentSet functions in estimators.hpp to rounding.
class EstimatorBank {
public:
    /// Floors and constant parts are prepared for `kinds` only. A kind whose preparation
    /// fails is recorded in error() and reported again by evaluate().
    EstimatorBank(const ChannelStatistics &stats, int k, const TrainingConfig &training,
                  const std::vector<EstimatorKind> &kinds);

    struct Evaluation {
        AffineEstimator design;  ///< empty gain unless requested
        double mse = 0.0;        ///< raw E||s - s_hat||^2
        bool degenerate = false;
    };

    /// Closed-form MSE at pilot power `rho`, and the affine design if `with_design`.
    Evaluation evaluate(EstimatorKind kind, double rho, bool with_design) const;

    /// Raw high-power floor Tr[(I - W_inf Z) C_ss (I - W_inf Z)^H].
    double floor(EstimatorKind kind) const;

    /// The high-power inner Gram matrix lost directions that carry prior variance.
    bool floor_degenerate(EstimatorKind kind) const;

    /// Empty when `kind` was prepared without error.
    std::string error(EstimatorKind kind) const;

    double prior_trace() const { return prior_trace_; }
    const cvec &mean() const { return mean_s_; }

private:
    struct Spectrum {
        Eigen::VectorXd d;  ///< eigenvalues of A above the cutoff
        cmat V;             ///< matching eigenvectors, MT x r
        cmat B;             ///< V^H Z C_ss, r x L
        cmat Bu;            ///< V^H Z_G C_uu, r x d_u
    };
    Spectrum spectrum(double rel_cutoff) const;

    // Closed-form MSE of s_hat = offset + X H (y - E[y]) with a group-level gain H.
    double group_gain_mse(const cmat &H, double rho) const;
    void require(EstimatorKind kind) const;

    cvec mean_s_;
    cmat cov_ss_;
    cmat cov_uu_;
    cmat Z_;
    cmat Z_G_;
    Eigen::MatrixXd X_;       ///< expansion, L x d_u
    Eigen::VectorXd xtx_;     ///< diagonal of X^T X
    cmat A_;                  ///< Z C_ss Z^H
    cmat ZC_;                 ///< Z C_ss
    cmat ZCX_;                ///< Z C_ss X
    cvec ZEs_;                ///< Z E[s]
    double noise_var_ = 0.0;  ///< K sigma_w^2
    double prior_trace_ = 0.0;
    Index informative_u_ = 0;

    Eigen::VectorXd eig_d_;   ///< all eigenvalues of A, ascending
    cmat eig_V_;
    Spectrum whitening_;      ///< cutoff for finite-power whitening

    cmat ls_gain_;            ///< Z^+ over nonzero columns, L x MT
    double ls_const_ = 0.0;   ///< rho-independent part of the LS MSE
    double ls_noise_ = 0.0;   ///< ||Z^+||_F^2
    cmat gls_gain_;           ///< Z_G^+, d_u x MT
    cmat ideal_P_;            ///< C_uu,ideal Z_G^H, d_u x MT
    cmat ideal_S_;            ///< Z_G C_uu,ideal Z_G^H

    std::map<EstimatorKind, double> floor_;
    std::map<EstimatorKind, bool> floor_degenerate_;
    std::map<EstimatorKind, std::string> error_;
};

} // namespace risce

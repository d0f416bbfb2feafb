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

#include "risce/config.hpp"

#include <Eigen/SVD>

namespace risce::testing {

inline const ChannelStatistics &desk_stats()
{
    static const ChannelStatistics st = [] {
        const Scenario s = desk_scenario();
        return build_statistics(s.geometry, s.fading);
    }();
    return st;
}

inline TrainingConfig desk_training(int n_groups, double rho, int T = 0)
{
    const Scenario s = desk_scenario();
    const ChannelStatistics &st = desk_stats();
    return make_training_config(scenario_grouping(s, n_groups), st.n_users(), T,
                                std::vector<double>(st.n_users(), rho), s.sigma_w2);
}

/// Pilot power at `snr_db` on the default desk axis.
inline double desk_rho(double snr_db)
{
    SweepConfig c = desk_run_config().sweep;
    return pilot_power(c, desk_stats(), snr_db);
}

/// SVD-based pseudo-inverse with a relative singular value cutoff.
inline cmat svd_pinv(const cmat &A, double rel_cutoff)
{
    Eigen::JacobiSVD<cmat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd s = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_cutoff * s(0))
            inv(i) = 1.0 / s(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

/// Conventional LMMSE gain by explicit inversion of C_yy.
inline cmat literal_lmmse_gain(const MomentSet &m) { return m.cov_sy * m.cov_yy.inverse(); }

/// Two-stage gain written out with explicit inverses and an SVD pseudo-inverse.
inline cmat literal_cg_gain(const MomentSet &m)
{
    const cmat Yi = m.cov_yy.inverse();
    const cmat inner = m.cov_uy * Yi * m.cov_uy.adjoint();
    return m.cov_sy * Yi * m.cov_uy.adjoint() * svd_pinv(inner, pinv_cutoff) * m.cov_uy * Yi;
}

/// Error covariance C_ss - G C_sy^H of a gain of the form G = C_sy (...) with (...) Hermitian.
inline cmat literal_error(const MomentSet &m, const cmat &G) { return m.cov_ss - G * m.cov_sy.adjoint(); }

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double rel_diff(const cmat &a, const cmat &b)
{
    return (a - b).norm() / std::max(b.norm(), 1e-300);
}

} // namespace risce::testing

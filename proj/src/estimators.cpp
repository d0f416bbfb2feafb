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

#include "risce/estimators.hpp"

#include <cmath>
#include <vector>

namespace risce {

namespace {

// Number of coordinates with nonzero prior variance (a blocked direct link contributes none).
Index informative_dimension(const cmat &cov)
{
    const Eigen::VectorXd d = cov.diagonal().real();
    if (d.size() == 0)
        return 0;
    const double cut = 1e-12 * d.cwiseAbs().maxCoeff();
    return (d.array() > cut).count();
}

std::vector<Index> nonzero_columns(const cmat &Z)
{
    std::vector<Index> cols;
    for (Index j = 0; j < Z.cols(); ++j)
        if (Z.col(j).squaredNorm() > 0.0)
            cols.push_back(j);
    return cols;
}

// Minimum-norm left inverse over the nonzero columns of Z; rows of excluded columns are zero.
cmat column_pinv(const cmat &Z, const char *what)
{
    const std::vector<Index> cols = nonzero_columns(Z);
    cmat F(Z.rows(), static_cast<Index>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        F.col(static_cast<Index>(j)) = Z.col(cols[j]);
    Index rank = 0;
    const cmat Fp = linalg::lstsq(F, cmat::Identity(Z.rows(), Z.rows()), 1e-12, &rank);
    if (rank < F.cols())
        throw NumericalError(std::string(what) + ": observation matrix is rank-deficient (rank " +
                             std::to_string(rank) + " of " + std::to_string(F.cols()) +
                             " columns); more training patterns are needed");
    cmat out = cmat::Zero(Z.cols(), Z.rows());
    for (std::size_t j = 0; j < cols.size(); ++j)
        out.row(cols[j]) = Fp.row(static_cast<Index>(j));
    return out;
}

AffineEstimator centered(cmat gain, const MomentSet &m)
{
    AffineEstimator est;
    est.offset = m.mean_s - gain * m.mean_y;
    est.gain = std::move(gain);
    est.rank = est.gain.rows();
    return est;
}

double floor_from_limit_gain(const cmat &limit_gain, const MomentSet &m)
{
    const Index n = m.cov_ss.rows();
    const cmat residual = cmat::Identity(n, n) - limit_gain * m.Z;
    const cmat err = residual * m.cov_ss * residual.adjoint();
    return normalized_mse(err, m.cov_ss);
}

// C_yy = rho A + K sigma^2 I with A = Z C_ss Z^H. Whitening uses the eigenbasis of A so that
// the noise floor is exact even when rho lambda_max(A) / (K sigma^2) exceeds 1 / eps. Directions
// with eigenvalue below null_cutoff * lambda_max carry no signal and are dropped.
constexpr double null_cutoff = 1e-12;

struct Whitened {
    cmat W;  // C_yy^{-1/2} restricted to range(A), r x MT
    cmat E;  // W C_sy^H
    cmat F;  // W C_uy^H
};

Whitened whiten(const MomentSet &m, bool with_groups)
{
    const cmat A = linalg::hermitian_part(m.Z * m.cov_ss * m.Z.adjoint());
    Eigen::SelfAdjointEigenSolver<cmat> eig(A);
    if (eig.info() != Eigen::Success)
        throw NumericalError("whitening: eigendecomposition of Z C_ss Z^H failed");
    const Eigen::VectorXd &d = eig.eigenvalues();
    const double cut = null_cutoff * std::max(d.maxCoeff(), 0.0);
    std::vector<Index> keep;
    for (Index i = 0; i < d.size(); ++i)
        if (d(i) > cut)
            keep.push_back(i);
    Whitened w;
    w.W.resize(static_cast<Index>(keep.size()), A.rows());
    for (std::size_t j = 0; j < keep.size(); ++j) {
        const double lambda = m.rho * d(keep[j]) + m.noise_var;
        if (!(lambda > 0.0))
            throw NumericalError("whitening: observation covariance is singular");
        w.W.row(static_cast<Index>(j)) = eig.eigenvectors().col(keep[j]).adjoint() / std::sqrt(lambda);
    }
    w.E = w.W * m.cov_sy.adjoint();
    if (with_groups)
        w.F = w.W * m.cov_uy.adjoint();
    return w;
}

} // namespace

std::string_view to_string(EstimatorKind kind)
{
    switch (kind) {
    case EstimatorKind::LS: return "LS";
    case EstimatorKind::LMMSE: return "LMMSE";
    case EstimatorKind::GroupingLS: return "GroupingLS";
    case EstimatorKind::GroupingLMMSE: return "GroupingLMMSE";
    case EstimatorKind::CorrelatedGroupingLMMSE: return "CorrelatedGroupingLMMSE";
    }
    return "?";
}

std::optional<EstimatorKind> parse_estimator(std::string_view name)
{
    for (EstimatorKind k : all_estimators)
        if (to_string(k) == name)
            return k;
    return std::nullopt;
}

bool uses_grouped_training(EstimatorKind kind)
{
    return kind == EstimatorKind::GroupingLS || kind == EstimatorKind::GroupingLMMSE ||
           kind == EstimatorKind::CorrelatedGroupingLMMSE;
}

Eigen::MatrixXd expansion_matrix(int n_antennas, const Grouping &grouping)
{
    Eigen::MatrixXd P = aggregation_matrix(n_antennas, grouping).transpose();
    P.bottomRows(P.rows() - n_antennas) /= grouping.group_size();
    return P;
}

AffineEstimator design_lmmse(const MomentSet &m)
{
    const Whitened w = whiten(m, false);
    return centered(w.E.adjoint() * w.W, m);
}

AffineEstimator design_ls(const cmat &Z, double rho)
{
    if (!(rho > 0.0))
        throw DomainError("LS: pilot power must be > 0");
    AffineEstimator est;
    est.gain = column_pinv(Z, "LS") / std::sqrt(rho);
    est.offset = cvec::Zero(Z.cols());
    est.rank = static_cast<Index>(nonzero_columns(Z).size());
    return est;
}

AffineEstimator design_grouping_ls(const MomentSet &m)
{
    if (!(m.rho > 0.0))
        throw DomainError("GroupingLS: pilot power must be > 0");
    const cmat group_gain = column_pinv(m.Z_G, "GroupingLS") / std::sqrt(m.rho);
    return centered(expansion_matrix(m.n_antennas, m.grouping).cast<cplx>() * group_gain, m);
}

AffineEstimator design_grouping_lmmse(const MomentSet &m, const cmat &cov_uu_ideal)
{
    const double a = std::sqrt(m.rho);
    cmat cov_yy = m.rho * (m.Z_G * cov_uu_ideal * m.Z_G.adjoint());
    cov_yy.diagonal().array() += m.noise_var;
    const auto llt = linalg::factor_hpd(cov_yy, "GroupingLMMSE: ideal-model C_yy");
    const cmat cov_uy = a * (cov_uu_ideal * m.Z_G.adjoint());
    const cmat group_gain = llt.solve(cov_uy.adjoint()).adjoint();
    return centered(expansion_matrix(m.n_antennas, m.grouping).cast<cplx>() * group_gain, m);
}

AffineEstimator design_correlated_grouping_lmmse(const MomentSet &m)
{
    const Whitened w = whiten(m, true);
    Index rank = 0;
    const cmat Q = linalg::range_basis(w.F, pinv_cutoff, &rank);
    AffineEstimator est = centered((w.E.adjoint() * Q) * (Q.adjoint() * w.W), m);
    est.rank = rank;
    est.degenerate = rank < informative_dimension(m.cov_uu);
    return est;
}

cmat lmmse_error_covariance(const MomentSet &m)
{
    const Whitened w = whiten(m, false);
    return linalg::hermitian_part(m.cov_ss - w.E.adjoint() * w.E);
}

cmat error_covariance(const MomentSet &m)
{
    const Whitened w = whiten(m, true);
    const cmat Q = linalg::range_basis(w.F, pinv_cutoff);
    const cmat EQ = w.E.adjoint() * Q;
    return linalg::hermitian_part(m.cov_ss - EQ * EQ.adjoint());
}

AffineError affine_error(const AffineEstimator &est, const MomentSet &m)
{
    const cmat &W = est.gain;
    const cmat WC = W * m.cov_sy.adjoint();
    AffineError out;
    out.cov = linalg::hermitian_part(m.cov_ss - WC - WC.adjoint() + W * m.cov_yy * W.adjoint());
    out.bias = m.mean_s - est.offset - W * m.mean_y;
    return out;
}

double normalized_mse(const cmat &error_cov, const cmat &cov_ss)
{
    const double denom = cov_ss.trace().real();
    if (!(denom > 0.0))
        throw DomainError("normalized_mse: prior covariance has zero trace");
    return std::max(0.0, error_cov.trace().real()) / denom;
}

AsymptoticMse asymptotic_mse(const MomentSet &m)
{
    const cmat &C = m.cov_ss;
    const cmat &Cu = m.cov_uu;
    const auto outer = linalg::pinv_hermitian(m.Z * C * m.Z.adjoint(), pinv_cutoff);
    const cmat X = C * m.Z.adjoint() * outer.matrix * m.Z_G * Cu;
    const auto inner = linalg::pinv_hermitian(Cu * m.Z_G.adjoint() * outer.matrix * m.Z_G * Cu,
                                              pinv_cutoff);
    const cmat err = C - X * inner.matrix * X.adjoint();

    AsymptoticMse out;
    out.trace = std::max(0.0, err.trace().real());
    out.nmse = normalized_mse(err, C);
    out.rank_deficient = inner.rank < informative_dimension(Cu);
    return out;
}

double estimator_floor(EstimatorKind kind, const MomentSet &m, const cmat &cov_uu_ideal)
{
    switch (kind) {
    case EstimatorKind::LS:
        return floor_from_limit_gain(design_ls(m.Z, 1.0).gain, m);
    case EstimatorKind::GroupingLS: {
        MomentSet unit = m;
        unit.rho = 1.0;
        return floor_from_limit_gain(design_grouping_ls(unit).gain, m);
    }
    case EstimatorKind::LMMSE: {
        const auto A = linalg::pinv_hermitian(m.Z * m.cov_ss * m.Z.adjoint(), pinv_cutoff);
        return floor_from_limit_gain(m.cov_ss * m.Z.adjoint() * A.matrix, m);
    }
    case EstimatorKind::GroupingLMMSE: {
        const auto A = linalg::pinv_hermitian(m.Z_G * cov_uu_ideal * m.Z_G.adjoint(), pinv_cutoff);
        const cmat group_gain = cov_uu_ideal * m.Z_G.adjoint() * A.matrix;
        return floor_from_limit_gain(
            expansion_matrix(m.n_antennas, m.grouping).cast<cplx>() * group_gain, m);
    }
    case EstimatorKind::CorrelatedGroupingLMMSE:
        return asymptotic_mse(m).nmse;
    }
    return 0.0;
}

AffineEstimator design_estimator(EstimatorKind kind, const MomentSet &m, const cmat &cov_uu_ideal)
{
    switch (kind) {
    case EstimatorKind::LS: return design_ls(m.Z, m.rho);
    case EstimatorKind::LMMSE: return design_lmmse(m);
    case EstimatorKind::GroupingLS: return design_grouping_ls(m);
    case EstimatorKind::GroupingLMMSE: return design_grouping_lmmse(m, cov_uu_ideal);
    case EstimatorKind::CorrelatedGroupingLMMSE: return design_correlated_grouping_lmmse(m);
    }
    throw std::logic_error("unknown estimator kind");
}

EstimateResult lmmse_conventional(const cvec &y, const MomentSet &m)
{
    EstimateResult r;
    r.s_hat = design_lmmse(m).apply(y);
    r.error_cov = lmmse_error_covariance(m);
    r.nmse_theory = normalized_mse(*r.error_cov, m.cov_ss);
    r.nmse_floor = estimator_floor(EstimatorKind::LMMSE, m, {});
    return r;
}

EstimateResult ls_conventional(const cvec &y, const cmat &Z, double rho)
{
    EstimateResult r;
    r.s_hat = design_ls(Z, rho).apply(y);
    return r;
}

EstimateResult grouping_baseline(const cvec &y, const MomentSet &m, const cmat &cov_uu_ideal,
                                 EstimatorKind kind)
{
    if (kind != EstimatorKind::GroupingLS && kind != EstimatorKind::GroupingLMMSE)
        throw std::invalid_argument("grouping_baseline: kind must be GroupingLS or GroupingLMMSE");
    const AffineEstimator est = design_estimator(kind, m, cov_uu_ideal);
    const AffineError err = affine_error(est, m);
    EstimateResult r;
    r.s_hat = est.apply(y);
    r.error_cov = err.cov + err.bias * err.bias.adjoint();
    r.nmse_theory = err.mse() / m.cov_ss.trace().real();
    r.nmse_floor = estimator_floor(kind, m, cov_uu_ideal);
    return r;
}

EstimateResult correlated_grouping_lmmse(const cvec &y, const MomentSet &m)
{
    const AffineEstimator est = design_correlated_grouping_lmmse(m);
    EstimateResult r;
    r.s_hat = est.apply(y);
    r.degenerate = est.degenerate;
    r.error_cov = error_covariance(m);
    r.nmse_theory = normalized_mse(*r.error_cov, m.cov_ss);
    r.nmse_floor = asymptotic_mse(m).nmse;
    return r;
}

} // namespace risce

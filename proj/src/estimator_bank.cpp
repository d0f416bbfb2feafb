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

#include "risce/estimator_bank.hpp"

#include <algorithm>
#include <cmath>

namespace risce {

namespace {

constexpr double whitening_cutoff = 1e-12;

// Re Tr(P Q) without forming the product.
double trace_product(const cmat &P, const cmat &Q)
{
    return P.transpose().cwiseProduct(Q).sum().real();
}

Index count_informative(const cmat &cov)
{
    const Eigen::VectorXd d = cov.diagonal().real();
    if (d.size() == 0)
        return 0;
    const double cut = 1e-12 * d.cwiseAbs().maxCoeff();
    return (d.array() > cut).count();
}

} // namespace

EstimatorBank::EstimatorBank(const ChannelStatistics &stats, int k, const TrainingConfig &training,
                             const std::vector<EstimatorKind> &kinds)
{
    const int M = stats.n_antennas();
    const Grouping &grouping = training.grouping;
    mean_s_ = mean_s(stats, k);
    cov_ss_ = cov_ss(stats, k);
    cov_uu_ = cov_uu(cov_ss_, M, grouping);
    Z_ = build_Z(k, stats, training, false);
    Z_G_ = build_Z(k, stats, training, true);
    X_ = expansion_matrix(M, grouping);
    xtx_ = X_.colwise().squaredNorm().transpose();
    noise_var_ = training.n_users() * training.sigma_w2;
    prior_trace_ = cov_ss_.trace().real();
    informative_u_ = count_informative(cov_uu_);

    ZC_ = Z_ * cov_ss_;
    const cmat &ZC = ZC_;
    A_ = linalg::hermitian_part(ZC * Z_.adjoint());
    ZCX_ = ZC * X_.cast<cplx>();
    ZEs_ = Z_ * mean_s_;

    Eigen::SelfAdjointEigenSolver<cmat> eig(A_);
    if (eig.info() != Eigen::Success)
        throw NumericalError("estimator bank: eigendecomposition of Z C_ss Z^H failed");
    eig_d_ = eig.eigenvalues();
    eig_V_ = eig.eigenvectors();
    whitening_ = spectrum(whitening_cutoff);

    for (EstimatorKind kind : kinds) {
        if (floor_.count(kind) || error_.count(kind))
            continue;
        try {
            double fl = 0.0;
            bool degenerate = false;
            switch (kind) {
            case EstimatorKind::LMMSE: {
                const Spectrum sp = spectrum(pinv_cutoff);
                fl = prior_trace_;
                for (Index i = 0; i < sp.d.size(); ++i)
                    fl -= sp.B.row(i).squaredNorm() / sp.d(i);
                break;
            }
            case EstimatorKind::CorrelatedGroupingLMMSE: {
                const Spectrum sp = spectrum(pinv_cutoff);
                const Eigen::VectorXd inv_sqrt = sp.d.cwiseSqrt().cwiseInverse();
                const cmat Bt = inv_sqrt.asDiagonal() * sp.B;
                const cmat But = inv_sqrt.asDiagonal() * sp.Bu;
                const cmat Xm = Bt.adjoint() * But;
                const auto inner = linalg::pinv_hermitian(But.adjoint() * But, pinv_cutoff);
                fl = prior_trace_ - trace_product(inner.matrix, Xm.adjoint() * Xm);
                degenerate = inner.rank < informative_u_;
                break;
            }
            case EstimatorKind::LS: {
                ls_gain_ = design_ls(Z_, 1.0).gain;
                fl = prior_trace_ - 2.0 * trace_product(ls_gain_, ZC) +
                     trace_product(ls_gain_ * A_, ls_gain_.adjoint());
                const cvec bias = mean_s_ - ls_gain_ * ZEs_;
                ls_const_ = fl + bias.squaredNorm();
                ls_noise_ = ls_gain_.squaredNorm();
                break;
            }
            case EstimatorKind::GroupingLS:
                gls_gain_ = design_ls(Z_G_, 1.0).gain;
                fl = group_gain_mse(gls_gain_, 1.0);
                break;
            case EstimatorKind::GroupingLMMSE: {
                const ChannelStatistics ideal = with_ideal_correlation(stats, grouping);
                const cmat C_id = cov_uu(cov_ss(ideal, k), M, grouping);
                ideal_P_ = C_id * Z_G_.adjoint();
                ideal_S_ = linalg::hermitian_part(Z_G_ * ideal_P_);
                const auto Sp = linalg::pinv_hermitian(ideal_S_, pinv_cutoff);
                fl = group_gain_mse(ideal_P_ * Sp.matrix, 1.0);
                break;
            }
            }
            // Cancellation residue below rounding level is reported as an exact zero.
            floor_[kind] = fl > 1e-12 * prior_trace_ ? fl : 0.0;
            floor_degenerate_[kind] = degenerate;
        } catch (const std::exception &e) {
            error_[kind] = e.what();
        }
    }
}

EstimatorBank::Spectrum EstimatorBank::spectrum(double rel_cutoff) const
{
    const double cut = rel_cutoff * std::max(eig_d_.maxCoeff(), 0.0);
    std::vector<Index> keep;
    for (Index i = 0; i < eig_d_.size(); ++i)
        if (eig_d_(i) > cut)
            keep.push_back(i);
    Spectrum sp;
    sp.d.resize(static_cast<Index>(keep.size()));
    sp.V.resize(eig_V_.rows(), sp.d.size());
    for (std::size_t j = 0; j < keep.size(); ++j) {
        sp.d(static_cast<Index>(j)) = eig_d_(keep[j]);
        sp.V.col(static_cast<Index>(j)) = eig_V_.col(keep[j]);
    }
    sp.B = sp.V.adjoint() * ZC_;
    sp.Bu = sp.V.adjoint() * (Z_G_ * cov_uu_);
    return sp;
}

// s - s_hat = (I - sqrt(rho) X H Z)(s - E[s]) - X H w. This returns the signal part
//   Tr C - 2 sqrt(rho) Re Tr(H Z C X) + rho Tr(X H A H^H X^T);
// callers add the noise part sigma'^2 Tr(X H H^H X^T). Limit gains are passed with rho = 1.
double EstimatorBank::group_gain_mse(const cmat &H, double rho) const
{
    const cmat HA = H * A_;
    const Eigen::VectorXd signal = HA.cwiseProduct(H.conjugate()).rowwise().sum().real();
    return prior_trace_ - 2.0 * std::sqrt(rho) * trace_product(H, ZCX_) + rho * xtx_.dot(signal);
}

void EstimatorBank::require(EstimatorKind kind) const
{
    if (const auto it = error_.find(kind); it != error_.end())
        throw NumericalError(std::string(to_string(kind)) + ": " + it->second);
    if (!floor_.count(kind))
        throw std::logic_error(std::string("estimator bank: ") + std::string(to_string(kind)) +
                               " was not prepared");
}

double EstimatorBank::floor(EstimatorKind kind) const
{
    require(kind);
    return floor_.at(kind);
}

bool EstimatorBank::floor_degenerate(EstimatorKind kind) const
{
    require(kind);
    return floor_degenerate_.at(kind);
}

std::string EstimatorBank::error(EstimatorKind kind) const
{
    const auto it = error_.find(kind);
    return it == error_.end() ? std::string{} : it->second;
}

EstimatorBank::Evaluation EstimatorBank::evaluate(EstimatorKind kind, double rho,
                                                  bool with_design) const
{
    require(kind);
    if (!(rho > 0.0))
        throw DomainError("pilot power must be > 0");
    const double a = std::sqrt(rho);
    Evaluation out;
    auto centered = [&](cmat gain) {
        out.design.offset = mean_s_ - gain * (a * ZEs_);
        out.design.gain = std::move(gain);
        out.design.rank = out.design.gain.rows();
    };
    auto noise_term = [&](const cmat &H) { return noise_var_ * xtx_.dot(H.rowwise().squaredNorm()); };

    switch (kind) {
    case EstimatorKind::LMMSE: {
        const Spectrum &sp = whitening_;
        const Eigen::VectorXd inv = (rho * sp.d.array() + noise_var_).inverse().matrix();
        out.mse = prior_trace_ - rho * inv.dot(sp.B.rowwise().squaredNorm());
        if (with_design)
            centered(sp.B.adjoint() * ((a * inv).asDiagonal() * sp.V.adjoint()));
        break;
    }
    case EstimatorKind::CorrelatedGroupingLMMSE: {
        const Spectrum &sp = whitening_;
        const Eigen::VectorXd inv_sqrt = (rho * sp.d.array() + noise_var_).rsqrt().matrix();
        const cmat E = (a * inv_sqrt).asDiagonal() * sp.B;
        const cmat F = (a * inv_sqrt).asDiagonal() * sp.Bu;
        Index rank = 0;
        const cmat Q = linalg::range_basis(F, pinv_cutoff, &rank);
        const cmat EQ = E.adjoint() * Q;
        out.mse = prior_trace_ - EQ.squaredNorm();
        out.degenerate = rank < informative_u_;
        if (with_design) {
            centered(EQ * (Q.adjoint() * (inv_sqrt.asDiagonal() * sp.V.adjoint())));
            out.design.rank = rank;
            out.design.degenerate = out.degenerate;
        }
        break;
    }
    case EstimatorKind::LS:
        out.mse = ls_const_ + noise_var_ / rho * ls_noise_;
        if (with_design) {
            out.design.gain = ls_gain_ / a;
            out.design.offset = cvec::Zero(ls_gain_.rows());
            out.design.rank = ls_gain_.rows();
        }
        break;
    case EstimatorKind::GroupingLS: {
        const cmat H = gls_gain_ / a;
        out.mse = group_gain_mse(H, rho) + noise_term(H);
        if (with_design)
            centered(X_.cast<cplx>() * H);
        break;
    }
    case EstimatorKind::GroupingLMMSE: {
        cmat S = rho * ideal_S_;
        S.diagonal().array() += noise_var_;
        const auto llt = linalg::factor_hpd(S, "GroupingLMMSE: ideal-model C_yy");
        const cmat H = a * llt.solve(ideal_P_.adjoint()).adjoint();
        out.mse = group_gain_mse(H, rho) + noise_term(H);
        if (with_design)
            centered(X_.cast<cplx>() * H);
        break;
    }
    }
    out.mse = std::max(0.0, out.mse);
    return out;
}

} // namespace risce

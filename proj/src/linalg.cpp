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

#include "risce/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace risce::linalg {

cmat hermitian_part(const cmat &A) { return 0.5 * (A + A.adjoint()); }

double min_eigenvalue(const cmat &A)
{
    if (A.size() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<cmat> es(hermitian_part(A), Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_abs(const cmat &A) { return A.size() == 0 ? 0.0 : A.cwiseAbs().maxCoeff(); }

cmat psd_factor(const cmat &R, double tol)
{
    Eigen::SelfAdjointEigenSolver<cmat> es(hermitian_part(R));
    if (es.info() != Eigen::Success)
        throw NumericalError("psd_factor: eigendecomposition failed");
    Eigen::VectorXd lambda = es.eigenvalues();
    const double scale = std::max(1.0, lambda.maxCoeff());
    if (lambda.minCoeff() < -tol * scale)
        throw NumericalError("psd_factor: matrix is not positive semidefinite (min eigenvalue " +
                             std::to_string(lambda.minCoeff()) + ")");
    lambda = lambda.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * lambda.asDiagonal();
}

PseudoInverse pinv_hermitian(const cmat &A, double rel_cutoff)
{
    PseudoInverse out;
    out.matrix = cmat::Zero(A.cols(), A.rows());
    if (A.size() == 0)
        return out;
    Eigen::SelfAdjointEigenSolver<cmat> es(hermitian_part(A));
    if (es.info() != Eigen::Success)
        throw NumericalError("pinv_hermitian: eigendecomposition failed");
    const Eigen::VectorXd &lambda = es.eigenvalues();
    const double cut = rel_cutoff * lambda.cwiseAbs().maxCoeff();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(lambda.size());
    for (Index i = 0; i < lambda.size(); ++i) {
        if (std::abs(lambda(i)) > cut) {
            inv(i) = 1.0 / lambda(i);
            ++out.rank;
        }
    }
    out.matrix = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
    return out;
}

cmat range_basis(const cmat &F, double rel_cutoff, Index *rank)
{
    Eigen::JacobiSVD<cmat> svd(F, Eigen::ComputeThinU);
    const Eigen::VectorXd &sv = svd.singularValues();
    Index r = 0;
    if (sv.size() > 0 && sv(0) > 0.0) {
        const double cut = rel_cutoff * sv(0);
        while (r < sv.size() && sv(r) > cut)
            ++r;
    }
    if (rank)
        *rank = r;
    return svd.matrixU().leftCols(r);
}

cmat lstsq(const cmat &F, const cmat &B, double rel_cutoff, Index *rank)
{
    Eigen::CompleteOrthogonalDecomposition<cmat> cod;
    cod.setThreshold(rel_cutoff);
    cod.compute(F);
    if (rank)
        *rank = cod.rank();
    return cod.solve(B);
}

Eigen::LLT<cmat> factor_hpd(const cmat &A, const std::string &what)
{
    Eigen::LLT<cmat> llt(hermitian_part(A));
    if (llt.info() != Eigen::Success)
        throw NumericalError(what + ": matrix is not positive definite");
    return llt;
}

} // namespace risce::linalg

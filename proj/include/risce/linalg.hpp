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

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace risce {

using cplx = std::complex<double>;
using cvec = Eigen::VectorXcd;
using cmat = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Argument outside the mathematical domain of an operation (negative distance, eta > 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inconsistent or unidentifiable configuration (e.g. too few training patterns).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Factorization failed or a matrix is singular where it must not be.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace linalg {

/// (A + A^H) / 2
cmat hermitian_part(const cmat &A);

/// Smallest eigenvalue of the Hermitian part of A.
double min_eigenvalue(const cmat &A);

double max_abs(const cmat &A);

/// Factor L with L L^H = R for a Hermitian PSD matrix, via eigendecomposition.
/// Eigenvalues in [-tol * max(1, lambda_max), 0) are clipped to zero; anything more
/// negative throws NumericalError. Works on singular R where Cholesky does not.
cmat psd_factor(const cmat &R, double tol = 1e-10);

struct PseudoInverse {
    cmat matrix;
    Index rank = 0;
};

/// Moore-Penrose inverse of a Hermitian matrix. Eigenvalues with
/// |lambda| <= rel_cutoff * max|lambda| are treated as zero.
PseudoInverse pinv_hermitian(const cmat &A, double rel_cutoff = 1e-10);

/// Orthonormal basis of range(F). Singular values <= rel_cutoff * sigma_max are dropped.
cmat range_basis(const cmat &F, double rel_cutoff, Index *rank = nullptr);

/// Minimum-norm least-squares solution of F x = B.
cmat lstsq(const cmat &F, const cmat &B, double rel_cutoff = 1e-12, Index *rank = nullptr);

/// Cholesky factorization of a Hermitian positive definite matrix; throws NumericalError
/// with `what` in the message if A is not numerically positive definite.
Eigen::LLT<cmat> factor_hpd(const cmat &A, const std::string &what);

} // namespace linalg
} // namespace risce

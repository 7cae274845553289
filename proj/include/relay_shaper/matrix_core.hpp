// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace relay_shaper
{

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Raised when an input violates a documented precondition (non-Hermitian input,
/// indefinite matrix where PSD is required, singular matrix where PD is required).
class ContractViolation : public std::invalid_argument
{
public:
    explicit ContractViolation(const std::string &what) : std::invalid_argument(what) {}
};

/// Hermitian eigendecomposition M = U diag(values) U^H with nonincreasing eigenvalues.
struct OrderedEVD
{
    CMat vectors; // columns are eigenvectors
    RVec values;  // nonincreasing
};

/// M = left * diag(singulars) * right^H with full unitary factors.
struct OrderedSVD
{
    CMat left;
    RVec singulars; // length min(rows, cols), nonincreasing
    CMat right;

    /// Rectangular diagonal matrix of singular values (rows x cols of the input).
    CMat sigma() const;
};

/// Lower-triangular Cholesky factor with real positive diagonal.
struct CholeskyLower
{
    CMat L;
};

// Tolerances shared by every decomposition.
inline constexpr double kHermitianTol = 1e-10; // relative, for the Hermitian precondition
inline constexpr double kPsdRepairTol = 1e-9;  // eigenvalues above -kPsdRepairTol*||M|| are clipped to 0

/// Relative Frobenius distance ||A - B|| / max(||B||, tiny).
double rel_frobenius(const CMat &A, const CMat &B);

/// ||M - M^H||_F relative to ||M||_F.
double hermitian_defect(const CMat &M);

/// Hermitian part (M + M^H)/2.
CMat hermitian_part(const CMat &M);

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are returned in nonincreasing order and eigenvalues in
/// [-1e-9 ||M||_2, 0) are clipped to zero. Each eigenvector column is rotated so that
/// its first component of largest magnitude is real positive. Ties among equal
/// eigenvalues are ordered by lexicographic comparison of the canonicalized columns.
/// Throws ContractViolation when M is not Hermitian within 1e-10 relative.
OrderedEVD hermitian_evd(const CMat &M);

/// Full SVD with nonincreasing singular values; left/right column pairs are phase
/// canonicalized together so the product is unchanged.
OrderedSVD svd_ordered(const CMat &M);

/// Hermitian PSD square root. Throws ContractViolation when M is indefinite beyond the
/// repair threshold.
CMat hermitian_sqrt(const CMat &M);

/// Inverse Hermitian square root of a Hermitian PD matrix.
CMat hermitian_inv_sqrt(const CMat &M);

/// Cholesky factor of a Hermitian PD matrix. Throws ContractViolation when M is not PD.
CholeskyLower cholesky_lower(const CMat &M);

/// Unitary DFT matrix with entries exp(-2 pi i jk / n) / sqrt(n).
CMat dft_matrix(int n);

/// Unitary Q such that the Cholesky factor of Q^H M Q has equal diagonal entries,
/// all equal to det(M)^(1/(2n)). Built by a geometric-mean decomposition of M^{1/2}.
CMat equal_diagonal_rotation(const CMat &M);

/// ||U^H U - I||_F.
double unitarity_defect(const CMat &U);

/// Smallest eigenvalue of the Hermitian part of M.
double min_eigenvalue(const CMat &M);

/// Numerical rank at relative tolerance tol * ||M||_2.
int numerical_rank(const CMat &M, double tol = 1e-9);

} // namespace relay_shaper

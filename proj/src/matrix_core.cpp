// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#include "relay_shaper/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace relay_shaper
{

namespace
{

// Rotate column so that its first entry of largest magnitude is real positive.
// Returns the unit phase that was applied.
cplx canonical_phase(const Eigen::Ref<const CVec> &v)
{
    double max_abs = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        max_abs = std::max(max_abs, std::abs(v(i)));
    if (max_abs == 0.0)
        return cplx(1.0, 0.0);
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        double a = std::abs(v(i));
        if (a >= max_abs * (1.0 - 1e-9))
            return std::conj(v(i)) / a;
    }
    return cplx(1.0, 0.0);
}

// Descending lexicographic order on (re, im) of each entry.
bool lex_greater(const CVec &a, const CVec &b)
{
    for (Eigen::Index i = 0; i < a.size(); ++i)
    {
        if (a(i).real() != b(i).real())
            return a(i).real() > b(i).real();
        if (a(i).imag() != b(i).imag())
            return a(i).imag() > b(i).imag();
    }
    return false;
}

double spectral_norm_hermitian(const RVec &eigenvalues)
{
    return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

} // namespace

CMat OrderedSVD::sigma() const
{
    CMat S = CMat::Zero(left.rows(), right.rows());
    for (Eigen::Index i = 0; i < singulars.size(); ++i)
        S(i, i) = singulars(i);
    return S;
}

double rel_frobenius(const CMat &A, const CMat &B)
{
    double denom = std::max(B.norm(), 1e-300);
    return (A - B).norm() / denom;
}

double hermitian_defect(const CMat &M)
{
    double n = M.norm();
    if (n == 0.0)
        return 0.0;
    return (M - M.adjoint()).norm() / n;
}

CMat hermitian_part(const CMat &M)
{
    return 0.5 * (M + M.adjoint());
}

OrderedEVD hermitian_evd(const CMat &M)
{
    if (M.rows() != M.cols())
        throw ContractViolation("hermitian_evd: matrix is not square");
    if (hermitian_defect(M) > kHermitianTol)
        throw ContractViolation("hermitian_evd: matrix is not Hermitian");

    const Eigen::Index n = M.rows();
    OrderedEVD out;
    if (n == 0)
        return out;

    Eigen::SelfAdjointEigenSolver<CMat> solver(hermitian_part(M));
    if (solver.info() != Eigen::Success)
        throw ContractViolation("hermitian_evd: eigen solver failed");

    // Eigen returns ascending order.
    RVec values = solver.eigenvalues().reverse();
    CMat vectors = solver.eigenvectors().rowwise().reverse();

    for (Eigen::Index j = 0; j < n; ++j)
        vectors.col(j) *= canonical_phase(vectors.col(j));

    const double norm = spectral_norm_hermitian(values);
    for (Eigen::Index j = 0; j < n; ++j)
        if (values(j) < 0.0 && values(j) >= -kPsdRepairTol * norm)
            values(j) = 0.0;

    // Order ties deterministically.
    const double tie_tol = 1e-12 * std::max(norm, 1.0);
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    Eigen::Index start = 0;
    while (start < n)
    {
        Eigen::Index stop = start + 1;
        while (stop < n && std::abs(values(stop) - values(start)) <= tie_tol)
            ++stop;
        if (stop - start > 1)
        {
            std::stable_sort(order.begin() + start, order.begin() + stop,
                             [&](Eigen::Index a, Eigen::Index b)
                             { return lex_greater(vectors.col(a), vectors.col(b)); });
        }
        start = stop;
    }

    out.vectors.resize(n, n);
    out.values.resize(n);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        out.vectors.col(j) = vectors.col(order[static_cast<size_t>(j)]);
        out.values(j) = values(order[static_cast<size_t>(j)]);
    }
    return out;
}

OrderedSVD svd_ordered(const CMat &M)
{
    OrderedSVD out;
    const Eigen::Index m = M.rows(), n = M.cols();
    if (m == 0 || n == 0)
    {
        out.left = CMat::Identity(m, m);
        out.right = CMat::Identity(n, n);
        out.singulars = RVec::Zero(0);
        return out;
    }

    Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.left = svd.matrixU();
    out.right = svd.matrixV();
    out.singulars = svd.singularValues();

    const Eigen::Index r = std::min(m, n);
    for (Eigen::Index j = 0; j < r; ++j)
    {
        if (out.singulars(j) > 0.0)
        {
            cplx ph = canonical_phase(out.left.col(j));
            out.left.col(j) *= ph;
            out.right.col(j) *= ph;
        }
        else
        {
            out.left.col(j) *= canonical_phase(out.left.col(j));
            out.right.col(j) *= canonical_phase(out.right.col(j));
        }
    }
    for (Eigen::Index j = r; j < m; ++j)
        out.left.col(j) *= canonical_phase(out.left.col(j));
    for (Eigen::Index j = r; j < n; ++j)
        out.right.col(j) *= canonical_phase(out.right.col(j));
    return out;
}

CMat hermitian_sqrt(const CMat &M)
{
    OrderedEVD evd = hermitian_evd(M);
    if (evd.values.size() == 0)
        return CMat(0, 0);
    if (evd.values.minCoeff() < 0.0)
        throw ContractViolation("hermitian_sqrt: matrix is indefinite");
    RVec root = evd.values.cwiseSqrt();
    CMat R = evd.vectors * root.asDiagonal() * evd.vectors.adjoint();
    return hermitian_part(R);
}

CMat hermitian_inv_sqrt(const CMat &M)
{
    OrderedEVD evd = hermitian_evd(M);
    if (evd.values.size() == 0)
        return CMat(0, 0);
    const double floor = 1e-12 * std::max(evd.values(0), 1e-300);
    if (evd.values.minCoeff() <= floor)
        throw ContractViolation("hermitian_inv_sqrt: matrix is not positive definite");
    RVec root = evd.values.cwiseSqrt().cwiseInverse();
    CMat R = evd.vectors * root.asDiagonal() * evd.vectors.adjoint();
    return hermitian_part(R);
}

CholeskyLower cholesky_lower(const CMat &M)
{
    if (hermitian_defect(M) > kHermitianTol)
        throw ContractViolation("cholesky_lower: matrix is not Hermitian");
    Eigen::LLT<CMat> llt(hermitian_part(M));
    if (llt.info() != Eigen::Success)
        throw ContractViolation("cholesky_lower: matrix is not positive definite");
    CMat L = llt.matrixL();
    for (Eigen::Index i = 0; i < L.rows(); ++i)
        if (!(L(i, i).real() > 0.0))
            throw ContractViolation("cholesky_lower: matrix is singular");
    return CholeskyLower{L};
}

CMat dft_matrix(int n)
{
    if (n < 1)
        throw ContractViolation("dft_matrix: n must be positive");
    CMat D(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
        {
            // Reduce jk mod n first so large indices keep full phase accuracy.
            const long long jk = (static_cast<long long>(j) * k) % n;
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(jk) / n;
            D(j, k) = scale * cplx(std::cos(angle), std::sin(angle));
        }
    return D;
}

CMat equal_diagonal_rotation(const CMat &M)
{
    OrderedEVD evd = hermitian_evd(M);
    const Eigen::Index n = evd.values.size();
    if (n == 0)
        return CMat(0, 0);
    if (!(evd.values(n - 1) > 1e-14 * evd.values(0)))
        throw ContractViolation("equal_diagonal_rotation: matrix is singular or indefinite");

    // M^{1/2} = U S U^H is its own SVD; reduce S to upper-triangular form with a
    // constant diagonal through 2x2 Givens balancing.
    RVec s = evd.values.cwiseSqrt();
    const double target = std::exp(s.array().log().mean());

    CMat R = s.cast<cplx>().asDiagonal();
    CMat left = evd.vectors;
    CMat right = evd.vectors;

    auto swap_index = [&](Eigen::Index a, Eigen::Index b)
    {
        if (a == b)
            return;
        R.col(a).swap(R.col(b));
        R.row(a).swap(R.row(b));
        left.col(a).swap(left.col(b));
        right.col(a).swap(right.col(b));
    };

    for (Eigen::Index k = 0; k + 1 < n; ++k)
    {
        const double d1 = R(k, k).real();
        Eigen::Index p = k + 1;
        if (d1 >= target)
        {
            for (Eigen::Index j = k + 1; j < n; ++j)
                if (R(j, j).real() < R(p, p).real())
                    p = j;
        }
        else
        {
            for (Eigen::Index j = k + 1; j < n; ++j)
                if (R(j, j).real() > R(p, p).real())
                    p = j;
        }
        swap_index(k + 1, p);

        const double a = R(k, k).real();
        const double b = R(k + 1, k + 1).real();
        double c = 1.0, sn = 0.0;
        if (std::abs(a * a - b * b) > 1e-15 * target * target)
        {
            double c2 = (target * target - b * b) / (a * a - b * b);
            c2 = std::clamp(c2, 0.0, 1.0);
            c = std::sqrt(c2);
            sn = std::sqrt(1.0 - c2);
        }
        Eigen::Matrix2d g1, g2;
        g1 << c, -sn, sn, c;
        g2 << c * a, -sn * b, sn * b, c * a;
        g2 /= target;

        const Eigen::Matrix2cd g1c = g1.cast<cplx>();
        const Eigen::Matrix2cd g2c = g2.cast<cplx>();
        R.middleRows(k, 2) = (g2c.transpose() * R.middleRows(k, 2)).eval();
        R.middleCols(k, 2) = (R.middleCols(k, 2) * g1c).eval();
        left.middleCols(k, 2) = (left.middleCols(k, 2) * g2c).eval();
        right.middleCols(k, 2) = (right.middleCols(k, 2) * g1c).eval();
    }

    // right is the rotation: (M^{1/2} right) = left R, so right^H M right = R^H R.
    CholeskyLower chol = cholesky_lower(right.adjoint() * M * right);
    RVec diag = chol.L.diagonal().real();
    const double spread = (diag.maxCoeff() - diag.minCoeff()) / diag.maxCoeff();
    if (spread > 1e-8)
        throw ContractViolation("equal_diagonal_rotation: failed to equalize the Cholesky diagonal");
    return right;
}

double unitarity_defect(const CMat &U)
{
    return (U.adjoint() * U - CMat::Identity(U.cols(), U.cols())).norm();
}

double min_eigenvalue(const CMat &M)
{
    if (M.rows() == 0)
        return 0.0;
    Eigen::SelfAdjointEigenSolver<CMat> solver(hermitian_part(M), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

int numerical_rank(const CMat &M, double tol)
{
    if (M.size() == 0)
        return 0;
    Eigen::JacobiSVD<CMat> svd(M);
    const RVec &s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0))
            ++r;
    return r;
}

} // namespace relay_shaper

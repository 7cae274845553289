// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "relay_shaper/matrix_core.hpp"
#include "test_util.hpp"

using namespace relay_shaper;
using testutil::rel;
using testutil::Rng;

TEST_CASE("hermitian_evd: identity and diagonal")
{
    const OrderedEVD e = hermitian_evd(CMat::Identity(3, 3));
    CHECK((e.values - RVec::Ones(3)).norm() == doctest::Approx(0.0));
    CHECK(rel(e.vectors, CMat::Identity(3, 3)) < 1e-14);

    CMat D = CMat::Zero(3, 3);
    D.diagonal() << 1.0, 4.0, 2.0;
    const OrderedEVD d = hermitian_evd(D);
    CHECK(d.values(0) == doctest::Approx(4.0));
    CHECK(d.values(1) == doctest::Approx(2.0));
    CHECK(d.values(2) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_evd: random reconstruction, ordering, unitarity and canonical phase")
{
    Rng rng(11);
    for (int t = 0; t < 20; ++t)
    {
        const CMat U = rng.unitary(4);
        RVec lam(4);
        lam << rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2);
        const CMat M = U * lam.cast<cplx>().asDiagonal() * U.adjoint();
        const OrderedEVD e = hermitian_evd(M);
        const CMat back = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
        CHECK(rel(back, M) < 1e-10);
        CHECK(unitarity_defect(e.vectors) < 1e-10);
        for (int i = 0; i + 1 < 4; ++i)
            CHECK(e.values(i) >= e.values(i + 1));
        std::sort(lam.data(), lam.data() + 4, std::greater<>());
        CHECK((lam - e.values).norm() < 1e-10);
        for (int j = 0; j < 4; ++j)
        {
            Eigen::Index imax = 0;
            e.vectors.col(j).cwiseAbs().maxCoeff(&imax);
            CHECK(std::abs(e.vectors(imax, j).imag()) < 1e-14);
            CHECK(e.vectors(imax, j).real() > 0.0);
        }
        // bit-stable on repeat
        const OrderedEVD again = hermitian_evd(M);
        CHECK(again.vectors == e.vectors);
        CHECK(again.values == e.values);
    }
}

TEST_CASE("hermitian_evd: rejects non-Hermitian and repairs tiny negatives")
{
    CMat M = CMat::Identity(2, 2);
    M(0, 1) = 0.5;
    CHECK_THROWS_AS(hermitian_evd(M), ContractViolation);

    CMat P = CMat::Zero(2, 2);
    P.diagonal() << 1.0, -1e-12;
    CHECK(hermitian_evd(P).values(1) == 0.0);
}

TEST_CASE("svd_ordered: zero, diagonal, random reconstruction")
{
    const OrderedSVD z = svd_ordered(CMat::Zero(3, 2));
    CHECK(z.singulars.norm() == 0.0);

    CMat D = CMat::Zero(2, 2);
    D.diagonal() << 2.0, 3.0;
    const OrderedSVD d = svd_ordered(D);
    CHECK(d.singulars(0) == doctest::Approx(3.0));
    CHECK(d.singulars(1) == doctest::Approx(2.0));

    Rng rng(12);
    for (int t = 0; t < 20; ++t)
    {
        const CMat M = rng.gaussian(4, 6);
        const OrderedSVD s = svd_ordered(M);
        CHECK(rel(s.left * s.sigma() * s.right.adjoint(), M) < 1e-10);
        CHECK(unitarity_defect(s.left) < 1e-10);
        CHECK(unitarity_defect(s.right) < 1e-10);
        for (int i = 0; i + 1 < s.singulars.size(); ++i)
            CHECK(s.singulars(i) >= s.singulars(i + 1));
    }
}

TEST_CASE("hermitian_sqrt")
{
    CHECK(rel(hermitian_sqrt(CMat::Identity(3, 3)), CMat::Identity(3, 3)) < 1e-14);
    CMat D = CMat::Zero(2, 2);
    D.diagonal() << 4.0, 9.0;
    CMat E = CMat::Zero(2, 2);
    E.diagonal() << 2.0, 3.0;
    CHECK(rel(hermitian_sqrt(D), E) < 1e-14);

    Rng rng(13);
    for (int t = 0; t < 20; ++t)
    {
        const CMat M = rng.psd(4, 4);
        const CMat R = hermitian_sqrt(M);
        CHECK(hermitian_defect(R) < 1e-12);
        CHECK(rel(R * R, M) < 1e-9);
    }
    CMat bad = CMat::Identity(2, 2);
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(hermitian_sqrt(bad), ContractViolation);
}

TEST_CASE("dft_matrix")
{
    CHECK(std::abs(dft_matrix(1)(0, 0) - cplx(1.0)) < 1e-15);
    const CMat F2 = dft_matrix(2);
    CMat ref(2, 2);
    ref << 1, 1, 1, -1;
    ref /= std::sqrt(2.0);
    CHECK(rel(F2, ref) < 1e-15);
    const CMat F4 = dft_matrix(4);
    CHECK((F4 * F4.adjoint() - CMat::Identity(4, 4)).norm() < 1e-12);
    // entry formula
    const double w = -2.0 * std::numbers::pi / 4.0;
    CHECK(std::abs(F4(2, 3) - std::polar(0.5, w * 6.0)) < 1e-14);
}

TEST_CASE("equal_diagonal_rotation")
{
    const CMat Q0 = equal_diagonal_rotation(3.0 * CMat::Identity(3, 3));
    CHECK(unitarity_defect(Q0) < 1e-12);
    const CMat L0 = cholesky_lower(Q0.adjoint() * 3.0 * CMat::Identity(3, 3) * Q0).L;
    CHECK((L0.diagonal().real().array() - std::sqrt(3.0)).abs().maxCoeff() < 1e-12);

    CMat D = CMat::Zero(2, 2);
    D.diagonal() << 1.0, 4.0;
    const CMat Q = equal_diagonal_rotation(D);
    const CMat L = cholesky_lower(hermitian_part(Q.adjoint() * D * Q)).L;
    CHECK(std::abs(L(0, 0).real() - std::sqrt(2.0)) < 1e-8);
    CHECK(std::abs(L(1, 1).real() - std::sqrt(2.0)) < 1e-8);

    Rng rng(14);
    for (int t = 0; t < 30; ++t)
    {
        const CMat M = rng.pd(4);
        const CMat U = equal_diagonal_rotation(M);
        CHECK(unitarity_defect(U) < 1e-10);
        const CMat R = hermitian_part(U.adjoint() * M * U);
        const RVec d = cholesky_lower(R).L.diagonal().real();
        const double target = std::pow(M.determinant().real(), 1.0 / 8.0);
        CHECK((d.array() - target).abs().maxCoeff() < 1e-8 * target);
        // unitary congruence keeps the spectrum
        CHECK((hermitian_evd(R).values - hermitian_evd(M).values).norm() < 1e-9 * M.norm());
    }
    CMat S = CMat::Zero(2, 2);
    S(0, 0) = 1.0;
    CHECK_THROWS_AS(equal_diagonal_rotation(S), ContractViolation);
}

TEST_CASE("cholesky_lower and numerical_rank")
{
    Rng rng(15);
    const CMat M = rng.pd(5);
    const CMat L = cholesky_lower(M).L;
    CHECK(rel(L * L.adjoint(), M) < 1e-10);
    CHECK(L.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().norm() == 0.0);
    CHECK((L.diagonal().real().array() > 0.0).all());
    CHECK_THROWS_AS(cholesky_lower(CMat::Zero(2, 2)), ContractViolation);

    CHECK(numerical_rank(rng.psd(5, 2)) == 2);
    CHECK(numerical_rank(CMat::Zero(3, 3)) == 0);
}

// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relay_shaper/mse_engine.hpp"
#include "test_util.hpp"

using namespace relay_shaper;
using testutil::rel;
using testutil::Rng;

namespace
{

NetworkSpec scalar_hop(double s2a, double s2n)
{
    NetworkSpec net;
    net.stream_count = 2;
    net.signal_variance = s2a;
    net.hops.push_back({CMat::Identity(2, 2), s2n, 1.0, JointPower{1e300}});
    return net;
}

std::vector<CMat> random_P(Rng &rng, const NetworkSpec &net)
{
    std::vector<CMat> P;
    for (int k = 0; k < net.hop_count(); ++k)
        P.push_back(rng.gaussian(net.hops[k].tx(), net.input_dim(k)));
    return P;
}

CMat random_unit_lower(Rng &rng, Eigen::Index n)
{
    CMat C = rng.gaussian(n, n).triangularView<Eigen::StrictlyLower>();
    C.diagonal().setOnes();
    return C;
}

} // namespace

TEST_CASE("rx_covariance_chain")
{
    const NetworkSpec net = scalar_hop(1.0, 1.0);
    const auto R = rx_covariance_chain(net, {CMat::Identity(2, 2)});
    CHECK(rel(R[0], 2.0 * CMat::Identity(2, 2)) < 1e-15);
    const auto Z = rx_covariance_chain(net, {CMat::Zero(2, 2)});
    CHECK(rel(Z[0], CMat::Identity(2, 2)) < 1e-15);

    Rng rng(31);
    const NetworkSpec big = testutil::random_network(rng, 3, 4, 3);
    for (const CMat &Rk : rx_covariance_chain(big, random_P(rng, big)))
        CHECK(min_eigenvalue(Rk) > 0.0);
}

TEST_CASE("mse_linear closed cases")
{
    Rng rng(32);
    const NetworkSpec net = testutil::random_network(rng, 2, 3, 2);
    const auto P = random_P(rng, net);
    const CMat G0 = CMat::Zero(2, 3);
    CHECK(rel(mse_linear(net, P, G0), net.signal_variance * CMat::Identity(2, 2)) < 1e-14);

    const NetworkSpec quiet = scalar_hop(1.0, 1e-300);
    CHECK(mse_linear(quiet, {CMat::Identity(2, 2)}, CMat::Identity(2, 2)).norm() < 1e-290);
}

TEST_CASE("mse_linear matches a Monte Carlo sample covariance")
{
    Rng rng(33);
    const NetworkSpec net = testutil::random_network(rng, 2, 3, 2);
    const auto P = random_P(rng, net);
    const CMat G = rng.gaussian(2, 3);
    const CMat phi = mse_linear(net, P, G);

    const int n = 100000;
    const double sa = std::sqrt(net.signal_variance);
    RVec sum = RVec::Zero(2), sum2 = RVec::Zero(2);
    cplx cross = 0.0;
    for (int t = 0; t < n; ++t)
    {
        const CVec a = sa * rng.gaussian(2, 1);
        CVec x = a;
        for (int k = 0; k < net.hop_count(); ++k)
            x = net.hops[k].channel * (P[k] * x) + std::sqrt(net.hops[k].noise_variance) * rng.gaussian(3, 1);
        const CVec e = G * x - a;
        for (int i = 0; i < 2; ++i)
        {
            const double v = std::norm(e(i));
            sum(i) += v;
            sum2(i) += v * v;
        }
        cross += e(0) * std::conj(e(1));
    }
    for (int i = 0; i < 2; ++i)
    {
        const double mean = sum(i) / n;
        const double se = std::sqrt((sum2(i) / n - mean * mean) / n);
        CHECK(std::abs(mean - phi(i, i).real()) < 3.0 * se);
    }
    // off-diagonal: loose bound from Cauchy-Schwarz scale
    const double scale = std::sqrt(phi(0, 0).real() * phi(1, 1).real());
    CHECK(std::abs(cross / double(n) - phi(0, 1)) < 4.0 * scale / std::sqrt(double(n)));
}

TEST_CASE("mse_unified reduces to mse_linear and stays PSD")
{
    Rng rng(34);
    for (int t = 0; t < 20; ++t)
    {
        const NetworkSpec net = testutil::random_network(rng, rng.integer(1, 3), 4, rng.integer(1, 4));
        const auto P = random_P(rng, net);
        const CMat G = rng.gaussian(net.stream_count, 4);
        const CMat I = CMat::Identity(net.stream_count, net.stream_count);
        CHECK(rel(mse_unified(net, P, G, I), mse_linear(net, P, G)) < 1e-12);
        const CMat C = random_unit_lower(rng, net.stream_count);
        CHECK(rel(mse_unified(net, P, CMat::Zero(net.stream_count, 4), C), net.signal_variance * C * C.adjoint()) <
              1e-14);
        const CMat U = mse_unified(net, P, G, C);
        CHECK(min_eigenvalue(U) >= -1e-9 * U.trace().real());
    }
}

TEST_CASE("lmmse_equalizer closed cases")
{
    const NetworkSpec quiet = scalar_hop(1.0, 1e-12);
    CHECK(rel(lmmse_equalizer(quiet, {CMat::Identity(2, 2)}), CMat::Identity(2, 2)) < 1e-11);
    const NetworkSpec unit = scalar_hop(1.0, 1.0);
    CHECK(rel(lmmse_equalizer(unit, {CMat::Identity(2, 2)}), 0.5 * CMat::Identity(2, 2)) < 1e-15);
}

TEST_CASE("lmmse_equalizer dominates random equalizers")
{
    Rng rng(35);
    for (int t = 0; t < 10; ++t)
    {
        const NetworkSpec net = testutil::random_network(rng, rng.integer(1, 3), 4, rng.integer(1, 4));
        const auto P = random_P(rng, net);
        const CMat Gopt = lmmse_equalizer(net, P);
        const CMat best = mse_linear(net, P, Gopt);
        CHECK(rel(best, phi_lmmse(net, P)) < 1e-10);
        for (int r = 0; r < 100; ++r)
        {
            const CMat G = Gopt + rng.uniform(0.0, 1.0) * rng.gaussian(Gopt.rows(), Gopt.cols());
            const CMat diff = mse_linear(net, P, G) - best;
            CHECK(min_eigenvalue(diff) >= -1e-9 * best.trace().real());
        }
    }
}

TEST_CASE("phi_lmmse_compact closed cases")
{
    Rng rng(36);
    NetworkSpec net = testutil::random_network(rng, 2, 3, 2);
    std::vector<CMat> F{CMat::Zero(3, 2), CMat::Zero(3, 3)};
    const auto Q = testutil::random_Q(rng, net);
    CHECK(rel(phi_lmmse_compact(net, F, Q), net.signal_variance * CMat::Identity(2, 2)) < 1e-14);

    // K = 1, identity channel and unit noise with F = I gives A = I/sqrt(2).
    const NetworkSpec one = scalar_hop(1.0, 1.0);
    const std::vector<CMat> F1{CMat::Identity(2, 2)}, Q1{CMat::Identity(2, 2)};
    CHECK(rel(hop_states(one, F1)[0].A, CMat::Identity(2, 2) / std::sqrt(2.0)) < 1e-15);
    CHECK(rel(phi_lmmse_compact(one, F1, Q1), 0.5 * CMat::Identity(2, 2)) < 1e-15);
}

TEST_CASE("formula triangle: compact, weighting recursion and unified MSE agree")
{
    Rng rng(37);
    for (int t = 0; t < 50; ++t)
    {
        const int K = 1 + t % 3;
        const NetworkSpec net = testutil::random_network(rng, K, rng.integer(1, 4), 1);
        NetworkSpec n2 = net;
        n2.stream_count = rng.integer(1, static_cast<int>(net.hops[0].rx()));
        const auto F = testutil::random_F(rng, n2);
        const auto Q = testutil::random_Q(rng, n2);
        const CMat compact = phi_lmmse_compact(n2, F, Q);
        const CMat recursion = weighting_recursion(n2, F, Q);
        const auto P = lift_precoders(n2, F, Q);
        const CMat unified =
            mse_unified(n2, P, lmmse_equalizer(n2, P), CMat::Identity(n2.stream_count, n2.stream_count));
        CHECK(rel(recursion, compact) < 1e-9);
        CHECK(rel(unified, compact) < 1e-8);
    }
}

TEST_CASE("lift_precoders: transmit covariance equals F F^H")
{
    Rng rng(38);
    for (int K : {1, 2, 3})
        for (int t = 0; t < 10; ++t)
        {
            const NetworkSpec net = testutil::random_network(rng, K, 4, 3);
            const auto F = testutil::random_F(rng, net);
            const auto Q = testutil::random_Q(rng, net);
            const auto P = lift_precoders(net, F, Q);
            const auto R = transmit_covariances(net, P);
            for (int k = 0; k < K; ++k)
            {
                const CMat FF = F[k] * F[k].adjoint();
                CHECK(rel(R[k], FF) < 1e-9);
                CHECK(std::abs(R[k].trace().real() - FF.trace().real()) < 1e-9 * FF.trace().real());
            }
        }

    // K = 1, identity F and Q with unit signal variance
    NetworkSpec one = scalar_hop(1.0, 1.0);
    const auto P1 = lift_precoders(one, {CMat::Identity(2, 2)}, {CMat::Identity(2, 2)});
    CHECK(rel(P1[0], CMat::Identity(2, 2)) < 1e-15);
}

TEST_CASE("weighting_recursion equals compact form for K = 1")
{
    Rng rng(39);
    const NetworkSpec net = testutil::random_network(rng, 1, 3, 2);
    const auto F = testutil::random_F(rng, net);
    const auto Q = testutil::random_Q(rng, net);
    CHECK(rel(weighting_recursion(net, F, Q), phi_lmmse_compact(net, F, Q)) < 1e-12);
}

TEST_CASE("MSE matrices are Hermitian")
{
    Rng rng(40);
    const NetworkSpec net = testutil::random_network(rng, 3, 4, 2);
    const auto P = random_P(rng, net);
    CHECK(hermitian_defect(phi_lmmse(net, P)) < 1e-10);
    CHECK(hermitian_defect(mse_linear(net, P, rng.gaussian(2, 4))) < 1e-10);
}

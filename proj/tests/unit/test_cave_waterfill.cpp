// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>

#include "relay_shaper/cave_waterfill.hpp"
#include "test_util.hpp"

using namespace relay_shaper;
using testutil::rel;
using testutil::Rng;

namespace
{

const double kInf = std::numeric_limits<double>::infinity();

double channel_objective(WaterfillKind kind, double g, double a, double p)
{
    const double t = p * g / (p * g + 1.0);
    return kind == WaterfillKind::MSchurConvex ? std::log(1.0 - a * t) : 1.0 - a * t;
}

void check_feasible(const WaterfillProblem &p, const WaterfillSolution &s)
{
    CHECK(s.powers.sum() <= p.budget + 1e-9);
    CHECK(s.powers.maxCoeff() <= p.cap + 1e-12);
    CHECK(s.powers.minCoeff() >= 0.0);
}

} // namespace

TEST_CASE("kkt_power_aschur")
{
    // a = 1, h^2 = 4, mu from f^2 = 5/6
    const double mu = 4.0 / std::pow(4.0 * 5.0 / 6.0 + 1.0, 2);
    CHECK(kkt_power_aschur(4.0, 1.0, mu, kInf) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(kkt_power_aschur(4.0, 1.0, 4.0, kInf) == 0.0);
    CHECK(kkt_power_aschur(4.0, 0.5, 2.5, kInf) == 0.0);
    // mu below the marginal at the cap: pinned
    CHECK(kkt_power_aschur(4.0, 1.0, marginal_aschur(4.0, 1.0, 0.5) * 0.9, 0.5) == 0.5);
}

TEST_CASE("kkt_power_mschur")
{
    CHECK(kkt_power_mschur(1.0, 0.5, 1e6, kInf) == 0.0);
    CHECK(kkt_power_mschur(2.0, 0.7, marginal_mschur(2.0, 0.7, 0.3) * 0.99, 0.3) == 0.3);
    // stationarity: root = 1 at mu = marginal(1)
    const double mu = marginal_mschur(1.0, 0.5, 1.0);
    const double p = kkt_power_mschur(1.0, 0.5, mu, kInf);
    CHECK(std::abs(p - 1.0) < 1e-9);
    CHECK(std::abs(marginal_mschur(1.0, 0.5, p) - mu) < 1e-9);
    // a = 1: classic water level 1/mu - 1/h^2
    CHECK(kkt_power_mschur(2.0, 1.0, 0.25, kInf) == doctest::Approx(4.0 - 0.5).epsilon(1e-14));
    // continuous at the cap branch point
    const double at_cap = marginal_mschur(2.0, 0.4, 0.8);
    CHECK(std::abs(kkt_power_mschur(2.0, 0.4, at_cap * (1 + 1e-12), 0.8) - 0.8) < 1e-9);
    CHECK(std::abs(kkt_power_mschur(2.0, 0.4, at_cap * (1 - 1e-12), 0.8) - 0.8) < 1e-9);
}

TEST_CASE("worked instance: gains [4, 1], budget 2")
{
    WaterfillProblem p{(RVec(2) << 4.0, 1.0).finished(), RVec::Ones(2), 2.0, 10.0, WaterfillKind::ASchurConvex};
    const WaterfillSolution s = cave_waterfill(p);
    CHECK(std::abs(s.powers(0) - 5.0 / 6.0) < 1e-9);
    CHECK(std::abs(s.powers(1) - 7.0 / 6.0) < 1e-9);
    // 3 / (2 sqrt(mu)) - 5/4 = 2
    CHECK(s.multiplier == doctest::Approx(std::pow(3.0 / (2.0 * 3.25), 2)).epsilon(1e-9));
    CHECK(kkt_residuals(p, s).maxCoeff() <= 1e-7);

    p.cap = 1.0;
    const WaterfillSolution c = cave_waterfill(p);
    CHECK(std::abs(c.powers(0) - 1.0) < 1e-9);
    CHECK(std::abs(c.powers(1) - 1.0) < 1e-9);
    CHECK(c.capped[1]);
    check_feasible(p, c);
    CHECK(kkt_residuals(p, c).maxCoeff() <= 1e-7);

    auto obj = [&](Eigen::Index i, double x) { return channel_objective(p.kind, p.gains(i), 1.0, x); };
    p.cap = 10.0;
    const RVec g1 = testutil::grid_waterfill(2, 2.0, 10.0, obj);
    CHECK((g1 - s.powers).cwiseAbs().maxCoeff() < 1e-4);
    const RVec g2 = testutil::grid_waterfill(2, 2.0, 1.0, obj);
    CHECK((g2 - c.powers).cwiseAbs().maxCoeff() < 1e-4);
}

TEST_CASE("single channel takes min(budget, cap)")
{
    WaterfillProblem p{RVec::Constant(1, 3.0), RVec::Ones(1), 2.0, 5.0, WaterfillKind::MSchurConvex};
    CHECK(cave_waterfill(p).powers(0) == doctest::Approx(2.0));
    p.cap = 1.5;
    const WaterfillSolution s = cave_waterfill(p);
    CHECK(s.powers(0) == doctest::Approx(1.5));
    CHECK(s.sum_inactive);
    CHECK(s.multiplier == 0.0);
}

TEST_CASE("inactive sum constraint when N tau <= P")
{
    WaterfillProblem p{(RVec(3) << 3.0, 2.0, 1.0).finished(), RVec::Ones(3), 4.0, 1.0, WaterfillKind::ASchurConvex};
    const WaterfillSolution s = cave_waterfill(p);
    CHECK((s.powers.array() == 1.0).all());
    CHECK(s.sum_inactive);
    check_feasible(p, s);
}

TEST_CASE("invalid problems are rejected")
{
    WaterfillProblem p{RVec::Ones(2), RVec::Ones(3), 1.0, 1.0, WaterfillKind::ASchurConvex};
    CHECK_THROWS_AS(cave_waterfill(p), std::invalid_argument);
    p.aux = RVec::Ones(2);
    p.budget = 0.0;
    CHECK_THROWS_AS(cave_waterfill(p), std::invalid_argument);
}

TEST_CASE("grid-search oracle on random instances")
{
    Rng rng(51);
    for (int t = 0; t < 60; ++t)
    {
        const auto n = static_cast<Eigen::Index>(rng.integer(1, 3));
        WaterfillProblem p;
        p.gains.resize(n);
        p.aux.resize(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            p.gains(i) = rng.uniform(0.05, 10.0);
            p.aux(i) = rng.uniform(0.05, 1.0);
        }
        std::sort(p.gains.data(), p.gains.data() + n, std::greater<>());
        p.budget = rng.uniform(0.2, 5.0);
        p.cap = rng.uniform() < 0.3 ? kInf : rng.uniform(0.1, 3.0);
        p.kind = t % 2 ? WaterfillKind::MSchurConvex : WaterfillKind::ASchurConvex;
        const WaterfillSolution s = cave_waterfill(p);
        check_feasible(p, s);
        CHECK(kkt_residuals(p, s).maxCoeff() <= 1e-7);
        auto obj = [&](Eigen::Index i, double x) { return channel_objective(p.kind, p.gains(i), p.aux(i), x); };
        const RVec g = testutil::grid_waterfill(n, p.budget, std::min(p.cap, p.budget), obj);
        double vs = 0.0, vg = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
        {
            vs += obj(i, s.powers(i));
            vg += obj(i, g(i));
        }
        CHECK(vs <= vg + 1e-10);
        CHECK(std::abs(vs - vg) < 1e-4);
        CHECK(hop_objective(p.kind, p.gains, p.aux, s.powers) == doctest::Approx(vs).epsilon(1e-12));
    }
}

TEST_CASE("tau -> infinity reproduces classic water-filling")
{
    Rng rng(52);
    for (int t = 0; t < 20; ++t)
    {
        const Eigen::Index n = 4;
        RVec g(n);
        for (Eigen::Index i = 0; i < n; ++i)
            g(i) = rng.uniform(0.01, 5.0);
        std::sort(g.data(), g.data() + n, std::greater<>());
        const double P = rng.uniform(0.1, 6.0);
        // reference: water level over the m strongest channels
        RVec ref = RVec::Zero(n);
        for (Eigen::Index m = n; m >= 1; --m)
        {
            const double level = (P + (1.0 / g.head(m).array()).sum()) / m;
            if (level > 1.0 / g(m - 1))
            {
                for (Eigen::Index i = 0; i < m; ++i)
                    ref(i) = level - 1.0 / g(i);
                break;
            }
        }
        const WaterfillSolution s = cave_waterfill({g, RVec::Ones(n), P, kInf, WaterfillKind::MSchurConvex});
        CHECK((s.powers - ref).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("multihop: single hop is one cave call")
{
    const RVec g = (RVec(3) << 3.0, 1.0, 0.2).finished();
    const MultihopAllocation m = multihop_allocate({g}, {2.0}, {1.2}, WaterfillKind::MSchurConvex);
    const WaterfillSolution s = cave_waterfill({g, RVec::Ones(3), 2.0, 1.2, WaterfillKind::MSchurConvex});
    CHECK((m.hops[0].powers - s.powers).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(m.converged);
}

TEST_CASE("multihop: symmetric hops share the allocation")
{
    const RVec g = (RVec(3) << 3.0, 1.5, 0.4).finished();
    for (WaterfillKind kind : {WaterfillKind::ASchurConvex, WaterfillKind::MSchurConvex})
    {
        const MultihopAllocation m = multihop_allocate({g, g}, {2.0, 2.0}, {1.0, 1.0}, kind);
        CHECK(m.converged);
        CHECK((m.hops[0].powers - m.hops[1].powers).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("multihop: random K = 3 descends monotonically and converges")
{
    Rng rng(53);
    for (int t = 0; t < 20; ++t)
    {
        std::vector<HopSpec> hops;
        NetworkSpec net;
        net.stream_count = 4;
        for (int k = 0; k < 3; ++k)
            net.hops.push_back({rng.gaussian(4, 4), rng.uniform(0.1, 2.0), 4.0, JointPower{1.4}});
        for (WaterfillKind kind : {WaterfillKind::ASchurConvex, WaterfillKind::MSchurConvex})
        {
            const MultihopAllocation m = multihop_allocate(net, kind);
            CHECK(m.converged);
            CHECK(m.sweeps < 200);
            for (size_t i = 1; i < m.objective_trace.size(); ++i)
                CHECK(m.objective_trace[i] <= m.objective_trace[i - 1] + 1e-10);
            for (const WaterfillSolution &s : m.hops)
            {
                CHECK(s.powers.maxCoeff() <= 1.4 + 1e-12);
                CHECK(s.powers.sum() <= 4.0 + 1e-9);
            }
        }
    }
}

TEST_CASE("multihop rejects shaping constraints")
{
    NetworkSpec net;
    net.stream_count = 1;
    net.hops.push_back({CMat::Identity(2, 2), 1.0, 1.0, PureShaping{CMat::Identity(2, 2)}});
    CHECK_THROWS_AS(multihop_allocate(net, WaterfillKind::ASchurConvex), ContractViolation);
}

TEST_CASE("assemble_joint_F")
{
    const HopSpec id{CMat::Identity(3, 3), 1.0, 3.0, JointPower{2.0}};
    CHECK(assemble_joint_F(id, RVec::Zero(2), 2).norm() == 0.0);
    const RVec p = (RVec(2) << 1.5, 0.5).finished();
    const CMat F = assemble_joint_F(id, p, 2);
    CMat ref = CMat::Zero(3, 3);
    ref(0, 0) = 1.5;
    ref(1, 1) = 0.5;
    CHECK(rel(F * F.adjoint(), ref) < 1e-14);

    Rng rng(54);
    for (int t = 0; t < 10; ++t)
    {
        const HopSpec hop{rng.gaussian(4, 4), rng.uniform(0.2, 2.0), 4.0, JointPower{1.4}};
        const RVec q = (RVec(3) << 1.2, 0.9, 0.3).finished();
        const CMat Fr = assemble_joint_F(hop, q, 3);
        const CMat B = hop.channel * Fr / std::sqrt(hop.noise_variance);
        const RVec eig = hermitian_evd(hermitian_part(B.adjoint() * B)).values;
        const RVec h2 = hop_gains(hop, 3);
        RVec expect = q.cwiseProduct(h2);
        std::sort(expect.data(), expect.data() + 3, std::greater<>());
        CHECK((eig - expect).cwiseAbs().maxCoeff() < 1e-9 * expect(0));
    }
}

TEST_CASE("Pareto structure: no feasible perturbation is PSD-greater")
{
    Rng rng(55);
    for (int t = 0; t < 10; ++t)
    {
        const HopSpec hop{rng.gaussian(4, 4), 1.0, 4.0, JointPower{1.4}};
        const RVec g = hop_gains(hop, 3);
        const WaterfillSolution s = cave_waterfill({g, RVec::Ones(3), 4.0, 1.4, WaterfillKind::MSchurConvex});
        const CMat F = assemble_joint_F(hop, s.powers, 3);
        const CMat B = hop.channel * F;
        const CMat base = B.adjoint() * B;
        for (int d = 0; d < 200; ++d)
        {
            CMat Fp = F + rng.uniform(0.001, 0.3) * rng.gaussian(4, 3);
            const CMat cov = hermitian_part(Fp * Fp.adjoint());
            const double scale =
                std::min({1.0, std::sqrt(4.0 / cov.trace().real()), std::sqrt(1.4 / hermitian_evd(cov).values(0))});
            Fp *= scale;
            const CMat Bp = hop.channel * Fp;
            CHECK(min_eigenvalue(Bp.adjoint() * Bp - base) <= 1e-9);
        }
    }
}

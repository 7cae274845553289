// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#include "relay_shaper/cave_waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace relay_shaper
{

namespace
{

void check_problem(const WaterfillProblem &p)
{
    if (p.gains.size() != p.aux.size())
        throw std::invalid_argument("cave_waterfill: gains and aux must have the same length");
    if (p.gains.size() == 0)
        throw std::invalid_argument("cave_waterfill: at least one channel is required");
    if (!(p.budget > 0.0))
        throw std::invalid_argument("cave_waterfill: budget must be positive");
    if (!(p.cap > 0.0))
        throw std::invalid_argument("cave_waterfill: cap must be positive");
    for (Eigen::Index i = 0; i < p.gains.size(); ++i)
    {
        if (!(p.gains(i) >= 0.0) || !std::isfinite(p.gains(i)))
            throw std::invalid_argument("cave_waterfill: gains must be finite and nonnegative");
        if (!(p.aux(i) >= 0.0 && p.aux(i) <= 1.0))
            throw std::invalid_argument("cave_waterfill: aux must lie in [0, 1]");
    }
}

// log(1 - a t) with t = x/(x+1), x = f^2 h^2.
double log_one_minus_at(double x, double a)
{
    return std::log1p(x * (1.0 - a)) - std::log1p(x);
}

} // namespace

double marginal_mschur(double gain, double aux, double power)
{
    const double y = power * gain + 1.0;
    return aux * gain / ((1.0 - aux) * y * y + aux * y);
}

double marginal_aschur(double gain, double aux, double power)
{
    const double y = power * gain + 1.0;
    return aux * gain / (y * y);
}

double marginal(WaterfillKind kind, double gain, double aux, double power)
{
    return kind == WaterfillKind::MSchurConvex ? marginal_mschur(gain, aux, power)
                                               : marginal_aschur(gain, aux, power);
}

double kkt_power_mschur(double gain, double aux, double mu, double cap)
{
    const double ah = aux * gain;
    if (!(ah > 0.0) || mu >= ah)
        return 0.0;
    // y = f^2 h^2 + 1 solves (1-a) y^2 + a y = a h^2 / mu
    const double disc = aux * aux + 4.0 * (1.0 - aux) * ah / mu;
    const double y = 2.0 * ah / (mu * (aux + std::sqrt(disc)));
    const double p = std::max(0.0, (y - 1.0) / gain);
    return std::min(p, cap);
}

double kkt_power_aschur(double gain, double aux, double mu, double cap)
{
    const double ah = aux * gain;
    if (!(ah > 0.0) || mu >= ah)
        return 0.0;
    const double p = std::max(0.0, std::sqrt(aux / (mu * gain)) - 1.0 / gain);
    return std::min(p, cap);
}

double kkt_power(WaterfillKind kind, double gain, double aux, double mu, double cap)
{
    return kind == WaterfillKind::MSchurConvex ? kkt_power_mschur(gain, aux, mu, cap)
                                               : kkt_power_aschur(gain, aux, mu, cap);
}

double hop_objective(WaterfillKind kind, const RVec &gains, const RVec &aux, const RVec &powers)
{
    double total = 0.0;
    for (Eigen::Index i = 0; i < gains.size(); ++i)
    {
        const double x = powers(i) * gains(i);
        if (kind == WaterfillKind::MSchurConvex)
            total += log_one_minus_at(x, aux(i));
        else
            total += 1.0 - aux(i) * x / (x + 1.0);
    }
    return total;
}

WaterfillSolution cave_waterfill(const WaterfillProblem &problem)
{
    check_problem(problem);
    const Eigen::Index n = problem.gains.size();
    const double inf = std::numeric_limits<double>::infinity();

    WaterfillSolution sol;
    sol.powers = RVec::Zero(n);
    sol.capped.assign(static_cast<size_t>(n), false);

    std::vector<Eigen::Index> active;
    for (Eigen::Index i = 0; i < n; ++i)
        if (problem.aux(i) * problem.gains(i) > 0.0)
            active.push_back(i);

    double residual = problem.budget;
    int capped_count = 0;
    while (!active.empty())
    {
        ++sol.passes;
        auto fill = [&](double mu)
        {
            double s = 0.0;
            for (Eigen::Index i : active)
                s += kkt_power(problem.kind, problem.gains(i), problem.aux(i), mu, inf);
            return s;
        };

        // Water level: fill(mu) is decreasing, zero at mu = max a h^2.
        double hi = 0.0;
        for (Eigen::Index i : active)
            hi = std::max(hi, problem.aux(i) * problem.gains(i));
        double lo = hi * 0.5;
        while (fill(lo) < residual && lo > 1e-300)
            lo *= 0.5;
        for (int it = 0; it < 2000 && hi > lo * (1.0 + 4e-16); ++it)
        {
            const double mid = std::sqrt(lo * hi);
            if (mid <= lo || mid >= hi)
                break;
            if (fill(mid) > residual)
                lo = mid;
            else
                hi = mid;
        }
        // Pick the endpoint whose fill is closest to the residual budget.
        const double mu = std::abs(fill(lo) - residual) <= std::abs(fill(hi) - residual) ? lo : hi;
        sol.multiplier = mu;

        std::vector<Eigen::Index> keep;
        bool clipped = false;
        for (Eigen::Index i : active)
        {
            const double p = kkt_power(problem.kind, problem.gains(i), problem.aux(i), mu, inf);
            if (p > problem.cap)
            {
                sol.powers(i) = problem.cap;
                sol.capped[static_cast<size_t>(i)] = true;
                ++capped_count;
                clipped = true;
            }
            else
            {
                sol.powers(i) = p;
                keep.push_back(i);
            }
        }
        if (!clipped)
            break;
        active = std::move(keep);
        residual = problem.budget - capped_count * problem.cap;
        if (residual <= 0.0)
        {
            for (Eigen::Index i : active)
                sol.powers(i) = 0.0;
            break;
        }
    }

    if (active.empty())
    {
        // Every usable channel sits at the cap (or none is usable): the sum constraint is slack.
        sol.multiplier = 0.0;
        sol.sum_inactive = sol.powers.sum() < problem.budget - 1e-12;
    }
    return sol;
}

RVec kkt_residuals(const WaterfillProblem &problem, const WaterfillSolution &solution)
{
    const Eigen::Index n = problem.gains.size();
    RVec r = RVec::Zero(n);
    const double mu = solution.multiplier;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const double g = problem.gains(i), a = problem.aux(i), p = solution.powers(i);
        if (solution.capped[static_cast<size_t>(i)])
            r(i) = std::max(0.0, mu - marginal(problem.kind, g, a, problem.cap));
        else if (p > 0.0)
            r(i) = std::abs(marginal(problem.kind, g, a, p) - mu);
        else
            r(i) = std::max(0.0, marginal(problem.kind, g, a, 0.0) - mu);
    }
    return r;
}

RVec hop_gains(const HopSpec &hop, int stream_count)
{
    const OrderedSVD svd = svd_ordered(hop.channel / std::sqrt(hop.noise_variance));
    if (svd.singulars.size() < stream_count)
        throw ContractViolation("hop_gains: channel has fewer singular values than streams");
    return svd.singulars.head(stream_count).cwiseAbs2();
}

double chain_objective(WaterfillKind kind, const std::vector<RVec> &gains, const std::vector<RVec> &powers)
{
    const Eigen::Index n = gains.front().size();
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
    {
        double log_t = 0.0; // log prod_k t_ki
        for (size_t k = 0; k < gains.size(); ++k)
        {
            const double x = powers[k](i) * gains[k](i);
            log_t += x > 0.0 ? std::log(x) - std::log1p(x) : -std::numeric_limits<double>::infinity();
        }
        if (kind == WaterfillKind::MSchurConvex)
            total += std::log(-std::expm1(log_t));
        else
            total += -std::expm1(log_t);
    }
    return total;
}

MultihopAllocation multihop_allocate(const std::vector<RVec> &gains, const std::vector<double> &budgets,
                                     const std::vector<double> &caps, WaterfillKind kind, double tol, int max_iters)
{
    const size_t K = gains.size();
    if (K == 0 || budgets.size() != K || caps.size() != K)
        throw std::invalid_argument("multihop_allocate: one gain vector, budget and cap per hop is required");
    const Eigen::Index n = gains.front().size();
    for (const auto &g : gains)
        if (g.size() != n)
            throw std::invalid_argument("multihop_allocate: every hop needs the same number of eigenchannels");

    std::vector<RVec> powers(K);
    for (size_t k = 0; k < K; ++k)
        powers[k] = RVec::Constant(n, std::min(budgets[k] / static_cast<double>(n), caps[k]));

    MultihopAllocation out;
    out.hops.resize(K);
    out.objective_trace.push_back(chain_objective(kind, gains, powers));

    for (int sweep = 0; sweep < max_iters; ++sweep)
    {
        double delta = 0.0;
        for (size_t k = 0; k < K; ++k)
        {
            RVec aux = RVec::Ones(n);
            for (size_t l = 0; l < K; ++l)
            {
                if (l == k)
                    continue;
                for (Eigen::Index i = 0; i < n; ++i)
                {
                    const double x = powers[l](i) * gains[l](i);
                    aux(i) *= x / (x + 1.0);
                }
            }
            WaterfillProblem prob{gains[k], aux, budgets[k], caps[k], kind};
            WaterfillSolution sol = cave_waterfill(prob);
            delta = std::max(delta, (sol.powers - powers[k]).cwiseAbs().maxCoeff());
            powers[k] = sol.powers;
            out.hops[k] = std::move(sol);
        }
        out.sweeps = sweep + 1;
        out.objective_trace.push_back(chain_objective(kind, gains, powers));
        if (delta <= tol)
        {
            out.converged = true;
            break;
        }
    }
    return out;
}

MultihopAllocation multihop_allocate(const NetworkSpec &net, WaterfillKind kind, double tol, int max_iters)
{
    std::vector<RVec> gains;
    std::vector<double> budgets, caps;
    for (const HopSpec &hop : net.hops)
    {
        const auto *jp = std::get_if<JointPower>(&hop.constraint);
        if (jp == nullptr)
            throw ContractViolation("multihop_allocate: every hop needs a joint power constraint");
        gains.push_back(hop_gains(hop, net.stream_count));
        budgets.push_back(hop.power_budget);
        caps.push_back(jp->tau_max);
    }
    return multihop_allocate(gains, budgets, caps, kind, tol, max_iters);
}

CMat assemble_joint_F(const HopSpec &hop, const RVec &powers, Eigen::Index input_dim)
{
    if (powers.size() > hop.tx() || powers.size() > input_dim)
        throw ContractViolation("assemble_joint_F: more powers than dimensions");
    if ((powers.array() < 0.0).any())
        throw ContractViolation("assemble_joint_F: powers must be nonnegative");
    const OrderedSVD svd = svd_ordered(hop.channel / std::sqrt(hop.noise_variance));
    CMat F = CMat::Zero(hop.tx(), input_dim);
    for (Eigen::Index i = 0; i < powers.size(); ++i)
        F.col(i) = svd.right.col(i) * std::sqrt(powers(i));
    return F;
}

} // namespace relay_shaper

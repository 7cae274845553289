// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#include "relay_shaper/network_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace relay_shaper
{

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

Eigen::Index NetworkSpec::input_dim(int k) const
{
    return k == 0 ? stream_count : hops[static_cast<size_t>(k - 1)].rx();
}

void NetworkSpec::validate() const
{
    if (hops.empty())
        throw ContractViolation("network: at least one hop is required");
    if (stream_count < 1)
        throw ContractViolation("network: stream count must be positive");
    if (!(signal_variance > 0.0))
        throw ContractViolation("network: signal variance must be positive");
    for (size_t k = 0; k < hops.size(); ++k)
    {
        const HopSpec &h = hops[k];
        const std::string tag = "network: hop " + std::to_string(k + 1) + ": ";
        if (h.rx() < stream_count || h.tx() < stream_count)
            throw ContractViolation(tag + "antenna counts must be at least the stream count");
        if (!(h.noise_variance > 0.0))
            throw ContractViolation(tag + "noise variance must be positive");
        if (!(h.power_budget > 0.0))
            throw ContractViolation(tag + "power budget must be positive");
        if (const auto *ps = std::get_if<PureShaping>(&h.constraint))
        {
            if (ps->R_s.rows() != h.tx() || ps->R_s.cols() != h.tx())
                throw ContractViolation(tag + "shaping matrix must be tx x tx");
            if (hermitian_defect(ps->R_s) > kHermitianTol)
                throw ContractViolation(tag + "shaping matrix is not Hermitian");
            const double norm = ps->R_s.norm();
            if (min_eigenvalue(ps->R_s) < -kPsdRepairTol * std::max(norm, 1e-300))
                throw ContractViolation(tag + "shaping matrix is not positive semidefinite");
        }
        else
        {
            const auto &jp = std::get<JointPower>(h.constraint);
            if (!(jp.tau_max > 0.0))
                throw ContractViolation(tag + "tau_max must be positive");
        }
    }
}

CMat shaping_exponential(const RVec &thresholds, double rho)
{
    if (!(rho >= 0.0 && rho < 1.0))
        throw std::invalid_argument("shaping_exponential: rho must lie in [0, 1)");
    if (thresholds.size() == 0 || (thresholds.array() <= 0.0).any())
        throw std::invalid_argument("shaping_exponential: thresholds must be positive");
    const Eigen::Index n = thresholds.size();
    CMat R(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index l = 0; l < n; ++l)
        {
            if (j == l)
                R(j, l) = thresholds(j); // exact diagonal
            else
                R(j, l) = std::sqrt(thresholds(j)) * std::pow(rho, static_cast<double>(std::abs(j - l))) *
                          std::sqrt(thresholds(l));
        }
    return R;
}

CMat shaping_channel_matched(const HopSpec &hop, const RVec &thresholds, double eta, Weighting weighting)
{
    const Eigen::Index n = hop.tx();
    if (thresholds.size() != n)
        throw std::invalid_argument("shaping_channel_matched: one threshold per transmit antenna is required");
    if ((thresholds.array() <= 0.0).any())
        throw std::invalid_argument("shaping_channel_matched: thresholds must be positive");
    if (!(eta >= 0.0))
        throw std::invalid_argument("shaping_channel_matched: eta must be nonnegative");

    const OrderedSVD svd = svd_ordered(hop.channel / std::sqrt(hop.noise_variance));
    const CMat &V = svd.right;

    // diag(V diag(lambda) V^H)_j = sum_i |V_ji|^2 lambda_i
    const RMat weights = V.cwiseAbs2();
    Eigen::FullPivLU<RMat> lu(weights);
    lu.setThreshold(1e-12);
    if (lu.rank() < n)
        throw DegenerateChannel("shaping_channel_matched: eigenbasis system is singular");
    RVec lambda = lu.solve(thresholds);
    if (!lambda.allFinite())
        throw DegenerateChannel("shaping_channel_matched: eigenbasis system is singular");
    for (Eigen::Index i = 0; i < n; ++i)
        if (lambda(i) < 0.0)
            lambda(i) = eta;

    CMat R = hermitian_part(V * lambda.cast<cplx>().asDiagonal() * V.adjoint());
    const RVec diag = R.diagonal().real();

    if (weighting == Weighting::Matrix)
    {
        RVec scale(n);
        for (Eigen::Index j = 0; j < n; ++j)
            scale(j) = diag(j) > 0.0 ? std::sqrt(std::min(1.0, thresholds(j) / diag(j))) : 1.0;
        R = scale.cast<cplx>().asDiagonal() * R * scale.cast<cplx>().asDiagonal();
        // Scaling by sqrt(t/d) twice lands exactly on the threshold up to rounding.
        for (Eigen::Index j = 0; j < n; ++j)
            if (diag(j) > thresholds(j))
                R(j, j) = thresholds(j);
    }
    else
    {
        double beta = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j)
            if (diag(j) > 0.0)
                beta = std::min(beta, thresholds(j) / diag(j));
        if (std::isfinite(beta))
            R *= beta;
    }
    return hermitian_part(R);
}

NetworkTemplate uniform_chain(int hops, Eigen::Index antennas, int streams, double power, double noise_variance,
                              const ConstraintTemplate &constraint)
{
    NetworkTemplate tpl;
    tpl.stream_count = streams;
    tpl.signal_variance = 1.0;
    for (int k = 0; k < hops; ++k)
        tpl.hops.push_back(HopTemplate{antennas, antennas, noise_variance, power, constraint});
    return tpl;
}

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t index, std::uint64_t tag)
{
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ splitmix64(index + 0x632BE59BD9B4E019ull));
    s = splitmix64(s ^ splitmix64(tag + 0x2545F4914F6CDD1Dull));
    engine_.seed(s);
}

double SeededStream::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

cplx SeededStream::complex_gaussian(double variance)
{
    // u1 in (0, 1] keeps the logarithm finite.
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    // Real and imaginary parts each carry half of the variance.
    const double scale = std::sqrt(variance / 2.0);
    return cplx(scale * radius * std::cos(angle), scale * radius * std::sin(angle));
}

CMat SeededStream::complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, double variance)
{
    CMat M(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            M(i, j) = complex_gaussian(variance);
    return M;
}

HopConstraint resolve_constraint(const ConstraintTemplate &tpl, const HopSpec &hop)
{
    return std::visit(
        overloaded{
            [](const ExplicitShaping &e) -> HopConstraint { return PureShaping{e.R_s}; },
            [](const ExponentialShaping &e) -> HopConstraint
            { return PureShaping{shaping_exponential(e.thresholds, e.rho)}; },
            [&](const ChannelMatchedShaping &e) -> HopConstraint
            { return PureShaping{shaping_channel_matched(hop, e.thresholds, e.eta, e.weighting)}; },
            [](const JointPower &j) -> HopConstraint { return j; },
        },
        tpl);
}

NetworkSpec realize_network(const NetworkTemplate &tpl, const std::vector<CMat> &channels)
{
    if (channels.size() != tpl.hops.size())
        throw ContractViolation("realize_network: one channel per hop is required");
    NetworkSpec net;
    net.stream_count = tpl.stream_count;
    net.signal_variance = tpl.signal_variance;
    for (size_t k = 0; k < tpl.hops.size(); ++k)
    {
        const HopTemplate &h = tpl.hops[k];
        if (channels[k].rows() != h.rx || channels[k].cols() != h.tx)
            throw ContractViolation("realize_network: channel dimensions do not match the template");
        HopSpec hop;
        hop.channel = channels[k];
        hop.noise_variance = h.noise_variance;
        hop.power_budget = h.power_budget;
        hop.constraint = resolve_constraint(h.constraint, hop);
        net.hops.push_back(std::move(hop));
    }
    net.validate();
    return net;
}

NetworkSpec draw_network(const NetworkTemplate &tpl, const ChannelEnsemble &ensemble, std::uint64_t trial_index)
{
    std::vector<CMat> channels;
    channels.reserve(tpl.hops.size());
    for (size_t k = 0; k < tpl.hops.size(); ++k)
    {
        SeededStream stream(ensemble.seed, trial_index, k + 1);
        channels.push_back(stream.complex_gaussian_matrix(tpl.hops[k].rx, tpl.hops[k].tx));
    }
    return realize_network(tpl, channels);
}

NetworkSpec robust_substitute(const NetworkSpec &estimated, const std::vector<double> &error_variances)
{
    if (error_variances.size() != estimated.hops.size())
        throw ContractViolation("robust_substitute: one error variance per hop is required");
    NetworkSpec out = estimated;
    for (size_t k = 0; k < out.hops.size(); ++k)
    {
        if (error_variances[k] < 0.0)
            throw ContractViolation("robust_substitute: error variance must be nonnegative");
        out.hops[k].noise_variance += out.hops[k].power_budget * error_variances[k];
    }
    return out;
}

} // namespace relay_shaper

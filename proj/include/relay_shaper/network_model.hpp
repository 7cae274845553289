// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include "relay_shaper/matrix_core.hpp"

namespace relay_shaper
{

/// The linear system that matches the channel eigenbasis to per-antenna thresholds is singular.
class DegenerateChannel : public std::runtime_error
{
public:
    explicit DegenerateChannel(const std::string &what) : std::runtime_error(what) {}
};

/// Transmit covariance must satisfy F F^H <= R_s.
struct PureShaping
{
    CMat R_s;
};

/// Tr(F F^H) <= power_budget together with F F^H <= tau_max I.
struct JointPower
{
    double tau_max = 0.0;
};

using HopConstraint = std::variant<PureShaping, JointPower>;

struct HopSpec
{
    CMat channel;                 // rx x tx
    double noise_variance = 1.0;  // sigma^2 of the white noise at the receiving node
    double power_budget = 1.0;    // P_k
    HopConstraint constraint = JointPower{1e300};

    Eigen::Index rx() const { return channel.rows(); }
    Eigen::Index tx() const { return channel.cols(); }
};

struct NetworkSpec
{
    std::vector<HopSpec> hops;
    int stream_count = 1;         // N
    double signal_variance = 1.0; // sigma_a^2

    int hop_count() const { return static_cast<int>(hops.size()); }

    /// Dimension of the signal entering hop k (0-based): N for the source, rx of the previous hop otherwise.
    Eigen::Index input_dim(int k) const;

    /// Throws ContractViolation on inconsistent dimensions or parameters.
    void validate() const;
};

// ---- shaping-matrix construction -------------------------------------------

enum class Weighting
{
    Matrix,
    Scalar
};

/// D T D with D = diag(sqrt(p)) and T_{jl} = rho^|j-l|.
CMat shaping_exponential(const RVec &thresholds, double rho);

/// R_s sharing the right singular basis V of R_n^{-1/2} H.
///
/// Solves diag(V diag(lambda) V^H) = thresholds, replaces negative lambda entries by eta,
/// then applies matrix or scalar weighting so the diagonal does not exceed the thresholds.
CMat shaping_channel_matched(const HopSpec &hop, const RVec &thresholds, double eta, Weighting weighting);

// ---- templates and random networks -------------------------------------------

struct ExplicitShaping
{
    CMat R_s;
};

struct ExponentialShaping
{
    RVec thresholds;
    double rho = 0.0;
};

struct ChannelMatchedShaping
{
    RVec thresholds;
    double eta = 0.0;
    Weighting weighting = Weighting::Matrix;
};

using ConstraintTemplate = std::variant<ExplicitShaping, ExponentialShaping, ChannelMatchedShaping, JointPower>;

struct HopTemplate
{
    Eigen::Index rx = 1;
    Eigen::Index tx = 1;
    double noise_variance = 1.0;
    double power_budget = 1.0;
    ConstraintTemplate constraint = JointPower{1e300};
};

struct NetworkTemplate
{
    std::vector<HopTemplate> hops;
    int stream_count = 1;
    double signal_variance = 1.0;
};

/// K hops, every node with the same antenna count, identical noise, power and constraint.
NetworkTemplate uniform_chain(int hops, Eigen::Index antennas, int streams, double power, double noise_variance,
                              const ConstraintTemplate &constraint);

/// i.i.d. CN(0,1) channel entries drawn from a stream keyed by the seed.
struct ChannelEnsemble
{
    std::uint64_t seed = 0;
};

/// Deterministic random stream keyed by (seed, index, tag). Gaussian samples use the
/// Box-Muller transform so draws are identical across standard library implementations.
class SeededStream
{
public:
    SeededStream(std::uint64_t seed, std::uint64_t index, std::uint64_t tag = 0);

    /// Uniform in [0, 1).
    double uniform();
    /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
    cplx complex_gaussian(double variance = 1.0);
    /// Raw 64-bit output.
    std::uint64_t next() { return engine_(); }

    CMat complex_gaussian_matrix(Eigen::Index rows, Eigen::Index cols, double variance = 1.0);

private:
    std::mt19937_64 engine_;
};

/// Resolve a constraint template against a concrete hop (channel already set).
HopConstraint resolve_constraint(const ConstraintTemplate &tpl, const HopSpec &hop);

/// Fill the template with explicit channels (one per hop) and resolve the constraints.
NetworkSpec realize_network(const NetworkTemplate &tpl, const std::vector<CMat> &channels);

/// Draw all channels from the ensemble; deterministic in (seed, trial_index).
NetworkSpec draw_network(const NetworkTemplate &tpl, const ChannelEnsemble &ensemble, std::uint64_t trial_index);

/// Imperfect-CSI substitution: channels are taken as estimates and every noise variance
/// becomes sigma_n^2 + P_k sigma_e^2.
NetworkSpec robust_substitute(const NetworkSpec &estimated, const std::vector<double> &error_variances);

} // namespace relay_shaper

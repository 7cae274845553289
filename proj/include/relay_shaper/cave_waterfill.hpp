// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#pragma once

#include <vector>

#include "relay_shaper/matrix_core.hpp"
#include "relay_shaper/network_model.hpp"

namespace relay_shaper
{

/// Which scalar problem the powers solve.
///
/// ASchurConvex minimizes sum_i (1 - prod_k t_ki) (sum MSE; shared by the additively
/// Schur-convex and Schur-concave linear designs). MSchurConvex minimizes
/// sum_i log(1 - prod_k t_ki) (log det of the MSE matrix; capacity and the nonlinear designs).
/// Here t_ki = f_ki^2 h_ki^2 / (f_ki^2 h_ki^2 + 1).
enum class WaterfillKind
{
    ASchurConvex,
    MSchurConvex
};

struct WaterfillProblem
{
    RVec gains;     // h^2, one per eigenchannel
    RVec aux;       // a in [0, 1]; 1 for a single hop
    double budget;  // P_k
    double cap;     // tau_max, may be +inf
    WaterfillKind kind = WaterfillKind::ASchurConvex;
};

struct WaterfillSolution
{
    RVec powers;               // f^2
    double multiplier = 0.0;   // mu; 0 when the sum-power constraint is inactive
    std::vector<bool> capped;  // power pinned at the cap
    bool sum_inactive = false; // budget left unspent because every usable channel is capped
    int passes = 0;            // clip/re-fill passes of the cave algorithm
};

/// Marginal gain -d(objective)/d(f^2) for the log-det objective:
/// a h^2 / ((1 - a)(f^2 h^2 + 1)^2 + a (f^2 h^2 + 1)).
double marginal_mschur(double gain, double aux, double power);

/// Marginal gain for the sum-MSE objective: a h^2 / (h^2 f^2 + 1)^2.
double marginal_aschur(double gain, double aux, double power);

double marginal(WaterfillKind kind, double gain, double aux, double power);

/// KKT stationary power for the log-det objective at multiplier mu, clipped to [0, cap].
/// The quadratic root is evaluated in rationalized form, so aux = 1 reduces to
/// classic water-filling 1/mu - 1/h^2 without cancellation.
double kkt_power_mschur(double gain, double aux, double mu, double cap);

/// (sqrt(a / (mu h^2)) - 1/h^2)^+ clipped to cap.
double kkt_power_aschur(double gain, double aux, double mu, double cap);

double kkt_power(WaterfillKind kind, double gain, double aux, double mu, double cap);

/// Per-hop objective for fixed aux: sum_i (1 - a_i t_i) or sum_i log(1 - a_i t_i).
double hop_objective(WaterfillKind kind, const RVec &gains, const RVec &aux, const RVec &powers);

/// Cave water-filling: fill without the cap, pin every channel above the cap to the cap,
/// re-fill the remaining budget over the rest, and repeat until no channel exceeds the cap.
/// Throws std::invalid_argument on a nonpositive budget or inconsistent lengths.
WaterfillSolution cave_waterfill(const WaterfillProblem &problem);

/// Complementary-slackness residual per channel (0 when the KKT conditions hold exactly).
RVec kkt_residuals(const WaterfillProblem &problem, const WaterfillSolution &solution);

// ---- multi-hop driver ---------------------------------------------------------

/// Top-N squared singular values of R_n^{-1/2} H, nonincreasing.
RVec hop_gains(const HopSpec &hop, int stream_count);

/// Chain objective over all hops: sum_i (1 - prod_k t_ki) or sum_i log(1 - prod_k t_ki);
/// the log form is evaluated in the log domain.
double chain_objective(WaterfillKind kind, const std::vector<RVec> &gains, const std::vector<RVec> &powers);

struct MultihopAllocation
{
    std::vector<WaterfillSolution> hops;
    std::vector<double> objective_trace; // value after initialization and after every sweep
    int sweeps = 0;
    bool converged = false;
};

/// Alternating per-hop cave water-filling over scalar gains.
MultihopAllocation multihop_allocate(const std::vector<RVec> &gains, const std::vector<double> &budgets,
                                     const std::vector<double> &caps, WaterfillKind kind, double tol = 1e-8,
                                     int max_iters = 200);

/// Same, with gains taken from the network; every hop must carry a JointPower constraint.
MultihopAllocation multihop_allocate(const NetworkSpec &net, WaterfillKind kind, double tol = 1e-8,
                                     int max_iters = 200);

/// F = V_H diag(sqrt(powers)) padded with zero columns to input_dim.
CMat assemble_joint_F(const HopSpec &hop, const RVec &powers, Eigen::Index input_dim);

} // namespace relay_shaper

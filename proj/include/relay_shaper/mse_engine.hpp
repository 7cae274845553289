// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#pragma once

#include <optional>
#include <vector>

#include "relay_shaper/matrix_core.hpp"
#include "relay_shaper/network_model.hpp"

namespace relay_shaper
{

/// A complete transceiver for a K-hop chain.
///
/// F are the inner precoders (tx_k x input_dim_k), Q the unitary rotations
/// (input_dim_k square), P the physical forwarding matrices. C = I + B is the unit
/// lower-triangular feedback matrix shared by THP and DFE; it is the identity for a
/// linear transceiver.
struct Design
{
    std::vector<CMat> F;
    std::vector<CMat> Q;
    std::vector<CMat> P;
    std::optional<CMat> G;
    CMat C;

    bool is_linear(double tol = 0.0) const;
};

/// Per-hop quantities of the compact MSE form: Pi_k = I + R_n^{-1/2} H F F^H H^H R_n^{-1/2}
/// and A_k = Pi_k^{-1/2} R_n^{-1/2} H_k F_k. Both depend on F_k only.
struct HopState
{
    CMat Pi;
    CMat A;
};

/// Received covariance at every node, R_x0 = sigma_a^2 I.
std::vector<CMat> rx_covariance_chain(const NetworkSpec &net, const std::vector<CMat> &P);

/// End-to-end signal gain H_K P_K ... H_1 P_1.
CMat end_to_end_gain(const NetworkSpec &net, const std::vector<CMat> &P);

/// Effective noise covariance at the destination: sum_k sigma_k^2 M_k M_k^H with
/// M_k = H_K P_K ... H_{k+1} P_{k+1}.
CMat destination_noise_covariance(const NetworkSpec &net, const std::vector<CMat> &P);

/// E{(G r - a)(G r - a)^H}, expanded term by term over data and per-hop noise.
CMat mse_linear(const NetworkSpec &net, const std::vector<CMat> &P, const CMat &G);

/// Unified linear/DFE/THP MSE matrix
/// G R_xK G^H + sigma_a^2 C C^H - sigma_a^2 C T^H G^H - sigma_a^2 G T C^H.
CMat mse_unified(const NetworkSpec &net, const std::vector<CMat> &P, const CMat &G, const CMat &C);

/// sigma_a^2 T^H R_xK^{-1}.
CMat lmmse_equalizer(const NetworkSpec &net, const std::vector<CMat> &P);

/// MSE matrix of the linear transceiver with the LMMSE equalizer.
CMat phi_lmmse(const NetworkSpec &net, const std::vector<CMat> &P);

std::vector<HopState> hop_states(const NetworkSpec &net, const std::vector<CMat> &F);

/// sigma_a^2 (I - Q_1^H A_1^H ... Q_K^H A_K^H A_K Q_K ... A_1 Q_1).
CMat phi_lmmse_compact(const NetworkSpec &net, const std::vector<CMat> &F, const std::vector<CMat> &Q);

/// Physical precoders from (F, Q): P_1 = F_1 Q_1 / sigma_a and
/// P_k = F_k Q_k Pi_{k-1}^{-1/2} R_n_{k-1}^{-1/2}.
std::vector<CMat> lift_precoders(const NetworkSpec &net, const std::vector<CMat> &F, const std::vector<CMat> &Q);

/// Backward matrix-weighting recursion E_k = W^H E_{k+1} W + Pi with slope W = A_k Q_k and
/// intercept Pi = I - Q_k^H A_k^H A_k Q_k; returns sigma_a^2 E_1.
CMat weighting_recursion(const NetworkSpec &net, const std::vector<CMat> &F, const std::vector<CMat> &Q);

/// Transmit covariance P_k R_x_{k-1} P_k^H for every hop.
std::vector<CMat> transmit_covariances(const NetworkSpec &net, const std::vector<CMat> &P);

} // namespace relay_shaper

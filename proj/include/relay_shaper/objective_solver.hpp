// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relay_shaper/cave_waterfill.hpp"
#include "relay_shaper/mse_engine.hpp"
#include "relay_shaper/network_model.hpp"

namespace relay_shaper
{

enum class ObjectiveKind
{
    WeightedMSE,   // Tr(W Phi)
    Capacity,      // log det Phi
    ASchurConvex,  // max_i d_i(Phi)
    ASchurConcave, // sum_i d_i(Phi)
    MSchurConvex,  // sum_i d_i(C Phi C^H), i.e. sum of d^2[L] at the optimal C
    MSchurConcave  // prod_i d_i(C Phi C^H), i.e. det Phi at the optimal C
};

struct ObjectiveSpec
{
    ObjectiveKind kind = ObjectiveKind::ASchurConcave;
    CMat weight; // WeightedMSE only, Hermitian PSD

    static ObjectiveSpec weighted_mse(const CMat &W);
    static ObjectiveSpec of(ObjectiveKind kind);

    /// THP/DFE objectives use the Cholesky-based feedback matrix.
    bool nonlinear() const;
};

std::string to_string(ObjectiveKind kind);
/// Accepts the snake_case names printed by to_string; throws std::invalid_argument otherwise.
ObjectiveKind objective_from_string(const std::string &name);

/// Power-allocation problem that a joint-constraint design of this objective solves.
WaterfillKind waterfill_kind_for(ObjectiveKind kind);

enum class RotationBranch
{
    WeightBasis,   // EVD basis of W
    Arbitrary,     // capacity: any unitary, fixed to I
    Dft,           // DFT matrix
    Identity,      // I
    EqualDiagonal  // rotation equalizing the Cholesky diagonal
};

struct RotationChoice
{
    CMat U_Omega;
    RotationBranch provenance = RotationBranch::Identity;
};

/// Q_k = V_{A_k} U_{A_{k-1}}^H for k = 2..K (returned in that order, K-1 entries).
std::vector<CMat> optimal_Qk_chain(const NetworkSpec &net, const std::vector<CMat> &F);

/// Theta = (A_K Q_K ... A_2 Q_2 A_1)^H (A_K Q_K ... A_2 Q_2 A_1), N x N.
CMat composed_gram(const NetworkSpec &net, const std::vector<CMat> &F, const std::vector<CMat> &Qchain);

/// U_Omega for the objective given the composed Gram matrix.
RotationChoice rotation_for(const ObjectiveSpec &objective, const CMat &gram);

/// Q_1 = U_Theta U_Omega^H.
CMat optimal_Q1(const NetworkSpec &net, const std::vector<CMat> &F, const std::vector<CMat> &Qchain,
                const ObjectiveSpec &objective);

/// C = diag(L_11..L_NN) L^{-1} with phi = L L^H; C phi C^H = diag(L_ii^2).
CMat optimal_C(const CMat &phi);

/// Objective value of a complete design, evaluated on the unified MSE matrix.
double evaluate_objective(const ObjectiveSpec &objective, const Design &design, const NetworkSpec &net);

/// Compose the rotations, lifted precoders, equalizer and feedback around per-hop F.
/// For nonlinear objectives the equalizer is C G_LMMSE so the unified MSE equals C Phi C^H.
Design assemble_design(const NetworkSpec &net, const ObjectiveSpec &objective, const std::vector<CMat> &F);

struct DesignOutcome
{
    Design design;
    std::optional<MultihopAllocation> allocation; // joint constraints only
    std::vector<bool> shaping_within_budget;      // pure shaping only: Tr(R_s) <= P_k
};

/// Per-hop F for the network: closed form under pure shaping, cave water-filling under
/// joint constraints. All hops must use the same constraint family.
DesignOutcome design_transceiver(const NetworkSpec &net, const ObjectiveSpec &objective, double tol = 1e-8,
                                 int max_iters = 200);

} // namespace relay_shaper

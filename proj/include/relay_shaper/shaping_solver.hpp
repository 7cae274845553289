// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#pragma once

#include "relay_shaper/matrix_core.hpp"

namespace relay_shaper
{

struct ShapingSolution
{
    CMat F;                   // tx x input_dim, only the first N columns are nonzero
    CMat achieved_covariance; // F F^H
    int active_rank = 0;      // min(N, rank(R_s))
};

/// Optimal inner precoder under F F^H <= R_s and rank(F F^H) <= N.
///
/// F = U_Rs [diag(sqrt(lambda_1..N)) 0] with the arbitrary right unitary fixed to the
/// identity. When rank(R_s) <= N this reproduces R_s exactly; otherwise F F^H keeps the
/// N dominant eigenpairs. The result does not depend on the channel.
/// input_dim defaults to N (source hop).
ShapingSolution solve_pure_shaping(const CMat &R_s, int stream_count, Eigen::Index input_dim = -1);

/// True when Tr(R_s) <= P + 1e-9, i.e. the sum-power constraint is implied by the shaping one.
bool shaping_implies_sum_power(const CMat &R_s, double power_budget);

} // namespace relay_shaper

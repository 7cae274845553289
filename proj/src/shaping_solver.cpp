// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#include "relay_shaper/shaping_solver.hpp"

#include <algorithm>
#include <cmath>

namespace relay_shaper
{

ShapingSolution solve_pure_shaping(const CMat &R_s, int stream_count, Eigen::Index input_dim)
{
    if (stream_count < 1)
        throw ContractViolation("solve_pure_shaping: stream count must be positive");
    if (input_dim < 0)
        input_dim = stream_count;
    if (input_dim < stream_count)
        throw ContractViolation("solve_pure_shaping: input dimension is smaller than the stream count");

    const OrderedEVD evd = hermitian_evd(R_s);
    const Eigen::Index n = evd.values.size();
    if (n > 0 && evd.values(n - 1) < 0.0)
        throw ContractViolation("solve_pure_shaping: shaping matrix is not positive semidefinite");

    const Eigen::Index m = std::min<Eigen::Index>(stream_count, n);
    ShapingSolution out;
    out.F = CMat::Zero(n, input_dim);
    const double floor = n > 0 ? 1e-9 * std::max(evd.values(0), 0.0) : 0.0;
    for (Eigen::Index j = 0; j < m; ++j)
    {
        out.F.col(j) = evd.vectors.col(j) * std::sqrt(evd.values(j));
        if (evd.values(j) > floor)
            ++out.active_rank;
    }
    out.achieved_covariance = hermitian_part(out.F * out.F.adjoint());
    return out;
}

bool shaping_implies_sum_power(const CMat &R_s, double power_budget)
{
    return R_s.trace().real() <= power_budget + 1e-9;
}

} // namespace relay_shaper

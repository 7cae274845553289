// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#include "relay_shaper/objective_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "relay_shaper/shaping_solver.hpp"

namespace relay_shaper
{

ObjectiveSpec ObjectiveSpec::weighted_mse(const CMat &W)
{
    if (W.rows() != W.cols() || hermitian_defect(W) > kHermitianTol)
        throw ContractViolation("weighted MSE: weight must be a Hermitian matrix");
    if (min_eigenvalue(W) < -kPsdRepairTol * std::max(W.norm(), 1e-300))
        throw ContractViolation("weighted MSE: weight must be positive semidefinite");
    ObjectiveSpec s;
    s.kind = ObjectiveKind::WeightedMSE;
    s.weight = W;
    return s;
}

ObjectiveSpec ObjectiveSpec::of(ObjectiveKind kind)
{
    if (kind == ObjectiveKind::WeightedMSE)
        throw ContractViolation("weighted MSE needs a weight matrix");
    ObjectiveSpec s;
    s.kind = kind;
    return s;
}

bool ObjectiveSpec::nonlinear() const
{
    return kind == ObjectiveKind::MSchurConvex || kind == ObjectiveKind::MSchurConcave;
}

std::string to_string(ObjectiveKind kind)
{
    switch (kind)
    {
    case ObjectiveKind::WeightedMSE: return "weighted_mse";
    case ObjectiveKind::Capacity: return "capacity";
    case ObjectiveKind::ASchurConvex: return "a_schur_convex";
    case ObjectiveKind::ASchurConcave: return "a_schur_concave";
    case ObjectiveKind::MSchurConvex: return "m_schur_convex";
    case ObjectiveKind::MSchurConcave: return "m_schur_concave";
    }
    return "unknown";
}

ObjectiveKind objective_from_string(const std::string &name)
{
    for (ObjectiveKind k : {ObjectiveKind::WeightedMSE, ObjectiveKind::Capacity, ObjectiveKind::ASchurConvex,
                            ObjectiveKind::ASchurConcave, ObjectiveKind::MSchurConvex, ObjectiveKind::MSchurConcave})
        if (to_string(k) == name)
            return k;
    throw std::invalid_argument("unknown objective '" + name + "'");
}

WaterfillKind waterfill_kind_for(ObjectiveKind kind)
{
    switch (kind)
    {
    case ObjectiveKind::WeightedMSE:
    case ObjectiveKind::ASchurConvex:
    case ObjectiveKind::ASchurConcave: return WaterfillKind::ASchurConvex;
    default: return WaterfillKind::MSchurConvex;
    }
}

std::vector<CMat> optimal_Qk_chain(const NetworkSpec &net, const std::vector<CMat> &F)
{
    const auto states = hop_states(net, F);
    std::vector<OrderedSVD> svds;
    svds.reserve(states.size());
    for (const HopState &st : states)
        svds.push_back(svd_ordered(st.A));

    std::vector<CMat> out;
    for (size_t k = 1; k < states.size(); ++k)
        out.push_back(svds[k].right * svds[k - 1].left.adjoint());
    return out;
}

CMat composed_gram(const NetworkSpec &net, const std::vector<CMat> &F, const std::vector<CMat> &Qchain)
{
    if (Qchain.size() + 1 != F.size())
        throw ContractViolation("composed_gram: expected K-1 chain rotations");
    const auto states = hop_states(net, F);
    CMat Z = states[0].A;
    for (size_t k = 1; k < states.size(); ++k)
        Z = states[k].A * Qchain[k - 1] * Z;
    return hermitian_part(Z.adjoint() * Z);
}

RotationChoice rotation_for(const ObjectiveSpec &objective, const CMat &gram)
{
    const Eigen::Index n = gram.rows();
    RotationChoice out;
    switch (objective.kind)
    {
    case ObjectiveKind::WeightedMSE:
        if (objective.weight.rows() != n)
            throw ContractViolation("weighted MSE: weight dimension must equal the stream count");
        out.U_Omega = hermitian_evd(objective.weight).vectors;
        out.provenance = RotationBranch::WeightBasis;
        break;
    case ObjectiveKind::Capacity:
        out.U_Omega = CMat::Identity(n, n);
        out.provenance = RotationBranch::Arbitrary;
        break;
    case ObjectiveKind::ASchurConvex:
        out.U_Omega = dft_matrix(static_cast<int>(n));
        out.provenance = RotationBranch::Dft;
        break;
    case ObjectiveKind::ASchurConcave:
    case ObjectiveKind::MSchurConcave:
        out.U_Omega = CMat::Identity(n, n);
        out.provenance = RotationBranch::Identity;
        break;
    case ObjectiveKind::MSchurConvex:
    {
        // With Q_1 = U_Theta U_Omega^H the LMMSE matrix is U_Omega (I - Lambda) U_Omega^H,
        // so U_Omega = Q^H where Q equalizes the Cholesky diagonal of I - Lambda.
        const RVec lambda = hermitian_evd(gram).values;
        const CMat residual = (RVec::Ones(n) - lambda).cast<cplx>().asDiagonal();
        out.U_Omega = equal_diagonal_rotation(residual).adjoint();
        out.provenance = RotationBranch::EqualDiagonal;
        break;
    }
    }
    return out;
}

CMat optimal_Q1(const NetworkSpec &net, const std::vector<CMat> &F, const std::vector<CMat> &Qchain,
                const ObjectiveSpec &objective)
{
    const CMat gram = composed_gram(net, F, Qchain);
    const OrderedEVD evd = hermitian_evd(gram);
    const RotationChoice rot = rotation_for(objective, gram);
    return evd.vectors * rot.U_Omega.adjoint();
}

CMat optimal_C(const CMat &phi)
{
    const CMat L = cholesky_lower(phi).L;
    const Eigen::Index n = L.rows();
    // diag(L) L^{-1} via a triangular solve.
    const CMat Linv = L.triangularView<Eigen::Lower>().solve(CMat::Identity(n, n));
    CMat C = L.diagonal().asDiagonal() * Linv;
    // Exact structure: unit diagonal, zero strictly-upper part.
    for (Eigen::Index i = 0; i < n; ++i)
    {
        C(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j)
            C(i, j) = 0.0;
    }
    return C;
}

double evaluate_objective(const ObjectiveSpec &objective, const Design &design, const NetworkSpec &net)
{
    if (!design.G)
        throw ContractViolation("evaluate_objective: design has no equalizer");
    const CMat phi = mse_unified(net, design.P, *design.G, design.C);
    const RVec d = phi.diagonal().real();
    switch (objective.kind)
    {
    case ObjectiveKind::WeightedMSE: return (objective.weight * phi).trace().real();
    case ObjectiveKind::Capacity:
    {
        const CMat L = cholesky_lower(phi).L;
        return 2.0 * L.diagonal().real().array().log().sum();
    }
    case ObjectiveKind::ASchurConvex: return d.maxCoeff();
    case ObjectiveKind::ASchurConcave: return d.sum();
    case ObjectiveKind::MSchurConvex: return d.sum();
    case ObjectiveKind::MSchurConcave: return d.prod();
    }
    return 0.0;
}

Design assemble_design(const NetworkSpec &net, const ObjectiveSpec &objective, const std::vector<CMat> &F)
{
    if (static_cast<int>(F.size()) != net.hop_count())
        throw ContractViolation("assemble_design: one inner precoder per hop is required");
    const std::vector<CMat> chain = optimal_Qk_chain(net, F);

    Design d;
    d.F = F;
    d.Q.push_back(optimal_Q1(net, F, chain, objective));
    d.Q.insert(d.Q.end(), chain.begin(), chain.end());
    d.P = lift_precoders(net, d.F, d.Q);

    const CMat G = lmmse_equalizer(net, d.P);
    const Eigen::Index n = net.stream_count;
    if (objective.nonlinear())
    {
        d.C = optimal_C(phi_lmmse(net, d.P));
        d.G = d.C * G;
    }
    else
    {
        d.C = CMat::Identity(n, n);
        d.G = G;
    }
    return d;
}

DesignOutcome design_transceiver(const NetworkSpec &net, const ObjectiveSpec &objective, double tol, int max_iters)
{
    net.validate();
    size_t shaping = 0;
    for (const HopSpec &hop : net.hops)
        shaping += std::holds_alternative<PureShaping>(hop.constraint) ? 1 : 0;
    if (shaping != 0 && shaping != net.hops.size())
        throw ContractViolation("design_transceiver: all hops must use the same constraint family");

    DesignOutcome out;
    std::vector<CMat> F;
    if (shaping == net.hops.size())
    {
        for (int k = 0; k < net.hop_count(); ++k)
        {
            const HopSpec &hop = net.hops[static_cast<size_t>(k)];
            const CMat &R_s = std::get<PureShaping>(hop.constraint).R_s;
            F.push_back(solve_pure_shaping(R_s, net.stream_count, net.input_dim(k)).F);
            out.shaping_within_budget.push_back(shaping_implies_sum_power(R_s, hop.power_budget));
        }
    }
    else
    {
        MultihopAllocation alloc = multihop_allocate(net, waterfill_kind_for(objective.kind), tol, max_iters);
        for (int k = 0; k < net.hop_count(); ++k)
            F.push_back(assemble_joint_F(net.hops[static_cast<size_t>(k)], alloc.hops[static_cast<size_t>(k)].powers,
                                         net.input_dim(k)));
        out.allocation = std::move(alloc);
    }
    out.design = assemble_design(net, objective, F);
    return out;
}

} // namespace relay_shaper

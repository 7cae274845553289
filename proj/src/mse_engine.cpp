// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#include "relay_shaper/mse_engine.hpp"

#include <cmath>

namespace relay_shaper
{

namespace
{

void check_precoders(const NetworkSpec &net, const std::vector<CMat> &P)
{
    if (static_cast<int>(P.size()) != net.hop_count())
        throw ContractViolation("one precoder per hop is required");
    for (int k = 0; k < net.hop_count(); ++k)
    {
        const CMat &Pk = P[static_cast<size_t>(k)];
        if (Pk.rows() != net.hops[static_cast<size_t>(k)].tx() || Pk.cols() != net.input_dim(k))
            throw ContractViolation("precoder " + std::to_string(k + 1) + " has wrong dimensions");
    }
}

void check_inner(const NetworkSpec &net, const std::vector<CMat> &F, const std::vector<CMat> &Q)
{
    if (static_cast<int>(F.size()) != net.hop_count() || static_cast<int>(Q.size()) != net.hop_count())
        throw ContractViolation("one inner precoder and one rotation per hop are required");
    for (int k = 0; k < net.hop_count(); ++k)
    {
        const auto uk = static_cast<size_t>(k);
        if (F[uk].rows() != net.hops[uk].tx() || F[uk].cols() != net.input_dim(k))
            throw ContractViolation("inner precoder " + std::to_string(k + 1) + " has wrong dimensions");
        if (Q[uk].rows() != net.input_dim(k) || Q[uk].cols() != net.input_dim(k))
            throw ContractViolation("rotation " + std::to_string(k + 1) + " has wrong dimensions");
    }
}

// X^{-1} B for Hermitian PD X.
CMat hermitian_solve(const CMat &X, const CMat &B)
{
    Eigen::LLT<CMat> llt(hermitian_part(X));
    if (llt.info() != Eigen::Success)
        throw ContractViolation("hermitian_solve: matrix is not positive definite");
    return llt.solve(B);
}

} // namespace

bool Design::is_linear(double tol) const
{
    if (C.size() == 0)
        return true;
    return (C - CMat::Identity(C.rows(), C.cols())).cwiseAbs().maxCoeff() <= tol;
}

std::vector<CMat> rx_covariance_chain(const NetworkSpec &net, const std::vector<CMat> &P)
{
    check_precoders(net, P);
    std::vector<CMat> out;
    CMat R = net.signal_variance * CMat::Identity(net.stream_count, net.stream_count);
    for (int k = 0; k < net.hop_count(); ++k)
    {
        const HopSpec &h = net.hops[static_cast<size_t>(k)];
        const CMat HP = h.channel * P[static_cast<size_t>(k)];
        R = HP * R * HP.adjoint() + h.noise_variance * CMat::Identity(h.rx(), h.rx());
        R = hermitian_part(R);
        out.push_back(R);
    }
    return out;
}

CMat end_to_end_gain(const NetworkSpec &net, const std::vector<CMat> &P)
{
    check_precoders(net, P);
    CMat T = CMat::Identity(net.stream_count, net.stream_count);
    for (int k = 0; k < net.hop_count(); ++k)
        T = net.hops[static_cast<size_t>(k)].channel * P[static_cast<size_t>(k)] * T;
    return T;
}

CMat destination_noise_covariance(const NetworkSpec &net, const std::vector<CMat> &P)
{
    check_precoders(net, P);
    const int K = net.hop_count();
    const Eigen::Index m = net.hops.back().rx();
    CMat noise = CMat::Zero(m, m);
    // M accumulates H_K P_K ... H_{k+1} P_{k+1}, walking backwards.
    CMat M = CMat::Identity(m, m);
    for (int k = K - 1; k >= 0; --k)
    {
        const HopSpec &h = net.hops[static_cast<size_t>(k)];
        noise += h.noise_variance * M * M.adjoint();
        if (k > 0)
            M = M * h.channel * P[static_cast<size_t>(k)];
    }
    return hermitian_part(noise);
}

CMat mse_linear(const NetworkSpec &net, const std::vector<CMat> &P, const CMat &G)
{
    const CMat T = end_to_end_gain(net, P);
    if (G.rows() != net.stream_count || G.cols() != T.rows())
        throw ContractViolation("mse_linear: equalizer has wrong dimensions");
    const CMat E = G * T - CMat::Identity(net.stream_count, net.stream_count);
    const CMat noise = destination_noise_covariance(net, P);
    return hermitian_part(net.signal_variance * E * E.adjoint() + G * noise * G.adjoint());
}

CMat mse_unified(const NetworkSpec &net, const std::vector<CMat> &P, const CMat &G, const CMat &C)
{
    const CMat T = end_to_end_gain(net, P);
    const CMat R = rx_covariance_chain(net, P).back();
    if (G.rows() != net.stream_count || G.cols() != R.rows())
        throw ContractViolation("mse_unified: equalizer has wrong dimensions");
    if (C.rows() != net.stream_count || C.cols() != net.stream_count)
        throw ContractViolation("mse_unified: feedback matrix has wrong dimensions");
    const double s2 = net.signal_variance;
    const CMat cross = G * T * C.adjoint();
    return hermitian_part(G * R * G.adjoint() + s2 * C * C.adjoint() - s2 * cross.adjoint() - s2 * cross);
}

CMat lmmse_equalizer(const NetworkSpec &net, const std::vector<CMat> &P)
{
    const CMat T = end_to_end_gain(net, P);
    const CMat R = rx_covariance_chain(net, P).back();
    // sigma^2 T^H R^{-1} = sigma^2 (R^{-1} T)^H
    return net.signal_variance * hermitian_solve(R, T).adjoint();
}

CMat phi_lmmse(const NetworkSpec &net, const std::vector<CMat> &P)
{
    const CMat T = end_to_end_gain(net, P);
    const CMat R = rx_covariance_chain(net, P).back();
    const double s2 = net.signal_variance;
    const CMat I = CMat::Identity(net.stream_count, net.stream_count);
    return hermitian_part(s2 * I - s2 * s2 * T.adjoint() * hermitian_solve(R, T));
}

std::vector<HopState> hop_states(const NetworkSpec &net, const std::vector<CMat> &F)
{
    std::vector<HopState> out;
    for (int k = 0; k < net.hop_count(); ++k)
    {
        const HopSpec &h = net.hops[static_cast<size_t>(k)];
        const CMat B = h.channel * F[static_cast<size_t>(k)] / std::sqrt(h.noise_variance);
        HopState st;
        st.Pi = hermitian_part(CMat::Identity(h.rx(), h.rx()) + B * B.adjoint());
        st.A = hermitian_inv_sqrt(st.Pi) * B;
        out.push_back(std::move(st));
    }
    return out;
}

CMat phi_lmmse_compact(const NetworkSpec &net, const std::vector<CMat> &F, const std::vector<CMat> &Q)
{
    check_inner(net, F, Q);
    const auto states = hop_states(net, F);
    CMat Z = CMat::Identity(net.stream_count, net.stream_count);
    for (int k = 0; k < net.hop_count(); ++k)
        Z = states[static_cast<size_t>(k)].A * Q[static_cast<size_t>(k)] * Z;
    const CMat I = CMat::Identity(net.stream_count, net.stream_count);
    return hermitian_part(net.signal_variance * (I - Z.adjoint() * Z));
}

std::vector<CMat> lift_precoders(const NetworkSpec &net, const std::vector<CMat> &F, const std::vector<CMat> &Q)
{
    check_inner(net, F, Q);
    const auto states = hop_states(net, F);
    std::vector<CMat> P;
    P.push_back(F[0] * Q[0] / std::sqrt(net.signal_variance));
    for (int k = 1; k < net.hop_count(); ++k)
    {
        const auto uk = static_cast<size_t>(k);
        const double prev_noise = net.hops[uk - 1].noise_variance;
        P.push_back(F[uk] * Q[uk] * hermitian_inv_sqrt(states[uk - 1].Pi) / std::sqrt(prev_noise));
    }
    return P;
}

CMat weighting_recursion(const NetworkSpec &net, const std::vector<CMat> &F, const std::vector<CMat> &Q)
{
    check_inner(net, F, Q);
    const auto states = hop_states(net, F);
    const int K = net.hop_count();

    CMat E;
    for (int k = K - 1; k >= 0; --k)
    {
        const auto uk = static_cast<size_t>(k);
        const CMat W = states[uk].A * Q[uk];
        const CMat intercept = CMat::Identity(W.cols(), W.cols()) - W.adjoint() * W;
        if (k == K - 1)
            E = intercept;
        else
            E = W.adjoint() * E * W + intercept;
    }
    return hermitian_part(net.signal_variance * E);
}

std::vector<CMat> transmit_covariances(const NetworkSpec &net, const std::vector<CMat> &P)
{
    const auto rx = rx_covariance_chain(net, P);
    std::vector<CMat> out;
    for (int k = 0; k < net.hop_count(); ++k)
    {
        const auto uk = static_cast<size_t>(k);
        const CMat prev = k == 0 ? CMat(net.signal_variance * CMat::Identity(net.stream_count, net.stream_count))
                                 : rx[uk - 1];
        out.push_back(hermitian_part(P[uk] * prev * P[uk].adjoint()));
    }
    return out;
}

} // namespace relay_shaper

// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relay_shaper/mse_engine.hpp"
#include "relay_shaper/network_model.hpp"
#include "relay_shaper/objective_solver.hpp"

namespace relay_shaper
{

enum class Modulation
{
    QPSK,
    QAM16
};

/// Square M-QAM with per-dimension PAM labelling.
struct ModulationScheme
{
    Modulation kind = Modulation::QPSK;
    bool gray = true;
    bool unit_energy = true;

    int order() const;            // M
    int bits_per_symbol() const;  // log2 M
    int levels() const;           // sqrt(M) points per dimension
    double spacing() const;       // distance between neighbouring points
    /// Side of the square THP modulo region: sqrt(M) * spacing.
    double modulo_base() const;

    cplx map(unsigned bits) const;
    /// Nearest-point hard decision, returned as the bit label.
    unsigned demap(cplx y) const;
    std::vector<cplx> constellation() const;
};

enum class Receiver
{
    Linear,
    DFE,
    THP
};

enum class Metric
{
    BER,
    Capacity,
    SumMSE
};

std::string to_string(Modulation m);
std::string to_string(Receiver r);
std::string to_string(Metric m);
Modulation modulation_from_string(const std::string &name);
Receiver receiver_from_string(const std::string &name);
Metric metric_from_string(const std::string &name);

/// Wrap each real and imaginary component into [-base/2, base/2).
cplx thp_modulo(cplx x, double base);
CVec thp_modulo(const CVec &x, double base);

struct SimConfig
{
    /// Noise variances in the template are replaced per SNR point by P_k / SNR.
    NetworkTemplate network;
    ObjectiveSpec objective;
    Receiver receiver = Receiver::Linear;
    ModulationScheme modulation;
    std::vector<double> snr_db;
    int trials = 1;
    int symbols_per_trial = 100;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string label;
};

struct SimReport
{
    std::vector<double> snr_db;
    Metric metric = Metric::BER;
    std::vector<double> values;
    std::vector<double> std_errors;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string design_kind;
    /// THP designs assume the precoded signal variance equals the data variance.
    bool thp_variance_approximation = false;
    // BER bookkeeping, one entry per SNR point.
    std::vector<long long> bits;
    std::vector<long long> bit_errors;
    std::vector<long long> symbol_errors;
    std::vector<long long> single_bit_symbol_errors;
};

struct TrialCounts
{
    long long bits = 0;
    long long bit_errors = 0;
    long long symbols = 0;
    long long symbol_errors = 0;
    long long single_bit_symbol_errors = 0;

    TrialCounts &operator+=(const TrialCounts &o);
};

/// Send `symbols` random symbol vectors through the chain with fresh noise and detect them.
/// The receiver slices (G r)_i after removing the per-stream bias; the DFE subtracts
/// B = C - I times past decisions, THP precancels with C^{-1} and a modulo at both ends.
/// With C = I all three receivers follow the same path.
TrialCounts simulate_trial(const NetworkSpec &net, const Design &design, Receiver receiver,
                           const ModulationScheme &modulation, int symbols, SeededStream &rng);

/// -log2 det(Phi_LMMSE / sigma_a^2) for the given precoders.
double capacity_bits(const NetworkSpec &net, const std::vector<CMat> &P);
/// Tr(Phi_LMMSE) / (N sigma_a^2).
double normalized_mse(const NetworkSpec &net, const std::vector<CMat> &P);

/// Noise variance per hop at the given per-hop SNR (P_k / sigma^2).
NetworkTemplate at_snr(const NetworkTemplate &tpl, double snr_db);

SimReport run_ber(const SimConfig &config);
/// Capacity-maximizing design; averages -log2 det(Phi_LMMSE / sigma_a^2).
SimReport run_capacity(const SimConfig &config);
/// Sum-MSE design; averages Tr(Phi_LMMSE) / (N sigma_a^2).
SimReport run_mse(const SimConfig &config);
SimReport run_metric(Metric metric, const SimConfig &config);

/// Threads from the environment variable RELAY_SHAPER_THREADS, or 1.
int default_threads();

} // namespace relay_shaper

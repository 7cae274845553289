// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#include "relay_shaper/link_sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace relay_shaper
{

namespace
{

// Stream tag for data bits and noise; channel draws use tags 1..K.
constexpr std::uint64_t kDataTag = 0xDA7A;

// PAM level index -> label, per dimension.
unsigned level_label(int level, bool gray)
{
    const auto u = static_cast<unsigned>(level);
    return gray ? (u ^ (u >> 1)) : u;
}

int label_level(unsigned label, int levels, bool gray)
{
    if (!gray)
        return static_cast<int>(label);
    // inverse Gray code
    unsigned v = label;
    for (unsigned shift = 1; shift < static_cast<unsigned>(levels); shift <<= 1)
        v ^= v >> shift;
    return static_cast<int>(v);
}

int slice_level(double x, int levels, double spacing)
{
    // points at (2l - (levels-1)) * spacing/2
    const double idx = (x / (spacing / 2.0) + (levels - 1)) / 2.0;
    return std::clamp(static_cast<int>(std::lround(idx)), 0, levels - 1);
}

double level_value(int level, int levels, double spacing)
{
    return (2 * level - (levels - 1)) * spacing / 2.0;
}

double wrap(double x, double base)
{
    return x - base * std::floor(x / base + 0.5);
}

template <class Fn> void parallel_for(int count, int threads, Fn &&fn)
{
    threads = std::max(1, std::min(threads, count));
    if (threads == 1)
    {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(
            [&, t]
            {
                try
                {
                    for (int i = t; i < count; i += threads)
                        fn(i);
                }
                catch (...)
                {
                    errors[static_cast<size_t>(t)] = std::current_exception();
                }
            });
    for (auto &th : pool)
        th.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

std::string design_label(const SimConfig &c, const ObjectiveSpec &objective)
{
    if (!c.label.empty())
        return c.label;
    std::string s = to_string(objective.kind);
    if (objective.nonlinear())
        s += "/" + to_string(c.receiver);
    return s;
}

void check_config(const SimConfig &c)
{
    if (c.trials <= 0)
        throw std::invalid_argument("simulation: trials must be positive");
    if (c.symbols_per_trial <= 0)
        throw std::invalid_argument("simulation: symbols_per_trial must be positive");
    if (c.snr_db.empty())
        throw std::invalid_argument("simulation: SNR grid is empty");
}

// Per-trial scalar metric, averaged over trials in index order.
SimReport run_scalar(const SimConfig &config, const ObjectiveSpec &objective, Metric metric,
                     const std::function<double(const NetworkSpec &, const Design &)> &value)
{
    check_config(config);
    SimReport rep;
    rep.snr_db = config.snr_db;
    rep.metric = metric;
    rep.trials = config.trials;
    rep.seed = config.seed;
    rep.design_kind = design_label(config, objective);

    const ChannelEnsemble ens{config.seed};
    for (size_t s = 0; s < config.snr_db.size(); ++s)
    {
        const NetworkTemplate tpl = at_snr(config.network, config.snr_db[s]);
        std::vector<double> v(static_cast<size_t>(config.trials));
        parallel_for(config.trials, config.threads,
                     [&](int t)
                     {
                         const std::uint64_t idx = s * static_cast<std::uint64_t>(config.trials) + t;
                         const NetworkSpec net = draw_network(tpl, ens, idx);
                         const DesignOutcome out = design_transceiver(net, objective);
                         v[static_cast<size_t>(t)] = value(net, out.design);
                     });
        double sum = 0.0;
        for (double x : v)
            sum += x;
        const double mean = sum / config.trials;
        double ss = 0.0;
        for (double x : v)
            ss += (x - mean) * (x - mean);
        const double sd = config.trials > 1 ? std::sqrt(ss / (config.trials - 1)) : 0.0;
        rep.values.push_back(mean);
        rep.std_errors.push_back(sd / std::sqrt(static_cast<double>(config.trials)));
    }
    return rep;
}

} // namespace

int ModulationScheme::order() const
{
    return kind == Modulation::QPSK ? 4 : 16;
}

int ModulationScheme::bits_per_symbol() const
{
    return kind == Modulation::QPSK ? 2 : 4;
}

int ModulationScheme::levels() const
{
    return kind == Modulation::QPSK ? 2 : 4;
}

double ModulationScheme::spacing() const
{
    if (!unit_energy)
        return 2.0;
    // E|s|^2 = 2 (L^2 - 1) / 3 * (d/2)^2 = 1
    const double L = levels();
    return 2.0 / std::sqrt(2.0 * (L * L - 1.0) / 3.0);
}

double ModulationScheme::modulo_base() const
{
    return levels() * spacing();
}

cplx ModulationScheme::map(unsigned bits) const
{
    const int L = levels();
    const int half = bits_per_symbol() / 2;
    const unsigned mask = (1u << half) - 1u;
    const unsigned li = (bits >> half) & mask;
    const unsigned lq = bits & mask;
    const double d = spacing();
    return {level_value(label_level(li, L, gray), L, d), level_value(label_level(lq, L, gray), L, d)};
}

unsigned ModulationScheme::demap(cplx y) const
{
    const int L = levels();
    const int half = bits_per_symbol() / 2;
    const double d = spacing();
    const unsigned li = level_label(slice_level(y.real(), L, d), gray);
    const unsigned lq = level_label(slice_level(y.imag(), L, d), gray);
    return (li << half) | lq;
}

std::vector<cplx> ModulationScheme::constellation() const
{
    std::vector<cplx> pts;
    for (unsigned b = 0; b < static_cast<unsigned>(order()); ++b)
        pts.push_back(map(b));
    return pts;
}

std::string to_string(Modulation m)
{
    return m == Modulation::QPSK ? "qpsk" : "16qam";
}

std::string to_string(Receiver r)
{
    switch (r)
    {
    case Receiver::Linear: return "linear";
    case Receiver::DFE: return "dfe";
    case Receiver::THP: return "thp";
    }
    return "unknown";
}

std::string to_string(Metric m)
{
    switch (m)
    {
    case Metric::BER: return "ber";
    case Metric::Capacity: return "capacity";
    case Metric::SumMSE: return "sum_mse";
    }
    return "unknown";
}

Modulation modulation_from_string(const std::string &name)
{
    if (name == "qpsk")
        return Modulation::QPSK;
    if (name == "16qam")
        return Modulation::QAM16;
    throw std::invalid_argument("unknown modulation '" + name + "'");
}

Receiver receiver_from_string(const std::string &name)
{
    for (Receiver r : {Receiver::Linear, Receiver::DFE, Receiver::THP})
        if (to_string(r) == name)
            return r;
    throw std::invalid_argument("unknown transceiver '" + name + "'");
}

Metric metric_from_string(const std::string &name)
{
    for (Metric m : {Metric::BER, Metric::Capacity, Metric::SumMSE})
        if (to_string(m) == name)
            return m;
    throw std::invalid_argument("unknown metric '" + name + "'");
}

cplx thp_modulo(cplx x, double base)
{
    if (!(base > 0.0))
        throw std::invalid_argument("thp_modulo: base must be positive");
    return {wrap(x.real(), base), wrap(x.imag(), base)};
}

CVec thp_modulo(const CVec &x, double base)
{
    CVec out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i)
        out(i) = thp_modulo(x(i), base);
    return out;
}

TrialCounts &TrialCounts::operator+=(const TrialCounts &o)
{
    bits += o.bits;
    bit_errors += o.bit_errors;
    symbols += o.symbols;
    symbol_errors += o.symbol_errors;
    single_bit_symbol_errors += o.single_bit_symbol_errors;
    return *this;
}

TrialCounts simulate_trial(const NetworkSpec &net, const Design &design, Receiver receiver,
                           const ModulationScheme &modulation, int symbols, SeededStream &rng)
{
    if (!design.G)
        throw ContractViolation("simulate_trial: design has no equalizer");
    if (static_cast<int>(design.P.size()) != net.hop_count())
        throw ContractViolation("simulate_trial: one precoder per hop is required");
    const Eigen::Index N = net.stream_count;
    const CMat &G = *design.G;
    const CMat C = design.C.size() == 0 ? CMat::Identity(N, N) : design.C;
    const bool feedback = receiver != Receiver::Linear && !design.is_linear(0.0);
    const double base = modulation.modulo_base();
    const double sigma_a = std::sqrt(net.signal_variance);
    const int nbits = modulation.bits_per_symbol();

    // Labels and symbols, unit energy scaled to sigma_a^2.
    std::vector<unsigned> labels(static_cast<size_t>(N * symbols));
    CMat A(N, symbols);
    for (int s = 0; s < symbols; ++s)
        for (Eigen::Index i = 0; i < N; ++i)
        {
            const unsigned b = static_cast<unsigned>(rng.next() >> (64 - nbits));
            labels[static_cast<size_t>(s * N + i)] = b;
            A(i, s) = modulation.map(b);
        }

    CMat X0 = A;
    if (feedback && receiver == Receiver::THP)
    {
        for (int s = 0; s < symbols; ++s)
            for (Eigen::Index i = 0; i < N; ++i)
            {
                cplx acc = A(i, s);
                for (Eigen::Index j = 0; j < i; ++j)
                    acc -= C(i, j) * X0(j, s);
                X0(i, s) = thp_modulo(acc, base);
            }
    }

    CMat X = sigma_a * X0;
    for (int k = 0; k < net.hop_count(); ++k)
    {
        const HopSpec &hop = net.hops[static_cast<size_t>(k)];
        X = hop.channel * (design.P[static_cast<size_t>(k)] * X);
        X += rng.complex_gaussian_matrix(X.rows(), X.cols(), hop.noise_variance);
    }
    const CMat Y = (G * X) / sigma_a;

    const CMat GT = G * end_to_end_gain(net, design.P);
    // Gain on a_i (linear, DFE) or on a_i + d_i (THP); both are diag(G T) since the
    // strictly lower part of G T equals that of C.
    RVec bias = GT.diagonal().real();
    for (Eigen::Index i = 0; i < N; ++i)
        if (!(std::abs(bias(i)) > 1e-300))
            bias(i) = 1.0;

    TrialCounts out;
    CVec decided(N);
    for (int s = 0; s < symbols; ++s)
    {
        for (Eigen::Index i = 0; i < N; ++i)
        {
            cplx z = Y(i, s);
            if (feedback && receiver == Receiver::DFE)
                for (Eigen::Index j = 0; j < i; ++j)
                    z -= C(i, j) * decided(j);
            z /= bias(i);
            if (feedback && receiver == Receiver::THP)
                z = thp_modulo(z, base);
            const unsigned got = modulation.demap(z);
            decided(i) = modulation.map(got);
            const unsigned diff = got ^ labels[static_cast<size_t>(s * N + i)];
            const int e = std::popcount(diff);
            out.bit_errors += e;
            out.symbol_errors += e > 0 ? 1 : 0;
            out.single_bit_symbol_errors += e == 1 ? 1 : 0;
        }
    }
    out.symbols = static_cast<long long>(N) * symbols;
    out.bits = out.symbols * nbits;
    return out;
}

NetworkTemplate at_snr(const NetworkTemplate &tpl, double snr_db)
{
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("at_snr: SNR must be finite");
    const double snr = std::pow(10.0, snr_db / 10.0);
    NetworkTemplate out = tpl;
    for (HopTemplate &h : out.hops)
        h.noise_variance = h.power_budget / snr;
    return out;
}

SimReport run_ber(const SimConfig &config)
{
    check_config(config);
    SimReport rep;
    rep.snr_db = config.snr_db;
    rep.metric = Metric::BER;
    rep.trials = config.trials;
    rep.seed = config.seed;
    rep.design_kind = design_label(config, config.objective);
    rep.thp_variance_approximation = config.receiver == Receiver::THP && config.objective.nonlinear();

    const ChannelEnsemble ens{config.seed};
    for (size_t s = 0; s < config.snr_db.size(); ++s)
    {
        const NetworkTemplate tpl = at_snr(config.network, config.snr_db[s]);
        std::vector<TrialCounts> per(static_cast<size_t>(config.trials));
        parallel_for(config.trials, config.threads,
                     [&](int t)
                     {
                         const std::uint64_t idx = s * static_cast<std::uint64_t>(config.trials) + t;
                         const NetworkSpec net = draw_network(tpl, ens, idx);
                         const DesignOutcome out = design_transceiver(net, config.objective);
                         SeededStream rng(config.seed, idx, kDataTag);
                         per[static_cast<size_t>(t)] = simulate_trial(net, out.design, config.receiver,
                                                                      config.modulation, config.symbols_per_trial, rng);
                     });
        TrialCounts total;
        for (const TrialCounts &c : per)
            total += c;
        const double p = static_cast<double>(total.bit_errors) / static_cast<double>(total.bits);
        rep.values.push_back(p);
        rep.std_errors.push_back(std::sqrt(p * (1.0 - p) / static_cast<double>(total.bits)));
        rep.bits.push_back(total.bits);
        rep.bit_errors.push_back(total.bit_errors);
        rep.symbol_errors.push_back(total.symbol_errors);
        rep.single_bit_symbol_errors.push_back(total.single_bit_symbol_errors);
    }
    return rep;
}

double capacity_bits(const NetworkSpec &net, const std::vector<CMat> &P)
{
    const CMat phi = phi_lmmse(net, P) / net.signal_variance;
    const CMat L = cholesky_lower(phi).L;
    return -2.0 * L.diagonal().real().array().log().sum() / std::numbers::ln2;
}

double normalized_mse(const NetworkSpec &net, const std::vector<CMat> &P)
{
    return phi_lmmse(net, P).trace().real() / (net.stream_count * net.signal_variance);
}

SimReport run_capacity(const SimConfig &config)
{
    return run_scalar(config, ObjectiveSpec::of(ObjectiveKind::Capacity), Metric::Capacity,
                      [](const NetworkSpec &net, const Design &d) { return capacity_bits(net, d.P); });
}

SimReport run_mse(const SimConfig &config)
{
    return run_scalar(config, ObjectiveSpec::of(ObjectiveKind::ASchurConcave), Metric::SumMSE,
                      [](const NetworkSpec &net, const Design &d) { return normalized_mse(net, d.P); });
}

SimReport run_metric(Metric metric, const SimConfig &config)
{
    switch (metric)
    {
    case Metric::BER: return run_ber(config);
    case Metric::Capacity: return run_capacity(config);
    case Metric::SumMSE: return run_mse(config);
    }
    throw std::invalid_argument("unknown metric");
}

int default_threads()
{
    const char *env = std::getenv("RELAY_SHAPER_THREADS");
    if (env == nullptr)
        return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

} // namespace relay_shaper

// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <sstream>

#include "relay_shaper/cli.hpp"
#include "relay_shaper/link_sim.hpp"
#include "relay_shaper/objective_solver.hpp"
#include "relay_shaper/shaping_solver.hpp"

namespace py = pybind11;
using namespace relay_shaper;

namespace
{

NetworkSpec build_network(const std::vector<CMat> &channels, int streams, const std::vector<double> &powers,
                          const std::vector<double> &noise, const std::optional<double> &tau_max,
                          const std::optional<std::vector<CMat>> &shaping, double signal_variance)
{
    const size_t K = channels.size();
    if (powers.size() != K || noise.size() != K)
        throw std::invalid_argument("powers and noise_variances need one entry per hop");
    if (tau_max.has_value() == shaping.has_value())
        throw std::invalid_argument("give exactly one of tau_max or shaping");
    if (shaping && shaping->size() != K)
        throw std::invalid_argument("shaping needs one matrix per hop");
    NetworkSpec net;
    net.stream_count = streams;
    net.signal_variance = signal_variance;
    for (size_t k = 0; k < K; ++k)
    {
        HopConstraint c = tau_max ? HopConstraint{JointPower{*tau_max}} : HopConstraint{PureShaping{(*shaping)[k]}};
        net.hops.push_back({channels[k], noise[k], powers[k], c});
    }
    net.validate();
    return net;
}

py::dict waterfill(const RVec &gains, double budget, double cap, const std::optional<RVec> &aux,
                   const std::string &kind)
{
    WaterfillProblem p{gains, aux.value_or(RVec::Ones(gains.size())), budget, cap,
                       kind == "m_schur" ? WaterfillKind::MSchurConvex : WaterfillKind::ASchurConvex};
    if (kind != "m_schur" && kind != "a_schur")
        throw std::invalid_argument("kind must be a_schur or m_schur");
    const WaterfillSolution s = cave_waterfill(p);
    py::dict d;
    d["powers"] = s.powers;
    d["multiplier"] = s.multiplier;
    d["capped"] = s.capped;
    d["sum_inactive"] = s.sum_inactive;
    d["passes"] = s.passes;
    d["kkt_residuals"] = kkt_residuals(p, s);
    return d;
}

py::dict design(const std::vector<CMat> &channels, int streams, const std::vector<double> &powers,
                const std::vector<double> &noise, const std::string &objective, const std::optional<double> &tau_max,
                const std::optional<std::vector<CMat>> &shaping, double signal_variance,
                const std::optional<CMat> &weight)
{
    const NetworkSpec net = build_network(channels, streams, powers, noise, tau_max, shaping, signal_variance);
    const ObjectiveKind kind = objective_from_string(objective);
    ObjectiveSpec spec = kind == ObjectiveKind::WeightedMSE
                             ? ObjectiveSpec::weighted_mse(weight.value_or(CMat::Identity(streams, streams)))
                             : ObjectiveSpec::of(kind);
    const DesignOutcome out = design_transceiver(net, spec);
    py::dict d;
    d["F"] = out.design.F;
    d["Q"] = out.design.Q;
    d["P"] = out.design.P;
    d["G"] = *out.design.G;
    d["C"] = out.design.C;
    d["objective_value"] = evaluate_objective(spec, out.design, net);
    d["mse"] = mse_unified(net, out.design.P, *out.design.G, out.design.C);
    if (out.allocation)
    {
        std::vector<RVec> powers_per_hop;
        for (const WaterfillSolution &h : out.allocation->hops)
            powers_per_hop.push_back(h.powers);
        d["allocation"] = powers_per_hop;
    }
    return d;
}

py::dict simulate(const std::string &metric, const std::vector<double> &snr_db, int hops, int antennas, int streams,
                  double power, double tau_max, const std::string &objective, const std::string &receiver,
                  const std::string &modulation, int trials, int symbols_per_trial, std::uint64_t seed, int threads)
{
    SimConfig c;
    c.network = uniform_chain(hops, antennas, streams, power, 1.0, JointPower{tau_max});
    c.objective = ObjectiveSpec::of(objective_from_string(objective));
    c.receiver = receiver_from_string(receiver);
    c.modulation.kind = modulation_from_string(modulation);
    c.snr_db = snr_db;
    c.trials = trials;
    c.symbols_per_trial = symbols_per_trial;
    c.seed = seed;
    c.threads = threads;
    SimReport r;
    {
        py::gil_scoped_release release;
        r = run_metric(metric_from_string(metric), c);
    }
    py::dict d;
    d["snr_db"] = r.snr_db;
    d["values"] = r.values;
    d["std_errors"] = r.std_errors;
    d["design_kind"] = r.design_kind;
    return d;
}

py::tuple run_cli_py(const std::vector<std::string> &args)
{
    std::vector<std::string> all{"relay_shaper"};
    all.insert(all.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : all)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Transceiver design for multi-hop amplify-and-forward MIMO relay chains";

    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<DegenerateChannel>(m, "DegenerateChannel", PyExc_RuntimeError);

    const double inf = std::numeric_limits<double>::infinity();

    m.def("waterfill", &waterfill, py::arg("gains"), py::arg("budget"), py::arg("cap") = inf,
          py::arg("aux") = py::none(), py::arg("kind") = "a_schur",
          "Cave water-filling over scalar eigenchannel gains.");
    m.def("shaping_exponential", &shaping_exponential, py::arg("thresholds"), py::arg("rho"),
          "Exponentially correlated shaping matrix D T D.");
    m.def(
        "pure_shaping",
        [](const CMat &R_s, int streams) { return solve_pure_shaping(R_s, streams).F.leftCols(streams).eval(); },
        py::arg("R_s"), py::arg("streams"), "Optimal precoder under F F^H <= R_s with rank at most streams.");
    m.def("design", &design, py::arg("channels"), py::arg("streams"), py::arg("powers"), py::arg("noise_variances"),
          py::arg("objective") = "a_schur_concave", py::arg("tau_max") = py::none(), py::arg("shaping") = py::none(),
          py::arg("signal_variance") = 1.0, py::arg("weight") = py::none(),
          "Design precoders, equalizer and feedback matrix for a relay chain.");
    m.def(
        "lmmse_equalizer",
        [](const std::vector<CMat> &channels, const std::vector<double> &noise, const std::vector<CMat> &P,
           double signal_variance)
        {
            const std::vector<double> powers(channels.size(), 1.0);
            const NetworkSpec net = build_network(channels, static_cast<int>(P.front().cols()), powers, noise, 1e300,
                                                  std::nullopt, signal_variance);
            return lmmse_equalizer(net, P);
        },
        py::arg("channels"), py::arg("noise_variances"), py::arg("P"), py::arg("signal_variance") = 1.0);
    m.def(
        "mse",
        [](const std::vector<CMat> &channels, const std::vector<double> &noise, const std::vector<CMat> &P,
           const CMat &G, const std::optional<CMat> &C, double signal_variance)
        {
            const std::vector<double> powers(channels.size(), 1.0);
            const int N = static_cast<int>(P.front().cols());
            const NetworkSpec net =
                build_network(channels, N, powers, noise, 1e300, std::nullopt, signal_variance);
            return mse_unified(net, P, G, C.value_or(CMat::Identity(N, N)));
        },
        py::arg("channels"), py::arg("noise_variances"), py::arg("P"), py::arg("G"), py::arg("C") = py::none(),
        py::arg("signal_variance") = 1.0, "Error covariance E[(G y - C a)(G y - C a)^H].");
    m.def("simulate", &simulate, py::arg("metric"), py::arg("snr_db"), py::arg("hops") = 3, py::arg("antennas") = 4,
          py::arg("streams") = 4, py::arg("power") = 4.0, py::arg("tau_max") = 1.4,
          py::arg("objective") = "a_schur_convex", py::arg("receiver") = "linear", py::arg("modulation") = "qpsk",
          py::arg("trials") = 100, py::arg("symbols_per_trial") = 100, py::arg("seed") = 0, py::arg("threads") = 1,
          "Monte Carlo BER, capacity or sum-MSE over Rayleigh relay chains with joint power constraints.");
    m.def("run_cli", &run_cli_py, py::arg("args"), "Run the command-line tool in-process; returns (code, out, err).");
}

// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#include "relay_shaper/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <limits>
#include <sstream>

namespace relay_shaper::cli
{

using nlohmann::json;

namespace
{

// ---- JSON helpers -----------------------------------------------------------

template <class T> T field(const json &j, const std::string &key, const std::string &path)
{
    if (!j.contains(key))
        throw ConfigError(path + "." + key + ": missing");
    try
    {
        return j.at(key).get<T>();
    }
    catch (const json::exception &)
    {
        throw ConfigError(path + "." + key + ": wrong type");
    }
}

template <class T> T field_or(const json &j, const std::string &key, const T &fallback, const std::string &path)
{
    return j.contains(key) ? field<T>(j, key, path) : fallback;
}

RMat real_grid(const json &j, const std::string &path)
{
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw ConfigError(path + ": expected a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    RMat m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
    {
        const json &row = j[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ConfigError(path + ": ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c)
        {
            if (!row[static_cast<size_t>(c)].is_number())
                throw ConfigError(path + ": entries must be numbers");
            m(r, c) = row[static_cast<size_t>(c)].get<double>();
        }
    }
    return m;
}

// [[...]] for a real matrix or {"re": [[...]], "im": [[...]]}.
CMat read_matrix(const json &j, const std::string &path)
{
    if (j.is_object())
    {
        const RMat re = real_grid(j.value("re", json()), path + ".re");
        RMat im = RMat::Zero(re.rows(), re.cols());
        if (j.contains("im"))
            im = real_grid(j.at("im"), path + ".im");
        if (im.rows() != re.rows() || im.cols() != re.cols())
            throw ConfigError(path + ": re and im shapes differ");
        CMat m(re.rows(), re.cols());
        m.real() = re;
        m.imag() = im;
        return m;
    }
    return real_grid(j, path).cast<cplx>();
}

json write_matrix(const CMat &m)
{
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
        json rr = json::array(), ii = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
        {
            rr.push_back(m(r, c).real());
            ii.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return {{"re", re}, {"im", im}};
}

json write_vector(const RVec &v)
{
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
    return out;
}

RVec read_vector(const json &j, const std::string &path)
{
    if (!j.is_array() || j.empty())
        throw ConfigError(path + ": expected a nonempty array");
    RVec v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i)
    {
        if (!j[i].is_number())
            throw ConfigError(path + ": entries must be numbers");
        v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    }
    return v;
}

RVec thresholds_for(const json &j, Eigen::Index tx, const std::string &path)
{
    if (j.contains("thresholds"))
    {
        RVec t = read_vector(j.at("thresholds"), path + ".thresholds");
        if (t.size() != tx)
            throw ConfigError(path + ".thresholds: need one entry per transmit antenna");
        return t;
    }
    return RVec::Constant(tx, field<double>(j, "threshold", path));
}

ConstraintTemplate read_constraint(const json &j, Eigen::Index tx, const std::string &path)
{
    if (!j.is_object())
        throw ConfigError(path + ": expected an object");
    const std::string type = field<std::string>(j, "type", path);
    if (type == "joint")
    {
        const double tau = field_or<double>(j, "tau_max", std::numeric_limits<double>::infinity(), path);
        if (!(tau > 0.0))
            throw ConfigError(path + ".tau_max: must be positive");
        return JointPower{tau};
    }
    if (type == "explicit")
        return ExplicitShaping{read_matrix(j.at("R_s"), path + ".R_s")};
    if (type == "exponential")
    {
        const double rho = field<double>(j, "rho", path);
        if (!(rho >= 0.0 && rho < 1.0))
            throw ConfigError(path + ".rho: must lie in [0, 1)");
        return ExponentialShaping{thresholds_for(j, tx, path), rho};
    }
    if (type == "channel_matched")
    {
        const std::string w = field_or<std::string>(j, "weighting", "matrix", path);
        if (w != "matrix" && w != "scalar")
            throw ConfigError(path + ".weighting: expected 'matrix' or 'scalar'");
        const double eta = field_or<double>(j, "eta", 0.0, path);
        if (!(eta >= 0.0))
            throw ConfigError(path + ".eta: must be nonnegative");
        return ChannelMatchedShaping{thresholds_for(j, tx, path), eta,
                                     w == "matrix" ? Weighting::Matrix : Weighting::Scalar};
    }
    throw ConfigError(path + ".type: unknown constraint '" + type + "'");
}

NetworkTemplate read_network(const json &root)
{
    if (!root.contains("network"))
        throw ConfigError("network: missing");
    const json &j = root.at("network");
    const std::string path = "network";
    NetworkTemplate tpl;
    tpl.stream_count = field<int>(j, "streams", path);
    tpl.signal_variance = field_or<double>(j, "signal_variance", 1.0, path);
    if (tpl.stream_count <= 0)
        throw ConfigError("network.streams: must be positive");
    if (!(tpl.signal_variance > 0.0))
        throw ConfigError("network.signal_variance: must be positive");

    const double power = field_or<double>(j, "power", 1.0, path);
    const double noise = field_or<double>(j, "noise_variance", 1.0, path);
    const Eigen::Index antennas = field_or<int>(j, "antennas", tpl.stream_count, path);
    const json default_constraint = root.value("constraint", j.value("constraint", json{{"type", "joint"}}));

    if (!j.contains("hops"))
        throw ConfigError("network.hops: missing");
    const json &hops = j.at("hops");
    if (hops.is_number_integer())
    {
        const int K = hops.get<int>();
        if (K <= 0)
            throw ConfigError("network.hops: must be positive");
        for (int k = 0; k < K; ++k)
            tpl.hops.push_back(
                {antennas, antennas, noise, power, read_constraint(default_constraint, antennas, "constraint")});
    }
    else if (hops.is_array() && !hops.empty())
    {
        for (size_t k = 0; k < hops.size(); ++k)
        {
            const std::string hp = "network.hops[" + std::to_string(k) + "]";
            const json &h = hops[k];
            HopTemplate ht;
            ht.rx = field_or<int>(h, "rx", static_cast<int>(antennas), hp);
            ht.tx = field_or<int>(h, "tx", static_cast<int>(antennas), hp);
            ht.noise_variance = field_or<double>(h, "noise_variance", noise, hp);
            ht.power_budget = field_or<double>(h, "power", power, hp);
            ht.constraint = read_constraint(h.value("constraint", default_constraint), ht.tx, hp + ".constraint");
            tpl.hops.push_back(ht);
        }
    }
    else
        throw ConfigError("network.hops: expected a count or a list of hops");

    for (size_t k = 0; k < tpl.hops.size(); ++k)
    {
        const HopTemplate &h = tpl.hops[k];
        const std::string hp = "network.hops[" + std::to_string(k) + "]";
        if (h.rx < tpl.stream_count || h.tx < tpl.stream_count)
            throw ConfigError(hp + ": antenna counts must be at least the stream count");
        if (!(h.noise_variance > 0.0) || !(h.power_budget > 0.0))
            throw ConfigError(hp + ": power and noise variance must be positive");
    }
    return tpl;
}

DesignEntry read_design(const json &j, Eigen::Index streams, const std::string &path)
{
    DesignEntry d;
    const std::string name = field<std::string>(j, "objective", path);
    ObjectiveKind kind;
    try
    {
        kind = objective_from_string(name);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(path + ".objective: " + e.what());
    }
    try
    {
        if (kind == ObjectiveKind::WeightedMSE)
        {
            CMat W = j.contains("weight") ? read_matrix(j.at("weight"), path + ".weight")
                                          : CMat(CMat::Identity(streams, streams));
            if (W.rows() != streams || W.cols() != streams)
                throw ConfigError(path + ".weight: must be streams x streams");
            d.objective = ObjectiveSpec::weighted_mse(W);
        }
        else
            d.objective = ObjectiveSpec::of(kind);
        d.receiver = receiver_from_string(
            field_or<std::string>(j, "transceiver", d.objective.nonlinear() ? "thp" : "linear", path));
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(path + ": " + e.what());
    }
    if (d.receiver != Receiver::Linear && !d.objective.nonlinear())
        throw ConfigError(path + ".transceiver: DFE and THP need a nonlinear objective");
    return d;
}

SimulationSection read_simulation(const json &j)
{
    const std::string path = "simulation";
    SimulationSection s;
    try
    {
        s.metric = metric_from_string(field_or<std::string>(j, "metric", "ber", path));
        s.modulation.kind = modulation_from_string(field_or<std::string>(j, "modulation", "qpsk", path));
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(path + ": " + e.what());
    }
    s.modulation.gray = field_or<bool>(j, "gray", true, path);
    if (j.contains("snr_db"))
    {
        const RVec v = read_vector(j.at("snr_db"), path + ".snr_db");
        s.snr_db.assign(v.data(), v.data() + v.size());
    }
    s.trials = field_or<int>(j, "trials", s.trials, path);
    s.symbols_per_trial = field_or<int>(j, "symbols_per_trial", s.symbols_per_trial, path);
    s.seed = field_or<std::uint64_t>(j, "seed", 0, path);
    if (s.trials <= 0)
        throw ConfigError("simulation.trials: must be positive");
    if (s.symbols_per_trial <= 0)
        throw ConfigError("simulation.symbols_per_trial: must be positive");
    return s;
}

WaterfillProblem read_waterfill(const json &j)
{
    const std::string path = "waterfill";
    WaterfillProblem p;
    p.gains = read_vector(j.value("gains", json()), path + ".gains");
    p.aux = j.contains("aux") ? read_vector(j.at("aux"), path + ".aux") : RVec(RVec::Ones(p.gains.size()));
    p.budget = field<double>(j, "budget", path);
    p.cap = field_or<double>(j, "cap", std::numeric_limits<double>::infinity(), path);
    const std::string kind = field_or<std::string>(j, "kind", "a_schur", path);
    if (kind == "a_schur")
        p.kind = WaterfillKind::ASchurConvex;
    else if (kind == "m_schur")
        p.kind = WaterfillKind::MSchurConvex;
    else
        throw ConfigError(path + ".kind: expected 'a_schur' or 'm_schur'");
    return p;
}

// ---- commands ---------------------------------------------------------------------

std::string read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string &text, const std::string &out_path, std::ostream &out)
{
    if (out_path.empty() || out_path == "-")
    {
        out << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f)
        throw IoError("cannot write '" + out_path + "'");
    f << text;
    if (!f)
        throw IoError("write failed for '" + out_path + "'");
}

struct SweepPoint
{
    std::string suffix;
    NetworkTemplate network;
};

std::vector<SweepPoint> sweep_points(const RunConfig &cfg)
{
    if (!cfg.sweep)
        return {{"", cfg.network}};
    std::vector<SweepPoint> pts;
    for (double v : cfg.sweep->values)
    {
        std::ostringstream s;
        s << "@" << cfg.sweep->parameter << "=" << v;
        pts.push_back({s.str(), apply_sweep(cfg.network, cfg.sweep->parameter, v)});
    }
    return pts;
}

std::vector<DesignEntry> designs_or_default(const RunConfig &cfg)
{
    if (!cfg.designs.empty())
        return cfg.designs;
    return {DesignEntry{ObjectiveSpec::of(ObjectiveKind::ASchurConcave), Receiver::Linear}};
}

json hop_audit(const NetworkSpec &net, const std::vector<CMat> &P)
{
    const std::vector<CMat> R = transmit_covariances(net, P);
    json hops = json::array();
    for (size_t k = 0; k < R.size(); ++k)
    {
        const OrderedEVD evd = hermitian_evd(R[k]);
        json h;
        h["trace"] = R[k].trace().real();
        h["max_eigenvalue"] = evd.values(0);
        h["rank"] = numerical_rank(R[k]);
        h["eigenvalues"] = write_vector(evd.values);
        const HopSpec &hop = net.hops[k];
        if (const auto *ps = std::get_if<PureShaping>(&hop.constraint))
            h["constraint_residual"] = hermitian_evd(R[k] - ps->R_s).values(0);
        else
        {
            const double tau = std::get<JointPower>(hop.constraint).tau_max;
            h["constraint_residual"] = std::max(R[k].trace().real() - hop.power_budget,
                                                std::isfinite(tau) ? evd.values(0) - tau : -1.0);
        }
        hops.push_back(h);
    }
    return hops;
}

int cmd_design(const RunConfig &cfg, std::uint64_t seed, const std::string &out_path, std::ostream &out)
{
    json doc;
    doc["seed"] = seed;
    doc["designs"] = json::array();
    for (const SweepPoint &pt : sweep_points(cfg))
    {
        const NetworkSpec net = cfg.channels.empty() ? draw_network(pt.network, ChannelEnsemble{seed}, 0)
                                                     : realize_network(pt.network, cfg.channels);
        for (const DesignEntry &d : designs_or_default(cfg))
        {
            const DesignOutcome o = design_transceiver(net, d.objective);
            json e;
            e["objective"] = to_string(d.objective.kind);
            e["transceiver"] = to_string(d.receiver);
            e["sweep"] = pt.suffix;
            e["objective_value"] = evaluate_objective(d.objective, o.design, net);
            e["F"] = json::array();
            e["Q"] = json::array();
            e["P"] = json::array();
            for (const CMat &m : o.design.F)
                e["F"].push_back(write_matrix(m));
            for (const CMat &m : o.design.Q)
                e["Q"].push_back(write_matrix(m));
            for (const CMat &m : o.design.P)
                e["P"].push_back(write_matrix(m));
            e["G"] = write_matrix(*o.design.G);
            e["C"] = write_matrix(o.design.C);
            e["hops"] = hop_audit(net, o.design.P);
            if (o.allocation)
            {
                e["allocation"]["sweeps"] = o.allocation->sweeps;
                e["allocation"]["converged"] = o.allocation->converged;
                e["allocation"]["powers"] = json::array();
                for (const WaterfillSolution &s : o.allocation->hops)
                    e["allocation"]["powers"].push_back(write_vector(s.powers));
            }
            if (!o.shaping_within_budget.empty())
                e["shaping_within_budget"] = o.shaping_within_budget;
            doc["designs"].push_back(e);
        }
    }
    emit(doc.dump(2) + "\n", out_path, out);
    return kOk;
}

int cmd_simulate(const RunConfig &cfg, std::uint64_t seed, int trials, int threads, const std::string &out_path,
                 std::ostream &out)
{
    std::ostringstream csv;
    csv << std::setprecision(10);
    csv << "snr_db,metric,value,stderr,trials,design_kind,seed\n";
    for (const SweepPoint &pt : sweep_points(cfg))
    {
        for (const DesignEntry &d : designs_or_default(cfg))
        {
            SimConfig sc;
            sc.network = pt.network;
            sc.objective = d.objective;
            sc.receiver = d.receiver;
            sc.modulation = cfg.simulation.modulation;
            sc.snr_db = cfg.simulation.snr_db;
            sc.trials = trials;
            sc.symbols_per_trial = cfg.simulation.symbols_per_trial;
            sc.seed = seed;
            sc.threads = threads;
            const SimReport rep = run_metric(cfg.simulation.metric, sc);
            for (size_t i = 0; i < rep.snr_db.size(); ++i)
                csv << rep.snr_db[i] << ',' << to_string(rep.metric) << ',' << rep.values[i] << ','
                    << rep.std_errors[i] << ',' << rep.trials << ',' << rep.design_kind << pt.suffix << ','
                    << rep.seed << '\n';
            // Capacity and sum-MSE ignore the objective; one row set per sweep point is enough.
            if (cfg.simulation.metric != Metric::BER)
                break;
        }
    }
    emit(csv.str(), out_path, out);
    return kOk;
}

int cmd_waterfill(const RunConfig &cfg, const std::string &out_path, std::ostream &out)
{
    if (!cfg.waterfill)
        throw ConfigError("waterfill: missing");
    WaterfillSolution sol;
    try
    {
        sol = cave_waterfill(*cfg.waterfill);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(std::string("waterfill: ") + e.what());
    }
    json doc;
    doc["powers"] = write_vector(sol.powers);
    doc["multiplier"] = sol.multiplier;
    doc["capped"] = sol.capped;
    doc["sum_inactive"] = sol.sum_inactive;
    doc["passes"] = sol.passes;
    doc["kkt_residuals"] = write_vector(kkt_residuals(*cfg.waterfill, sol));
    emit(doc.dump(2) + "\n", out_path, out);
    return kOk;
}

} // namespace

RunConfig parse_config(const std::string &text)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("top level must be an object");

    RunConfig cfg;
    if (root.contains("waterfill"))
        cfg.waterfill = read_waterfill(root.at("waterfill"));
    if (!root.contains("network"))
    {
        if (!cfg.waterfill)
            throw ConfigError("network: missing");
        return cfg;
    }
    cfg.network = read_network(root);

    if (root.contains("channels"))
    {
        const json &ch = root.at("channels");
        if (!ch.is_array() || ch.size() != cfg.network.hops.size())
            throw ConfigError("channels: need one matrix per hop");
        for (size_t k = 0; k < ch.size(); ++k)
        {
            CMat H = read_matrix(ch[k], "channels[" + std::to_string(k) + "]");
            const HopTemplate &h = cfg.network.hops[k];
            if (H.rows() != h.rx || H.cols() != h.tx)
                throw ConfigError("channels[" + std::to_string(k) + "]: shape must be rx x tx");
            cfg.channels.push_back(std::move(H));
        }
    }

    if (root.contains("sweep"))
    {
        const json &s = root.at("sweep");
        Sweep sw;
        sw.parameter = field<std::string>(s, "parameter", "sweep");
        if (sw.parameter != "tau_max" && sw.parameter != "rho" && sw.parameter != "eta")
            throw ConfigError("sweep.parameter: expected tau_max, rho or eta");
        const RVec v = read_vector(s.value("values", json()), "sweep.values");
        sw.values.assign(v.data(), v.data() + v.size());
        // Fail early on values the constraint would reject.
        for (double x : sw.values)
            apply_sweep(cfg.network, sw.parameter, x);
        cfg.sweep = std::move(sw);
    }

    if (root.contains("designs"))
    {
        const json &ds = root.at("designs");
        if (!ds.is_array())
            throw ConfigError("designs: expected an array");
        for (size_t i = 0; i < ds.size(); ++i)
            cfg.designs.push_back(read_design(ds[i], cfg.network.stream_count, "designs[" + std::to_string(i) + "]"));
    }
    if (root.contains("simulation"))
        cfg.simulation = read_simulation(root.at("simulation"));
    return cfg;
}

NetworkTemplate apply_sweep(const NetworkTemplate &tpl, const std::string &parameter, double value)
{
    NetworkTemplate out = tpl;
    for (size_t k = 0; k < out.hops.size(); ++k)
    {
        ConstraintTemplate &c = out.hops[k].constraint;
        const std::string hp = "sweep: hop " + std::to_string(k + 1) + ": ";
        if (parameter == "tau_max")
        {
            auto *jp = std::get_if<JointPower>(&c);
            if (jp == nullptr)
                throw ConfigError(hp + "tau_max sweep needs a joint constraint");
            if (!(value > 0.0))
                throw ConfigError(hp + "tau_max must be positive");
            jp->tau_max = value;
        }
        else if (parameter == "rho")
        {
            auto *ex = std::get_if<ExponentialShaping>(&c);
            if (ex == nullptr)
                throw ConfigError(hp + "rho sweep needs an exponential constraint");
            if (!(value >= 0.0 && value < 1.0))
                throw ConfigError(hp + "rho must lie in [0, 1)");
            ex->rho = value;
        }
        else if (parameter == "eta")
        {
            auto *cm = std::get_if<ChannelMatchedShaping>(&c);
            if (cm == nullptr)
                throw ConfigError(hp + "eta sweep needs a channel-matched constraint");
            if (!(value >= 0.0))
                throw ConfigError(hp + "eta must be nonnegative");
            cm->eta = value;
        }
        else
            throw ConfigError("sweep.parameter: unknown '" + parameter + "'");
    }
    return out;
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Transceiver design and link simulation for multi-hop AF MIMO relay chains", "relay_shaper"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int trials = 0, threads = 0;

    auto add_common = [&](CLI::App *sub)
    {
        sub->add_option("--config", config_path, "JSON configuration file")->required();
        sub->add_option("--out", out_path, "Output file (default: stdout)");
    };
    CLI::App *design = app.add_subcommand("design", "Design transceivers and dump matrices with audits");
    add_common(design);
    design->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t &s) { seed = s, seed_set = true; }, "Channel seed");
    CLI::App *simulate = app.add_subcommand("simulate", "Monte-Carlo link simulation, CSV output");
    add_common(simulate);
    simulate->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t &s) { seed = s, seed_set = true; }, "Simulation seed");
    simulate->add_option("--trials", trials, "Channel realizations per SNR point")->check(CLI::PositiveNumber);
    simulate->add_option("--threads", threads, "Worker threads (default: RELAY_SHAPER_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    CLI::App *waterfill = app.add_subcommand("waterfill", "Solve one cave water-filling problem");
    add_common(waterfill);

    try
    {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i)
            args.emplace_back(argv[i]);
        app.parse(args);
    }
    catch (const CLI::CallForHelp &e)
    {
        out << app.help();
        return kOk;
    }
    catch (const CLI::ParseError &e)
    {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    try
    {
        const RunConfig cfg = parse_config(read_file(config_path));
        const std::uint64_t s = seed_set ? seed : cfg.simulation.seed;
        if (*design)
        {
            if (cfg.network.hops.empty())
                throw ConfigError("network: missing");
            return cmd_design(cfg, s, out_path, out);
        }
        if (*simulate)
        {
            if (cfg.network.hops.empty())
                throw ConfigError("network: missing");
            return cmd_simulate(cfg, s, trials > 0 ? trials : cfg.simulation.trials,
                                threads > 0 ? threads : default_threads(), out_path, out);
        }
        return cmd_waterfill(cfg, out_path, out);
    }
    catch (const IoError &e)
    {
        err << "error: " << e.what() << "\n";
        return kIoError;
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    catch (const ContractViolation &e)
    {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

} // namespace relay_shaper::cli

// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relay_shaper/cave_waterfill.hpp"
#include "relay_shaper/link_sim.hpp"
#include "relay_shaper/network_model.hpp"
#include "relay_shaper/objective_solver.hpp"

namespace relay_shaper::cli
{

enum ExitCode : int
{
    kOk = 0,
    kFailure = 1,
    kConfigError = 2,
    kIoError = 3
};

class ConfigError : public std::runtime_error
{
public:
    explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error
{
public:
    explicit IoError(const std::string &what) : std::runtime_error(what) {}
};

struct DesignEntry
{
    ObjectiveSpec objective;
    Receiver receiver = Receiver::Linear;
};

struct Sweep
{
    std::string parameter; // tau_max, rho or eta
    std::vector<double> values;
};

struct SimulationSection
{
    Metric metric = Metric::BER;
    ModulationScheme modulation;
    std::vector<double> snr_db{10.0};
    int trials = 100;
    int symbols_per_trial = 100;
    std::uint64_t seed = 0;
};

struct RunConfig
{
    NetworkTemplate network;
    std::vector<CMat> channels; // optional fixed channels, one per hop
    std::optional<Sweep> sweep;
    std::vector<DesignEntry> designs;
    SimulationSection simulation;
    std::optional<WaterfillProblem> waterfill;
};

/// Parse a JSON configuration; throws ConfigError with a field path on bad input.
RunConfig parse_config(const std::string &text);

/// Template with the sweep parameter set to `value` in every hop constraint.
NetworkTemplate apply_sweep(const NetworkTemplate &tpl, const std::string &parameter, double value);

/// Entry point shared by the executable and the tests.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace relay_shaper::cli

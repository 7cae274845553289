// SPDX-License-Identifier: Apache-2.0
//
// relay-shaper: transceiver design toolkit for multi-hop AF MIMO relay chains
// ------------------------------------------------------------------------

#include <iostream>

#include "relay_shaper/cli.hpp"

int main(int argc, char **argv)
{
    return relay_shaper::cli::run_cli(argc, argv, std::cout, std::cerr);
}

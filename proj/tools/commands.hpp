// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "config.hpp"
#include "darkcat/ode.hpp"
#include "table.hpp"

namespace darkcat::cli {

struct RunContext {
  int threads = 1;
  OdeOptions ode;
};

using CommandFn = Table (*)(ConfigReader&, const RunContext&);

/// Looks up a subcommand by name; null when unknown.
CommandFn find_command(const std::string& name);

Table run_dark_states(ConfigReader& cfg, const RunContext& ctx);
Table run_noise_bench(ConfigReader& cfg, const RunContext& ctx);
Table run_stab_gap(ConfigReader& cfg, const RunContext& ctx);
Table run_gate_bench(ConfigReader& cfg, const RunContext& ctx);
Table run_cx_bench(ConfigReader& cfg, const RunContext& ctx);

}  // namespace darkcat::cli

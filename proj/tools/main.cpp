// Copyright 2026 The darkcat Authors
// SPDX-License-Identifier: Apache-2.0
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "darkcat/types.hpp"
#include "darkcat/version.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

const std::pair<const char*, const char*> kSubcommands[] = {
    {"dark-states", "dark-state pairs of given or random drives, two solvers compared"},
    {"noise-bench", "logical error rates of the stabilized cat under white or OU noise"},
    {"stab-gap", "dissipative gap of the stabilization Liouvillian"},
    {"gate-bench", "single-qubit gate PTMs, residual channels and infidelities"},
    {"cx-bench", "blockade CX gate: PTMs, gate-time scans, monitoring, traces, swap rates"},
};

struct Args {
  std::string config;
  std::string out;
  int threads = 1;
  double tolerance = 1e-10;
};

int run(const std::string& name, const Args& args) {
  namespace fs = std::filesystem;
  using darkcat::cli::ConfigError;

  darkcat::cli::RunContext ctx;
  ctx.threads = args.threads;
  ctx.ode.rtol = args.tolerance;
  ctx.ode.atol = args.tolerance * 1e-2;

  const nlohmann::json raw = darkcat::cli::load_config(args.config);
  darkcat::cli::ConfigReader reader(raw, "config");

  const auto start = std::chrono::steady_clock::now();
  const darkcat::cli::Table table = darkcat::cli::find_command(name)(reader, ctx);
  reader.finish();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::error_code ec;
  fs::create_directories(args.out, ec);
  if (ec) throw ConfigError("cannot create output directory " + args.out + ": " + ec.message());
  const fs::path dir(args.out);
  {
    std::ofstream csv(dir / (name + ".csv"));
    if (!csv) throw ConfigError("cannot write " + (dir / (name + ".csv")).string());
    darkcat::cli::write_csv(csv, table);
  }
  nlohmann::ordered_json summary;
  summary["subcommand"] = name;
  summary["library_version"] = darkcat::kVersion;
  summary["config"] = raw;
  summary["threads"] = args.threads;
  summary["tolerance"] = args.tolerance;
  summary["columns"] = table.columns;
  summary["rows"] = table.rows.size();
  summary["wall_clock_s"] = wall;
  std::ofstream js(dir / (name + ".summary.json"));
  if (!js) throw ConfigError("cannot write " + (dir / (name + ".summary.json")).string());
  js << summary.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"darkcat: dark-state cat qubit simulations"};
  app.set_version_flag("--version", std::string(darkcat::kVersion));
  app.require_subcommand(1);
  Args args;
  for (const auto& [name, about] : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->add_option("--config", args.config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", args.out, "output directory")->required();
    sub->add_option("--threads", args.threads, "worker threads")->check(CLI::Range(1, 1024));
    sub->add_option("--tolerance", args.tolerance, "relative ODE tolerance")
        ->check(CLI::Range(1e-15, 1e-2));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return run(name, args);
  } catch (const darkcat::cli::ConfigError& e) {
    std::fprintf(stderr, "darkcat: config error: %s\n", e.what());
    return kExitConfig;
  } catch (const darkcat::InvalidArgument& e) {
    std::fprintf(stderr, "darkcat: config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "darkcat: numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
}

// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Command line front end: single solves, wavenumber sweeps, comparison presets.

#include <cstdio>
#include <iostream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "fembem/runner.hpp"

namespace
{

int Report(const fembem::CommandSummary &summary, const std::string &table)
{
  for (const auto &m : summary.messages)
  {
    std::cout << m << "\n";
  }
  std::cout << summary.rows.size() << " rows written to " << table;
  if (summary.failures > 0)
  {
    std::cout << ", " << summary.failures << " failed";
  }
  std::cout << std::endl;
  return summary.failures > 0 ? 2 : 0;
}

fembem::RunConfig LoadConfig(const std::string &path)
{
  return path.empty() ? fembem::RunConfig{} : fembem::RunConfig::Load(path);
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"FEM-BEM acoustic transmission solver"};
  app.require_subcommand(1);

  std::string config_path, out = "results", preset;
  bool force = false, dump = false;
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0 keeps the default)")
      ->check(CLI::NonNegativeNumber);

  auto add_common = [&](CLI::App *cmd, bool needs_config)
  {
    auto *opt = cmd->add_option("--config", config_path, "Run configuration (JSON)");
    if (needs_config)
    {
      opt->required();
    }
    cmd->add_option("--out", out, "Output directory");
    cmd->add_flag("--force", force, "Allow systems above the dense size limit");
    cmd->add_option("--threads", threads, "OpenMP threads (0 keeps the default)")
        ->check(CLI::NonNegativeNumber);
  };

  auto *solve = app.add_subcommand("solve", "Solve every grid entry at the configured k");
  add_common(solve, true);
  auto *sweep = app.add_subcommand("sweep", "Solve every grid entry over the sweep wavenumbers");
  add_common(sweep, true);
  auto *compare = app.add_subcommand("compare", "Run a comparison preset");
  add_common(compare, false);
  compare
      ->add_option("--preset", preset,
                   "nu_study, space_study, osrc_prec, ilu_study or permutation_study")
      ->required();
  auto *info = app.add_subcommand("mesh-info", "Print mesh and unknown counts");
  add_common(info, false);
  info->add_flag("--dump-config", dump, "Print the full configuration with defaults");
  auto *selftest = app.add_subcommand("selftest", "Check the numerical defaults");

  CLI11_PARSE(app, argc, argv);
  if (threads > 0)
  {
    omp_set_num_threads(threads);
  }

  try
  {
    if (*selftest)
    {
      bool ok = true;
      for (const auto &c : fembem::RunSelfTest())
      {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
        ok = ok && c.passed;
      }
      return ok ? 0 : 2;
    }
    const fembem::RunConfig config = LoadConfig(config_path);
    if (*info)
    {
      if (dump)
      {
        std::cout << config.Dump() << "\n";
      }
      for (const auto &line : fembem::MeshInfo(config))
      {
        std::cout << line << "\n";
      }
      return 0;
    }
    if (*solve)
    {
      return Report(fembem::CmdSolve(config, out, force), out + "/report.csv");
    }
    if (*sweep)
    {
      return Report(fembem::CmdSweep(config, out, force), out + "/sweep.csv");
    }
    if (*compare)
    {
      return Report(fembem::CmdCompare(config, preset, out, force),
                    out + "/compare_" + preset + ".csv");
    }
  }
  catch (const fembem::InvalidArgument &e)
  {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  catch (const fembem::IoError &e)
  {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}

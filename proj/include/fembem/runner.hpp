// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_RUNNER_HPP
#define FEMBEM_RUNNER_HPP

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fembem/config.hpp"
#include "fembem/postprocess.hpp"

namespace fembem
{

// Everything a run shares across entries: the scene and the size guard.
struct RunContext
{
  const RunConfig &config;
  const Mesh &mesh;
  const MaterialModel &materials;
  bool force = false;
};

struct EntryResult
{
  GridEntry entry;
  double k = 0.0;

  // False when the entry threw or the solver did not converge; error holds the reason.
  bool ok = false;
  std::string error;
  SolveReport report;
  ReportRow row;
  std::shared_ptr<const FormulationSystem> system;
  CVector solution;

  // Relative deviation of the total field from the incident wave on the slice, for scenes
  // where the object is acoustically transparent.
  std::optional<double> incident_deviation;
};

// Throws InvalidArgument when the entry's system exceeds kDenseGuard unknowns and force is
// not set.
void CheckProblemSize(const Mesh &mesh, const GridEntry &entry, bool force);

// Whether the configured material leaves the wave undisturbed.
bool IsTransparent(const RunConfig &config);

// Midpoint of the gap between the cube resonances around k, for comparisons against a
// wavenumber away from every resonance.
double OffResonanceWavenumber(double k, double edge_length = 1.0);

// Assembles and solves one entry at wavenumber k. Solver failures are recorded in the
// result; configuration errors and the size guard throw.
EntryResult SolveEntry(const RunContext &ctx, const GridEntry &entry, double k,
                       std::shared_ptr<BoundaryOperatorCache> cache = nullptr);

// Every grid entry at every wavenumber, rows in (k, entry) order.
std::vector<EntryResult> RunGrid(const RunContext &ctx, const std::vector<GridEntry> &grid,
                                 const std::vector<double> &ks);

struct CommandSummary
{
  std::vector<ReportRow> rows;
  std::vector<std::string> messages;
  int failures = 0;
};

// solve: every grid entry at the configured k; writes report.csv and field slices.
CommandSummary CmdSolve(const RunConfig &config, const std::filesystem::path &out, bool force);

// sweep: every grid entry over the sweep wavenumbers; writes sweep.csv and resonances.csv.
CommandSummary CmdSweep(const RunConfig &config, const std::filesystem::path &out, bool force);

// compare: the preset's grid at the sweep wavenumbers (or the preset's own); writes
// compare_<preset>.csv.
CommandSummary CmdCompare(const RunConfig &config, const std::string &preset,
                          const std::filesystem::path &out, bool force);

// Mesh and unknown counts of the configured geometry and grid.
std::vector<std::string> MeshInfo(const RunConfig &config);

}  // namespace fembem

#endif  // FEMBEM_RUNNER_HPP

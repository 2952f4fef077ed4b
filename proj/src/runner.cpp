// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cctype>
#include <limits>

namespace fembem
{

namespace
{

double Seconds(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ReportRow MakeRow(const GridEntry &entry, double k, const std::string &preconditioner,
                  const SolveReport &report, double wall_time)
{
  ReportRow row;
  row.k = k;
  row.formulation = entry.formulation;
  row.variant = entry.VariantLabel();
  row.preconditioner = preconditioner;
  row.iterations = report.iterations;
  row.condition_number = report.condition_number;
  row.wall_time_s = wall_time;
  return row;
}

void EnsureDirectory(const std::filesystem::path &out)
{
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec)
  {
    throw IoError("cannot create output directory " + out.string() + ": " + ec.message());
  }
}

PlaneSpec SlicePlane(const RunConfig &config, const Mesh &mesh)
{
  // Square around the scene box, twice its extent in x and y, at the configured height.
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity()), hi = -lo;
  for (const Vec3 &v : mesh.vertices)
  {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const Vec3 ext = hi - lo;
  PlaneSpec plane;
  plane.origin = Vec3(lo[0] - 0.5 * ext[0], lo[1] - 0.5 * ext[1], config.output.plane_z);
  plane.u = Vec3(2.0 * ext[0], 0.0, 0.0);
  plane.v = Vec3(0.0, 2.0 * ext[1], 0.0);
  plane.resolution = config.output.resolution;
  return plane;
}

std::string FileStem(std::size_t index, const EntryResult &r)
{
  std::string stem = detail::Concat("entry", index, "_", r.entry.formulation);
  for (char &c : stem)
  {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
    {
      c = '_';
    }
  }
  return stem;
}

void Record(CommandSummary &summary, const EntryResult &r)
{
  summary.rows.push_back(r.row);
  for (const auto &w : r.report.warnings)
  {
    summary.messages.push_back(detail::Concat("k=", r.k, " ", r.entry.formulation, " ",
                                              r.entry.VariantLabel(), ": warning: ", w));
  }
  if (!r.ok)
  {
    summary.failures++;
    summary.messages.push_back(detail::Concat("k=", r.k, " ", r.entry.formulation, " ",
                                              r.entry.VariantLabel(), ": failed: ", r.error));
  }
}

struct Scenario
{
  Mesh mesh;
  MaterialModel materials;
};

Scenario PrepareScenario(const RunConfig &config, const std::vector<GridEntry> &grid,
                         bool force)
{
  config.Validate();
  for (const auto &e : grid)
  {
    ValidateEntry(config, e);
  }
  Scenario s{BuildGeometry(config.geometry), {}};
  s.mesh.Validate();
  s.materials = BuildMaterials(config, s.mesh);
  for (const auto &e : grid)
  {
    CheckProblemSize(s.mesh, e, force);
  }
  return s;
}

}  // namespace

void CheckProblemSize(const Mesh &mesh, const GridEntry &entry, bool force)
{
  const Index n = CountUnknowns(mesh, entry);
  if (n > kDenseGuard && !force)
  {
    throw InvalidArgument(detail::Concat("the ", entry.formulation, " system has ", n,
                                         " unknowns, above the limit of ", kDenseGuard,
                                         " (use --force to override)"));
  }
}

bool IsTransparent(const RunConfig &config)
{
  const auto &m = config.material;
  return m.refractivity == "constant" && m.refractivity_value == 1.0 &&
         m.density == m.exterior_density;
}

double OffResonanceWavenumber(double k, double edge_length)
{
  FEMBEM_VERIFY(k > 0.0 && edge_length > 0.0, "off-resonance wavenumber needs k > 0");
  std::vector<double> res = CubeResonanceWavenumbers(k * edge_length + 2.0 * pi);
  for (double &r : res)
  {
    r /= edge_length;
  }
  double lo = 0.0, hi = res.back();
  for (double r : res)
  {
    if (r <= k)
    {
      lo = r;
    }
    else
    {
      hi = r;
      break;
    }
  }
  return 0.5 * (lo + hi);
}

EntryResult SolveEntry(const RunContext &ctx, const GridEntry &entry, double k,
                       std::shared_ptr<BoundaryOperatorCache> cache)
{
  const RunConfig &config = ctx.config;
  ValidateEntry(config, entry);
  CheckProblemSize(ctx.mesh, entry, ctx.force);

  const auto start = std::chrono::steady_clock::now();
  EntryResult r;
  r.entry = entry;
  r.k = k;
  const IncidentWave wave = BuildWave(config, k);
  FormulationOptions options = BuildOptions(config, entry);
  options.cache = std::move(cache);
  const PreconditionerRecipe recipe = BuildRecipe(config, entry);
  const bool direct = config.solver.method == "direct";
  const std::string prec_name = direct ? std::string("direct") : recipe.name;

  auto system = std::make_shared<FormulationSystem>(
      BuildFormulation(EntryKind(entry), Scene{ctx.mesh, ctx.materials, wave}, options));
  r.system = system;
  try
  {
    if (direct)
    {
      r.solution = DirectSolve(system->lhs, system->rhs, &r.report);
    }
    else
    {
      const auto precond = BuildPreconditioner(recipe, *system);
      GmresOptions gopts;
      gopts.tol = config.solver.tol;
      gopts.max_iter = config.solver.max_iter;
      r.solution = Gmres(system->lhs, system->rhs, precond.get(), gopts, r.report);
    }
    if (config.condition_numbers)
    {
      r.report.condition_number = ConditionNumber(system->lhs, ctx.force,
                                                  ParseCondMethod(config.condition_method));
    }
    r.ok = r.report.converged;
    if (!r.ok)
    {
      r.error = r.report.breakdown
                    ? detail::Concat("GMRES breakdown at iteration ", r.report.breakdown_iteration)
                    : detail::Concat("GMRES did not converge in ", r.report.iterations,
                                     " iterations (residual ", r.report.relative_residual, ")");
    }
  }
  catch (const NumericalError &e)
  {
    r.ok = false;
    r.error = e.what();
    r.report.converged = false;
  }
  r.row = MakeRow(entry, k, prec_name, r.report, Seconds(start));
  return r;
}

std::vector<EntryResult> RunGrid(const RunContext &ctx, const std::vector<GridEntry> &grid,
                                 const std::vector<double> &ks)
{
  std::vector<EntryResult> results;
  for (double k : ks)
  {
    // Boundary blocks are shared between the entries of one wavenumber only.
    auto cache = std::make_shared<BoundaryOperatorCache>();
    for (const auto &entry : grid)
    {
      try
      {
        EntryResult r = SolveEntry(ctx, entry, k, cache);
        r.system.reset();
        r.solution = CVector();
        results.push_back(std::move(r));
      }
      catch (const InvalidArgument &)
      {
        throw;
      }
      catch (const Error &e)
      {
        EntryResult r;
        r.entry = entry;
        r.k = k;
        r.error = e.what();
        r.row = MakeRow(entry, k, BuildRecipe(ctx.config, entry).name, r.report, 0.0);
        r.row.iterations = -1;
        results.push_back(std::move(r));
      }
    }
  }
  return results;
}

CommandSummary CmdSolve(const RunConfig &config, const std::filesystem::path &out, bool force)
{
  const Scenario s = PrepareScenario(config, config.grid, force);
  EnsureDirectory(out);
  const RunContext ctx{config, s.mesh, s.materials, force};
  CommandSummary summary;
  auto cache = std::make_shared<BoundaryOperatorCache>();
  const double k = config.wave.k;
  const bool transparent = IsTransparent(config);

  for (std::size_t i = 0; i < config.grid.size(); i++)
  {
    const GridEntry &entry = config.grid[i];
    EntryResult r = SolveEntry(ctx, entry, k, cache);
    const std::string stem = FileStem(i, r);
    if (r.solution.size() > 0 && config.output.slice)
    {
      const IncidentWave wave = BuildWave(config, k);
      const FieldSlice slice =
          SamplePlane(s.mesh, *r.system, r.solution, wave, SlicePlane(config, s.mesh));
      if (transparent)
      {
        CVector inc(static_cast<Index>(slice.points.size()));
        for (std::size_t p = 0; p < slice.points.size(); p++)
        {
          inc[static_cast<Index>(p)] = wave.Value(slice.points[p]);
        }
        r.incident_deviation = RelativeError(slice.Unmasked(slice.values), slice.Unmasked(inc));
        summary.messages.push_back(detail::Concat(
            entry.formulation, " ", entry.VariantLabel(),
            ": relative deviation from the incident wave ", *r.incident_deviation));
      }
      double peak = 0.0;
      for (std::size_t p = 0; p < slice.points.size(); p++)
      {
        if (slice.mask[p] == SampleMask::Interior)
        {
          peak = std::max(peak, std::abs(slice.values[static_cast<Index>(p)]));
        }
      }
      summary.messages.push_back(detail::Concat(entry.formulation, " ", entry.VariantLabel(),
                                                ": max interior amplitude on the slice ", peak));
      if (config.output.vtk)
      {
        WriteSliceVtk(slice, out / (stem + "_slice.vtk"));
      }
    }
    if (r.solution.size() > 0 && config.output.surface_vtk)
    {
      for (const auto &d : r.system->domains)
      {
        const CVector p = r.system->Segment(r.solution, UnknownKind::Pressure, d.domain);
        const CVector trace = d.maps.Z.cast<Complex>() * p;
        WriteSurfaceVtk(d.surface, trace, "pressure",
                        out / detail::Concat(stem, "_surface", d.domain, ".vtk"));
      }
    }
    if (r.report.condition_number && config.geometry.kind == "cube")
    {
      // Compare with the same system away from the cube resonances.
      const double k_ref = OffResonanceWavenumber(k, config.geometry.edge_length);
      const IncidentWave wave = BuildWave(config, k_ref);
      const FormulationSystem ref = BuildFormulation(
          EntryKind(entry), Scene{s.mesh, s.materials, wave}, BuildOptions(config, entry));
      const double cond_ref =
          ConditionNumber(ref.lhs, force, ParseCondMethod(config.condition_method));
      const double ratio = *r.report.condition_number / cond_ref;
      summary.messages.push_back(detail::Concat(entry.formulation, " ", entry.VariantLabel(),
                                                ": condition number ",
                                                *r.report.condition_number, ", at k=", k_ref,
                                                " ", cond_ref));
      if (ratio >= 10.0)
      {
        r.report.warnings.push_back(
            detail::Concat("condition number is ", ratio, " times its value at k=", k_ref,
                           ", close to a resonance of the interior problem"));
      }
    }
    Record(summary, r);
  }
  WriteReportCsv(summary.rows, out / "report.csv");
  return summary;
}

CommandSummary CmdSweep(const RunConfig &config, const std::filesystem::path &out, bool force)
{
  const std::vector<double> ks = SweepWavenumbers(config.sweep);
  FEMBEM_VERIFY(!ks.empty(), "config: the sweep has no wavenumbers");
  const Scenario s = PrepareScenario(config, config.grid, force);
  EnsureDirectory(out);
  const RunContext ctx{config, s.mesh, s.materials, force};
  CommandSummary summary;
  for (const auto &r : RunGrid(ctx, config.grid, ks))
  {
    Record(summary, r);
  }
  WriteReportCsv(summary.rows, out / "sweep.csv");
  const double edge = config.geometry.edge_length;
  std::vector<double> res = CubeResonanceWavenumbers(*std::max_element(ks.begin(), ks.end()) * edge);
  for (double &r : res)
  {
    r /= edge;
  }
  WriteResonanceCsv(res, out / "resonances.csv");
  return summary;
}

CommandSummary CmdCompare(const RunConfig &config, const std::string &preset,
                          const std::filesystem::path &out, bool force)
{
  const ComparePreset p = MakeComparePreset(preset);
  std::vector<double> ks = SweepWavenumbers(config.sweep);
  if (ks.empty())
  {
    ks = p.k;
  }
  const Scenario s = PrepareScenario(config, p.grid, force);
  EnsureDirectory(out);
  const RunContext ctx{config, s.mesh, s.materials, force};
  CommandSummary summary;
  for (const auto &r : RunGrid(ctx, p.grid, ks))
  {
    Record(summary, r);
  }
  WriteReportCsv(summary.rows, out / ("compare_" + preset + ".csv"));
  return summary;
}

std::vector<std::string> MeshInfo(const RunConfig &config)
{
  config.Validate();
  const Mesh mesh = BuildGeometry(config.geometry);
  mesh.Validate();
  std::vector<std::string> lines;
  lines.push_back(detail::Concat("vertices ", mesh.NumVertices(), ", tetrahedra ",
                                 mesh.NumTetrahedra(), ", surface triangles ",
                                 mesh.NumSurfaceTriangles()));
  const double h = mesh.MaxTetDiameter();
  lines.push_back(detail::Concat("largest tetrahedron diameter ", h));
  for (int id : mesh.Domains())
  {
    const Surface s = ExtractSurface(mesh, id);
    const DomainVolume v = ExtractVolume(mesh, id);
    lines.push_back(detail::Concat("domain ", id, ": ", v.NumDofs(), " volume nodes, ",
                                   s.NumNodes(), " surface nodes, ", s.NumTriangles(),
                                   " surface triangles, area ", s.Area()));
  }
  lines.push_back(detail::Concat("elements per wavelength at k=", config.wave.k, ": ",
                                 2.0 * pi / config.wave.k / h));
  for (const auto &e : config.grid)
  {
    lines.push_back(detail::Concat(e.formulation, " ", e.VariantLabel(), ": ",
                                   CountUnknowns(mesh, e), " unknowns"));
  }
  return lines;
}

}  // namespace fembem

// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_CONFIG_HPP
#define FEMBEM_CONFIG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "fembem/formulations.hpp"
#include "fembem/linsolve.hpp"

namespace fembem
{

inline constexpr const char *kConfigSchema = "fembem-run/1";

struct GeometryConfig
{
  // cube | sphere | two_cubes | msh
  std::string kind = "cube";
  int subdivisions = 8;
  double edge_length = 1.0;
  double radius = 1.0;

  // Face to face distance of the two cubes.
  double gap = 2.0;
  std::string msh_path;
};

struct MaterialConfig
{
  // benchmark (the smooth cube profile) | constant
  std::string refractivity = "benchmark";
  double refractivity_value = 1.0;
  double density = 1.0;
  double exterior_density = 1.0;
};

struct WaveConfig
{
  double k = 4.0;
  Vec3 direction = Vec3(1.0, 2.0, 0.0).normalized();
};

// One formulation of the experiment grid.
struct GridEntry
{
  std::string formulation = "stabilised";
  std::string variant = "base";
  std::string regulariser = "osrc";
  double eta = 1.0;
  double nu = 0.0;

  // kappa <= 0 selects k_ext.
  double kappa = 0.0;
  std::string theta_space = "P1";
  bool permuted = false;

  // Empty selects the solver preconditioner.
  std::string preconditioner;

  std::string VariantLabel() const;
};

struct SolverConfig
{
  // gmres | direct
  std::string method = "gmres";
  double tol = 1e-5;
  int max_iter = 2000;
  bool restart = false;
  double drop_tol = 1e-4;
  std::string preconditioner = "ilu_inner+osrc_surface";
};

struct SweepConfig
{
  // Explicit wavenumbers; if empty, start:step:stop; if preset is "resonance", the default
  // resonance sweep.
  std::vector<double> k;
  double start = 0.0, stop = 0.0, step = 0.0;
  std::string preset;
};

struct OutputConfig
{
  bool slice = true;
  int resolution = 41;
  double plane_z = 0.5;
  bool vtk = true;
  bool surface_vtk = false;
};

struct RunConfig
{
  std::string schema = kConfigSchema;
  GeometryConfig geometry;
  MaterialConfig material;
  WaveConfig wave;
  std::vector<GridEntry> grid = {GridEntry{}};
  SolverConfig solver;
  OsrcConfig osrc;
  QuadratureConfig quadrature;
  SweepConfig sweep;
  OutputConfig output;
  bool condition_numbers = false;
  std::string condition_method = "svd";

  // Checks every field and every grid entry; throws InvalidArgument on the first problem.
  void Validate() const;

  static RunConfig Parse(const std::string &json_text);
  static RunConfig Load(const std::filesystem::path &path);
  std::string Dump() const;
};

Mesh BuildGeometry(const GeometryConfig &geometry);
MaterialModel BuildMaterials(const RunConfig &config, const Mesh &mesh);
IncidentWave BuildWave(const RunConfig &config, double k);
FormulationKind EntryKind(const GridEntry &entry);
FormulationOptions BuildOptions(const RunConfig &config, const GridEntry &entry);
PreconditionerRecipe BuildRecipe(const RunConfig &config, const GridEntry &entry);

// Throws InvalidArgument when the entry's formulation, spaces and preconditioner do not fit.
void ValidateEntry(const RunConfig &config, const GridEntry &entry);

// Total unknowns of the entry's system on the mesh, without assembling anything.
Index CountUnknowns(const Mesh &mesh, const GridEntry &entry);

// Wavenumbers from 4 to 12: step 0.05 within 0.1 of a cube resonance, 0.25 elsewhere.
std::vector<double> ResonanceSweep();
std::vector<double> SweepWavenumbers(const SweepConfig &sweep);

// Formulation grid and wavenumbers of a comparison preset: nu_study, space_study,
// osrc_prec, ilu_study, permutation_study.
struct ComparePreset
{
  std::vector<GridEntry> grid;
  std::vector<double> k;
};
ComparePreset MakeComparePreset(const std::string &name);

struct SelfTestCheck
{
  std::string name;
  bool passed;
  std::string detail;
};

// Defaults of the numerical settings and the reference mesh counts.
std::vector<SelfTestCheck> RunSelfTest();

}  // namespace fembem

#endif  // FEMBEM_CONFIG_HPP

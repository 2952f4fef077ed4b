// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_FORMULATIONS_HPP
#define FEMBEM_FORMULATIONS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "fembem/bem.hpp"
#include "fembem/block_operator.hpp"
#include "fembem/fem.hpp"
#include "fembem/mesh.hpp"
#include "fembem/osrc.hpp"
#include "fembem/problem.hpp"

namespace fembem
{

enum class FormulationKind
{
  Standard,
  Symmetric,
  Stabilised,
  Multidomain
};

enum class StabilisedVariant
{
  Base,
  // Symmetric coupling in the upper left blocks, nu moved to the third column.
  AltNu,
  // Third unknown substituted by Sigma = R Sigma_hat with the explicit regulariser.
  AltReg
};

std::string ToString(FormulationKind kind);
std::string ToString(StabilisedVariant variant);
FormulationKind ParseFormulation(const std::string &name);
StabilisedVariant ParseVariant(const std::string &name);
RegulariserKind ParseRegulariser(const std::string &name);

// Boundary operator blocks kept across formulations built on the same mesh and quadrature,
// keyed by wavenumber, domain pair, operator and spaces.
class BoundaryOperatorCache
{
public:
  using Key = std::tuple<double, int, int, int, int, int>;

  OperatorPtr Find(const Key &key) const;
  void Insert(const Key &key, OperatorPtr block);
  std::size_t Size() const;

private:
  mutable std::mutex mutex_;
  std::map<Key, OperatorPtr> blocks_;
};

struct FormulationOptions
{
  SpaceKind theta_space = SpaceKind::SurfaceP1;
  RegulariserKind regulariser = RegulariserKind::Osrc;

  // Shift of the shifted Laplace regulariser; non-positive selects k_ext.
  double kappa = 0.0;
  double eta = 1.0;
  double nu = 0.0;
  StabilisedVariant variant = StabilisedVariant::Base;

  // Swap the last two block rows and flip the sign of the new second row.
  bool permuted = false;

  double exterior_density = 1.0;
  OsrcConfig osrc;
  QuadratureConfig quadrature;
  Execution exec = Execution::Parallel;

  // Optional store of assembled boundary operators shared between builds.
  std::shared_ptr<BoundaryOperatorCache> cache;

  void Validate(FormulationKind kind) const;
};

// Per-domain data kept with the system for preconditioning and post-processing.
struct DomainData
{
  int domain = 0;
  Surface surface;
  RestrictionMaps maps;
  DomainVolume volume;
  CSparse fem;
  SurfaceLaplacian laplacian;
  RSparse mass_p1;
  RSparse mass_theta_p1;
  std::shared_ptr<const OsrcFactorization> osrc;

  // Interior to exterior density ratio at the surface nodes.
  RVector density_ratio;
  CVector incident_dirichlet;
  CVector incident_neumann;
};

enum class UnknownKind
{
  Pressure,
  Theta,
  Sigma
};

struct Unknown
{
  UnknownKind kind;
  int domain;
  SpaceTag space;
};

// Operator on the diagonal of a block row, used to pick the row's preconditioner.
enum class RowRole
{
  Fem,
  SingleLayer,
  Regulariser,
  Mass,
  HalfPlusAdjoint,
  EtaMass,
  EtaMassRegulariser
};

struct FormulationSystem
{
  FormulationKind kind = FormulationKind::Stabilised;
  FormulationOptions options;
  double k = 0.0;
  BlockOperator lhs;
  CVector rhs;
  std::vector<Unknown> unknowns;
  std::vector<DomainData> domains;

  // Per block row: the unknown whose test space the row uses, and its diagonal operator.
  std::vector<int> row_test;
  std::vector<RowRole> row_roles;

  // True when theta is the Neumann trace of the total field (standard coupling) rather
  // than of the scattered field.
  bool theta_is_total = false;

  Index Size() const { return rhs.size(); }

  // Index of the block holding the given unknown, or -1.
  int Block(UnknownKind kind, int domain) const;
  CVector Segment(const CVector &x, UnknownKind kind, int domain) const;
};

// Shared problem description.
struct Scene
{
  const Mesh &mesh;
  const MaterialModel &materials;
  const IncidentWave &wave;
};

FormulationSystem BuildStandard(const Scene &scene, const FormulationOptions &options);
FormulationSystem BuildSymmetric(const Scene &scene, const FormulationOptions &options);
FormulationSystem BuildStabilised(const Scene &scene, const FormulationOptions &options);
FormulationSystem BuildMultidomain(const Scene &scene, const FormulationOptions &options);
FormulationSystem BuildFormulation(FormulationKind kind, const Scene &scene,
                                   const FormulationOptions &options);

// Total exterior field at the points from a solution of the system.
CVector ReconstructExterior(const FormulationSystem &system, const CVector &solution,
                            const IncidentWave &wave, const std::vector<Vec3> &points,
                            const PotentialOptions &opts = {});

// Throws InvalidArgument when two domains overlap (bounding box and surface distance test).
void CheckDisjointDomains(const Mesh &mesh);

}  // namespace fembem

#endif  // FEMBEM_FORMULATIONS_HPP

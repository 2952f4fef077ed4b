// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_FEM_HPP
#define FEMBEM_FEM_HPP

#include <string>

#include "fembem/common.hpp"
#include "fembem/mesh.hpp"
#include "fembem/problem.hpp"
#include "fembem/space.hpp"

namespace fembem
{

struct SparseOperatorBlock
{
  CSparse matrix;
  SpaceTag trial, test;
  std::string label;
};

// Galerkin matrix of the interior heterogeneous Helmholtz form
//   a(p, q) = int grad p . grad q + (1 / rho) (grad rho . grad p) q - k_ext^2 n^2 p q
// on the volume P1 space of one domain (rows: test functions).
SparseOperatorBlock AssembleFem(const Mesh &mesh, const MaterialModel &material, double k_ext,
                                int domain, Execution exec = Execution::Parallel);

// Plain volume stiffness and mass matrices of one domain.
RSparse AssembleVolumeStiffness(const Mesh &mesh, int domain);
RSparse AssembleVolumeMass(const Mesh &mesh, int domain);

// Laplace-Beltrami stiffness and mass on the P1 space of a surface.
struct SurfaceLaplacian
{
  RSparse stiffness;
  RSparse mass;
};

SurfaceLaplacian AssembleSurfaceLaplacian(const Surface &surface);

enum class RegulariserKind
{
  ModifiedHelmholtz,
  ShiftedLaplace,
  Osrc
};

std::string ToString(RegulariserKind kind);

// Weak form of the inverse regulariser, stiffness + kappa^2 mass. The modified Helmholtz
// kind always uses kappa = 1.
RSparse AssembleRegulariserForm(RegulariserKind kind, double kappa, const SurfaceLaplacian &lb);

}  // namespace fembem

#endif  // FEMBEM_FEM_HPP

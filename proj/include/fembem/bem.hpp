// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_BEM_HPP
#define FEMBEM_BEM_HPP

#include <functional>
#include <string>
#include <vector>

#include "fembem/common.hpp"
#include "fembem/mesh.hpp"
#include "fembem/space.hpp"

namespace fembem
{

// Outgoing free-space Helmholtz kernel exp(ikr) / (4 pi r).
Complex Green(const Vec3 &x, const Vec3 &y, double k);

enum class BoundaryOperatorKind
{
  SingleLayer,
  DoubleLayer,
  AdjointDoubleLayer,
  Hypersingular
};

std::string ToString(BoundaryOperatorKind kind);

struct QuadratureConfig
{
  // Gauss points per dimension for touching pairs (Sauter-Schwab) and for separated pairs.
  int singular_order = 4;
  int regular_order = 3;

  // Pairs whose centroid distance exceeds far_distance times the larger triangle diameter
  // use far_order instead of regular_order.
  int far_order = 2;
  double far_distance = 4.0;

  void Validate() const;
};

struct DenseOperatorBlock
{
  CMatrix matrix;
  SpaceTag trial, test;
  std::string label;
};

// One Galerkin block: rows are test functions on the test surface, columns trial functions
// on the trial surface.
struct BoundaryRequest
{
  BoundaryOperatorKind kind;
  SpaceKind test;
  SpaceKind trial;
};

// Assembles several operators between two surfaces in one sweep over triangle pairs. The
// pairing is bilinear. The hypersingular operator requires P1 test and trial spaces.
std::vector<CMatrix> AssembleBoundaryOperators(const Surface &test, const Surface &trial,
                                               double k,
                                               const std::vector<BoundaryRequest> &requests,
                                               const QuadratureConfig &quad = {},
                                               Execution exec = Execution::Parallel);

DenseOperatorBlock AssembleBoundaryOperator(BoundaryOperatorKind kind, const Surface &test,
                                            SpaceKind test_space, const Surface &trial,
                                            SpaceKind trial_space, double k,
                                            const QuadratureConfig &quad = {},
                                            Execution exec = Execution::Parallel);

// Surface mass matrix of the (bilinear) pairing between the given spaces.
RSparse AssembleSurfaceMass(const Surface &surface, SpaceKind test, SpaceKind trial);

// Options for potential evaluation. The guard rejects points closer to the surface than
// one element diameter; with adaptive refinement on, triangles close to a point are
// recursively subdivided so that nearly singular integrals stay accurate.
struct PotentialOptions
{
  int order = 4;
  bool guard = true;
  bool adaptive = false;
  int max_depth = 10;
  Execution exec = Execution::Parallel;
};

// Evaluates (double layer potential of phi) - (single layer potential of psi) at the
// points. phi is a surface P1 coefficient vector (may be empty for zero), psi lives in
// psi_space (may be empty).
CVector EvaluatePotentials(const Surface &surface, double k, const CVector &phi,
                           const CVector &psi, SpaceKind psi_space,
                           const std::vector<Vec3> &points, const PotentialOptions &opts = {});

// Single layer potential of a density given pointwise on the surface as f(y, n_y).
CVector EvaluateSingleLayerOfFunction(const Surface &surface, double k,
                                      const std::function<Complex(const Vec3 &, const Vec3 &)> &f,
                                      const std::vector<Vec3> &points,
                                      const PotentialOptions &opts = {});

// Distance from a point to the closest triangle of the surface.
double DistanceToSurface(const Surface &surface, const Vec3 &x);
double PointTriangleDistance(const Vec3 &p, const Vec3 &a, const Vec3 &b, const Vec3 &c);

// Vertex-sharing colouring of the triangles: triangles of one colour have no common
// vertex, so their P1 rows can be written concurrently.
std::vector<std::vector<int>> ColourTriangles(const Surface &surface);

}  // namespace fembem

#endif  // FEMBEM_BEM_HPP

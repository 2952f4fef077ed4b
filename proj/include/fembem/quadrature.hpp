// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_QUADRATURE_HPP
#define FEMBEM_QUADRATURE_HPP

#include <vector>

#include "fembem/common.hpp"

namespace fembem
{

// Gauss-Legendre rule on [0, 1].
struct GaussRule
{
  std::vector<double> x, w;
};

GaussRule GaussLegendre01(int order);

// Rule on the reference triangle {0 <= x2 <= x1 <= 1} (area 1/2). A point maps to the
// physical triangle (P0, P1, P2) as P0 + x1 (P1 - P0) + x2 (P2 - P1); the barycentric
// weights of the corners are (1 - x1, x1 - x2, x2).
struct TriangleRule
{
  std::vector<Eigen::Vector2d> x;
  std::vector<double> w;
};

// Collapsed tensor Gauss rule with order^2 points.
TriangleRule TriangleGauss(int order);

inline Eigen::Vector3d ReferenceBarycentric(const Eigen::Vector2d &x)
{
  return {1.0 - x[0], x[0] - x[1], x[1]};
}

// Singular rule for a pair of reference triangles. The weights include all Jacobians of
// the coordinate transformations; summing w f(x, y) approximates the integral over the
// product of two reference triangles (total weight 1/4).
struct PairRule
{
  std::vector<Eigen::Vector2d> x, y;
  std::vector<double> w;
};

// Relative position of two triangles of a Galerkin pair. For the singular cases the
// triangles must be ordered so that shared vertices come first: identical vertex order for
// coincident triangles, the shared edge as P0 -> P1 in both for edge-adjacent ones, the
// shared vertex as P0 in both for vertex-adjacent ones.
enum class PairRelation
{
  Coincident,
  Edge,
  Vertex,
  Regular
};

PairRule SauterSchwabRule(PairRelation relation, int order);

// Average of a rule and its mirror (x and y swapped); integrates symmetric kernels to
// symmetric Galerkin entries exactly.
PairRule SymmetrizedRule(const PairRule &rule);

// Symmetric 4-point degree-2 rule on the reference tetrahedron (volume 1/6), barycentric
// coordinates of the points.
struct TetRule
{
  std::vector<Eigen::Vector4d> lambda;
  std::vector<double> w;
};

TetRule TetDegree2();

}  // namespace fembem

#endif  // FEMBEM_QUADRATURE_HPP

// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_MESH_HPP
#define FEMBEM_MESH_HPP

#include <array>
#include <filesystem>
#include <vector>

#include "fembem/common.hpp"

namespace fembem
{

//
// Tetrahedral volume mesh with the matching triangular boundary mesh of every domain.
//
// Vertex indices are global. Surface triangles are oriented so that their normal points
// out of the owning tetrahedron, i.e. away from the domain.
//
struct Mesh
{
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> tetrahedra;
  std::vector<int> tet_domain;

  std::vector<std::array<int, 3>> surface_triangles;
  std::vector<Vec3> triangle_normals;
  std::vector<int> triangle_domain;
  std::vector<int> triangle_owner;

  // Builds a mesh from raw cells. Negatively oriented tetrahedra are reoriented, boundary
  // faces are extracted per domain by face-incidence count. Throws InvalidArgument on
  // degenerate cells, faces shared by more than two cells, or open boundaries.
  static Mesh FromTetrahedra(std::vector<Vec3> vertices,
                             std::vector<std::array<int, 4>> tetrahedra,
                             std::vector<int> tet_domain);

  // Sorted list of distinct domain ids.
  std::vector<int> Domains() const;

  Index NumVertices() const { return static_cast<Index>(vertices.size()); }
  Index NumTetrahedra() const { return static_cast<Index>(tetrahedra.size()); }
  Index NumSurfaceTriangles() const { return static_cast<Index>(surface_triangles.size()); }

  double TetVolume(Index t) const;
  double MaxTetDiameter() const;

  // Checks every invariant of the type; throws InvalidArgument with the first violation.
  void Validate(double tol = 1e-12) const;
};

// Boundary of one domain, with its own node numbering. Nodes are the boundary vertices of
// the domain in ascending global vertex order, which fixes the surface P1 DOF order.
struct Surface
{
  int domain = 0;
  std::vector<Vec3> nodes;
  std::vector<int> volume_vertex;
  std::vector<std::array<int, 3>> triangles;
  std::vector<int> mesh_triangle;
  std::vector<Vec3> normals;
  std::vector<double> areas;
  double max_diameter = 0.0;

  Index NumNodes() const { return static_cast<Index>(nodes.size()); }
  Index NumTriangles() const { return static_cast<Index>(triangles.size()); }
  double Area() const;
  Vec3 Centroid(Index t) const;
  std::array<Vec3, 3> Corners(Index t) const;
};

Surface ExtractSurface(const Mesh &mesh, int domain);

// Whether x lies inside the closed surface (ray casting parity).
bool PointInsideSurface(const Surface &surface, const Vec3 &x);

// The vertices and tetrahedra of one domain in a local numbering (ascending global id).
struct DomainVolume
{
  int domain = 0;
  std::vector<int> vertices;
  std::vector<std::array<int, 4>> tets;
  std::vector<int> global_to_local;

  Index NumDofs() const { return static_cast<Index>(vertices.size()); }
};

DomainVolume ExtractVolume(const Mesh &mesh, int domain);

// Trace map Z (volume P1 -> surface P1) and interior map Zbar (volume P1 -> interior nodes).
struct RestrictionMaps
{
  RSparse Z;
  RSparse Zbar;
  std::vector<int> surface_dofs;
  std::vector<int> interior_dofs;
};

RestrictionMaps BuildRestrictions(const Mesh &mesh, int domain);

// Structured cube, each voxel split into six Kuhn tetrahedra sharing the main diagonal.
Mesh BuildCubeMesh(int subdivisions, const Vec3 &origin = Vec3::Zero(),
                   double edge_length = 1.0);

// Ball obtained by mapping the structured cube [-1,1]^3 radially onto the ball.
Mesh BuildBallMesh(int subdivisions, const Vec3 &center = Vec3::Zero(),
                   double radius = 1.0);

// Icosphere of the given refinement level, closed by a fan of tetrahedra to the center.
// Intended for surface-only computations.
Mesh BuildIcosphereMesh(int level, const Vec3 &center = Vec3::Zero(), double radius = 1.0);

// Concatenates meshes; domain ids of the i-th mesh are offset so that all are distinct.
Mesh MergeMeshes(const std::vector<Mesh> &meshes);

// Gmsh MSH 2.2 ASCII. Only tetrahedral volume cells define the mesh; lower-dimensional
// cells are skipped. Each physical volume tag becomes one domain (ascending tag order).
Mesh ImportMsh(const std::filesystem::path &path);
void ExportMsh(const Mesh &mesh, const std::filesystem::path &path);

// VTK legacy ASCII unstructured grid of the tetrahedra with a domain cell field.
void WriteMeshVtk(const Mesh &mesh, const std::filesystem::path &path);

}  // namespace fembem

#endif  // FEMBEM_MESH_HPP

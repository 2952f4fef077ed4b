// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "fembem/mesh.hpp"

using namespace fembem;

namespace
{

std::filesystem::path TempPath(const std::string &name)
{
  return std::filesystem::temp_directory_path() / ("fembem_test_" + name);
}

Index CountSurfaceVertices(const Mesh &mesh, int domain)
{
  return ExtractSurface(mesh, domain).NumNodes();
}

}  // namespace

TEST_CASE("cube mesh counts")
{
  for (int n : {1, 2, 3, 5})
  {
    Mesh mesh = BuildCubeMesh(n);
    CHECK(mesh.NumVertices() == (n + 1) * (n + 1) * (n + 1));
    CHECK(mesh.NumTetrahedra() == 6 * n * n * n);
    CHECK(mesh.NumSurfaceTriangles() == 12 * n * n);
    CHECK(CountSurfaceVertices(mesh, 0) == (n + 1) * (n + 1) * (n + 1) - (n - 1) * (n - 1) * (n - 1));
    double vol = 0.0;
    for (Index t = 0; t < mesh.NumTetrahedra(); t++)
    {
      vol += mesh.TetVolume(t);
    }
    CHECK(vol == doctest::Approx(1.0).epsilon(1e-12));
    mesh.Validate();
  }
  Mesh one = BuildCubeMesh(1);
  CHECK(one.NumVertices() == 8);
  CHECK(CountSurfaceVertices(one, 0) == 8);
}

TEST_CASE("cube mesh with thirteen subdivisions")
{
  Mesh mesh = BuildCubeMesh(13);
  CHECK(mesh.NumVertices() == 2744);
  CHECK(CountSurfaceVertices(mesh, 0) == 1016);
  CHECK(mesh.NumSurfaceTriangles() == 2028);
  CHECK(mesh.MaxTetDiameter() == doctest::Approx(std::sqrt(3.0) / 13.0).epsilon(1e-12));

  RestrictionMaps maps = BuildRestrictions(mesh, 0);
  CHECK(maps.Z.rows() == 1016);
  CHECK(maps.Z.cols() == 2744);
  CHECK(maps.Zbar.rows() == 1728);
  CHECK(maps.Zbar.cols() == 2744);
}

TEST_CASE("normals match vertex ordering and point outward")
{
  Mesh mesh = BuildCubeMesh(3, Vec3(-0.5, -0.5, -0.5));
  for (Index t = 0; t < mesh.NumSurfaceTriangles(); t++)
  {
    const auto &tri = mesh.surface_triangles[t];
    Vec3 n = (mesh.vertices[tri[1]] - mesh.vertices[tri[0]])
                 .cross(mesh.vertices[tri[2]] - mesh.vertices[tri[0]])
                 .normalized();
    CHECK((n - mesh.triangle_normals[t]).norm() < 1e-12);
    Vec3 c = (mesh.vertices[tri[0]] + mesh.vertices[tri[1]] + mesh.vertices[tri[2]]) / 3.0;
    CHECK(n.dot(c) > 0.0);
  }
}

TEST_CASE("restriction maps partition the volume nodes")
{
  Mesh mesh = BuildCubeMesh(3);
  RestrictionMaps maps = BuildRestrictions(mesh, 0);
  for (const RSparse *m : {&maps.Z, &maps.Zbar})
  {
    for (Index r = 0; r < m->rows(); r++)
    {
      CHECK(m->row(r).nonZeros() == 1);
      CHECK(m->row(r).sum() == 1.0);
    }
  }
  Eigen::MatrixXd zzt = Eigen::MatrixXd(maps.Z * RSparse(maps.Z.transpose()));
  CHECK((zzt - Eigen::MatrixXd::Identity(zzt.rows(), zzt.cols())).norm() == 0.0);
  Eigen::MatrixXd sum = Eigen::MatrixXd(RSparse(maps.Z.transpose()) * maps.Z) +
                        Eigen::MatrixXd(RSparse(maps.Zbar.transpose()) * maps.Zbar);
  CHECK((sum - Eigen::MatrixXd::Identity(64, 64)).norm() == 0.0);

  // Surface ordering: ascending volume vertex index.
  for (std::size_t i = 1; i < maps.surface_dofs.size(); i++)
  {
    CHECK(maps.surface_dofs[i] > maps.surface_dofs[i - 1]);
  }

  RestrictionMaps single = BuildRestrictions(BuildCubeMesh(1), 0);
  CHECK(Eigen::MatrixXd(single.Z).isIdentity(0.0));
  CHECK(single.Zbar.rows() == 0);
}

TEST_CASE("negatively oriented tetrahedra are reoriented")
{
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  Mesh mesh = Mesh::FromTetrahedra(v, {{0, 2, 1, 3}}, {0});
  CHECK(mesh.TetVolume(0) == doctest::Approx(1.0 / 6.0));
  CHECK(mesh.NumSurfaceTriangles() == 4);
  mesh.Validate();
  CHECK_THROWS_AS(Mesh::FromTetrahedra(v, {{0, 1, 2, 2}}, {0}), InvalidArgument);
}

TEST_CASE("msh import of a single tetrahedron")
{
  auto path = TempPath("single.msh");
  {
    std::ofstream out(path);
    out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n4\n"
           "10 0 0 0\n11 1 0 0\n12 0 1 0\n13 0 0 1\n$EndNodes\n"
           "$Elements\n2\n1 2 2 7 7 10 11 12\n2 4 2 3 3 10 11 12 13\n$EndElements\n";
  }
  Mesh mesh = ImportMsh(path);
  CHECK(mesh.NumTetrahedra() == 1);
  CHECK(mesh.NumSurfaceTriangles() == 4);
  CHECK(mesh.NumVertices() == 4);
  std::filesystem::remove(path);
}

TEST_CASE("msh round trip of a cube")
{
  Mesh mesh = BuildCubeMesh(2);
  auto path = TempPath("cube2.msh");
  ExportMsh(mesh, path);
  Mesh back = ImportMsh(path);
  CHECK(back.NumVertices() == mesh.NumVertices());
  CHECK(back.NumTetrahedra() == mesh.NumTetrahedra());
  CHECK(back.NumSurfaceTriangles() == mesh.NumSurfaceTriangles());
  CHECK(CountSurfaceVertices(back, 0) == CountSurfaceVertices(mesh, 0));
  std::filesystem::remove(path);
}

TEST_CASE("msh import rejects hexahedra and open boundaries")
{
  auto path = TempPath("hex.msh");
  {
    std::ofstream out(path);
    out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n8\n"
           "1 0 0 0\n2 1 0 0\n3 1 1 0\n4 0 1 0\n5 0 0 1\n6 1 0 1\n7 1 1 1\n8 0 1 1\n"
           "$EndNodes\n$Elements\n1\n1 5 2 1 1 1 2 3 4 5 6 7 8\n$EndElements\n";
  }
  try
  {
    ImportMsh(path);
    FAIL("expected an error");
  }
  catch (const InvalidArgument &e)
  {
    CHECK(std::string(e.what()).find("unsupported cell type") != std::string::npos);
  }
  std::filesystem::remove(path);

  // Two tetrahedra sharing only an edge leave a non-manifold boundary.
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}};
  CHECK_THROWS_AS(Mesh::FromTetrahedra(v, {{0, 1, 2, 3}, {0, 3, 4, 5}}, {0, 0}),
                  InvalidArgument);
}

TEST_CASE("ball and icosphere meshes")
{
  Mesh ball = BuildBallMesh(4, Vec3::Zero(), 2.0);
  ball.Validate();
  Surface s = ExtractSurface(ball, 0);
  for (const auto &x : s.nodes)
  {
    CHECK(x.norm() == doctest::Approx(2.0).epsilon(1e-12));
  }
  Mesh ico = BuildIcosphereMesh(2);
  CHECK(ico.NumSurfaceTriangles() == 320);
  CHECK(ExtractSurface(ico, 0).NumNodes() == 162);
  ico.Validate();
}

TEST_CASE("merged meshes keep distinct domains")
{
  Mesh a = BuildCubeMesh(2);
  Mesh b = BuildCubeMesh(2, Vec3(3.0, 0.0, 0.0));
  Mesh m = MergeMeshes({a, b});
  CHECK(m.Domains() == std::vector<int>{0, 1});
  CHECK(m.NumSurfaceTriangles() == 2 * a.NumSurfaceTriangles());
  CHECK(ExtractVolume(m, 1).NumDofs() == 27);
  CHECK(ExtractSurface(m, 1).volume_vertex.front() >= 27);
}

// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

namespace fembem
{

namespace
{

// Local faces of a positively oriented tetrahedron; the fourth entry is the opposite vertex.
constexpr std::array<std::array<int, 4>, 4> kTetFaces = {{
    {1, 2, 3, 0},
    {0, 3, 2, 1},
    {0, 1, 3, 2},
    {0, 2, 1, 3},
}};

double SignedVolume(const Vec3 &a, const Vec3 &b, const Vec3 &c, const Vec3 &d)
{
  return (b - a).dot((c - a).cross(d - a)) / 6.0;
}

using FaceKey = std::tuple<int, int, int, int>;  // domain, sorted vertex triple

FaceKey MakeFaceKey(int domain, int a, int b, int c)
{
  std::array<int, 3> v = {a, b, c};
  std::sort(v.begin(), v.end());
  return {domain, v[0], v[1], v[2]};
}

}  // namespace

Mesh Mesh::FromTetrahedra(std::vector<Vec3> vertices, std::vector<std::array<int, 4>> tetrahedra,
                          std::vector<int> tet_domain)
{
  FEMBEM_VERIFY(tet_domain.size() == tetrahedra.size(),
                "domain ids (", tet_domain.size(), ") do not match tetrahedra (",
                tetrahedra.size(), ")");
  FEMBEM_VERIFY(!tetrahedra.empty(), "mesh has no tetrahedra");
  const int nv = static_cast<int>(vertices.size());

  Mesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.tetrahedra = std::move(tetrahedra);
  mesh.tet_domain = std::move(tet_domain);

  double scale = 0.0;
  for (const auto &v : mesh.vertices)
  {
    scale = std::max(scale, v.cwiseAbs().maxCoeff());
  }
  scale = std::max(scale, 1.0);

  for (std::size_t t = 0; t < mesh.tetrahedra.size(); t++)
  {
    auto &tet = mesh.tetrahedra[t];
    for (int i = 0; i < 4; i++)
    {
      FEMBEM_VERIFY(tet[i] >= 0 && tet[i] < nv, "tetrahedron ", t, " references vertex ",
                    tet[i], " outside [0, ", nv, ")");
    }
    double vol = SignedVolume(mesh.vertices[tet[0]], mesh.vertices[tet[1]],
                              mesh.vertices[tet[2]], mesh.vertices[tet[3]]);
    FEMBEM_VERIFY(std::abs(vol) > 1e-14 * scale * scale * scale, "tetrahedron ", t,
                  " is degenerate");
    if (vol < 0.0)
    {
      std::swap(tet[2], tet[3]);
    }
  }

  // Count face incidences per domain; faces seen once are boundary faces.
  std::map<FaceKey, std::vector<std::pair<int, int>>> faces;
  for (std::size_t t = 0; t < mesh.tetrahedra.size(); t++)
  {
    const auto &tet = mesh.tetrahedra[t];
    for (int f = 0; f < 4; f++)
    {
      const auto &lf = kTetFaces[f];
      faces[MakeFaceKey(mesh.tet_domain[t], tet[lf[0]], tet[lf[1]], tet[lf[2]])].emplace_back(
          static_cast<int>(t), f);
    }
  }

  struct BoundaryFace
  {
    int domain, tet, face;
  };
  std::vector<BoundaryFace> boundary;
  for (const auto &[key, owners] : faces)
  {
    if (owners.size() > 2)
    {
      throw InvalidArgument(detail::Concat("non-watertight boundary: face (", std::get<1>(key),
                                           ", ", std::get<2>(key), ", ", std::get<3>(key),
                                           ") is shared by ", owners.size(), " cells"));
    }
    if (owners.size() == 1)
    {
      boundary.push_back({std::get<0>(key), owners[0].first, owners[0].second});
    }
  }
  std::sort(boundary.begin(), boundary.end(), [](const auto &a, const auto &b)
            { return std::tie(a.domain, a.tet, a.face) < std::tie(b.domain, b.tet, b.face); });

  for (const auto &bf : boundary)
  {
    const auto &tet = mesh.tetrahedra[bf.tet];
    const auto &lf = kTetFaces[bf.face];
    std::array<int, 3> tri = {tet[lf[0]], tet[lf[1]], tet[lf[2]]};
    const Vec3 &a = mesh.vertices[tri[0]];
    const Vec3 &b = mesh.vertices[tri[1]];
    const Vec3 &c = mesh.vertices[tri[2]];
    Vec3 n = (b - a).cross(c - a);
    if (n.dot((a + b + c) / 3.0 - mesh.vertices[tet[lf[3]]]) < 0.0)
    {
      std::swap(tri[1], tri[2]);
      n = -n;
    }
    mesh.surface_triangles.push_back(tri);
    mesh.triangle_normals.push_back(n.normalized());
    mesh.triangle_domain.push_back(bf.domain);
    mesh.triangle_owner.push_back(bf.tet);
  }

  // Closed boundary: every surface edge of a domain belongs to exactly two of its triangles.
  std::map<std::tuple<int, int, int>, std::vector<int>> edges;
  for (std::size_t t = 0; t < mesh.surface_triangles.size(); t++)
  {
    const auto &tri = mesh.surface_triangles[t];
    for (int e = 0; e < 3; e++)
    {
      int a = tri[e], b = tri[(e + 1) % 3];
      edges[{mesh.triangle_domain[t], std::min(a, b), std::max(a, b)}].push_back(
          static_cast<int>(t));
    }
  }
  for (const auto &[key, tris] : edges)
  {
    if (tris.size() != 2)
    {
      const auto &tri = mesh.surface_triangles[tris.front()];
      throw InvalidArgument(detail::Concat(
          "non-watertight boundary: edge (", std::get<1>(key), ", ", std::get<2>(key),
          ") of face (", tri[0], ", ", tri[1], ", ", tri[2], ") is shared by ", tris.size(),
          " boundary faces"));
    }
  }
  return mesh;
}

std::vector<int> Mesh::Domains() const
{
  std::vector<int> d(tet_domain.begin(), tet_domain.end());
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

double Mesh::TetVolume(Index t) const
{
  const auto &tet = tetrahedra[t];
  return SignedVolume(vertices[tet[0]], vertices[tet[1]], vertices[tet[2]], vertices[tet[3]]);
}

double Mesh::MaxTetDiameter() const
{
  double h = 0.0;
  for (const auto &tet : tetrahedra)
  {
    for (int i = 0; i < 4; i++)
    {
      for (int j = i + 1; j < 4; j++)
      {
        h = std::max(h, (vertices[tet[i]] - vertices[tet[j]]).norm());
      }
    }
  }
  return h;
}

void Mesh::Validate(double tol) const
{
  for (Index t = 0; t < NumTetrahedra(); t++)
  {
    FEMBEM_VERIFY(TetVolume(t) > 0.0, "tetrahedron ", t, " has non-positive volume");
  }
  std::vector<char> on_tet(vertices.size(), 0);
  for (const auto &tet : tetrahedra)
  {
    for (int v : tet)
    {
      on_tet[v] = 1;
    }
  }
  for (Index s = 0; s < NumSurfaceTriangles(); s++)
  {
    const auto &tri = surface_triangles[s];
    const auto &tet = tetrahedra[triangle_owner[s]];
    FEMBEM_VERIFY(tet_domain[triangle_owner[s]] == triangle_domain[s], "surface triangle ", s,
                  " belongs to a tetrahedron of another domain");
    int found = 0, opposite = -1;
    for (int v : tet)
    {
      if (std::find(tri.begin(), tri.end(), v) != tri.end())
      {
        found++;
      }
      else
      {
        opposite = v;
      }
    }
    FEMBEM_VERIFY(found == 3, "surface triangle ", s, " is not a face of its owner");
    const Vec3 &n = triangle_normals[s];
    FEMBEM_VERIFY(std::abs(n.norm() - 1.0) < tol, "normal of triangle ", s,
                  " is not unit length");
    const Vec3 c = (vertices[tri[0]] + vertices[tri[1]] + vertices[tri[2]]) / 3.0;
    FEMBEM_VERIFY(n.dot(c - vertices[opposite]) > 0.0, "normal of triangle ", s,
                  " points into its tetrahedron");
    Vec3 nc = (vertices[tri[1]] - vertices[tri[0]]).cross(vertices[tri[2]] - vertices[tri[0]]);
    FEMBEM_VERIFY((nc.normalized() - n).norm() < tol, "normal of triangle ", s,
                  " disagrees with its vertex ordering");
    for (int v : tri)
    {
      FEMBEM_VERIFY(on_tet[v], "surface vertex ", v, " is not a volume vertex");
    }
  }
}

double Surface::Area() const
{
  return std::accumulate(areas.begin(), areas.end(), 0.0);
}

Vec3 Surface::Centroid(Index t) const
{
  const auto &tri = triangles[t];
  return (nodes[tri[0]] + nodes[tri[1]] + nodes[tri[2]]) / 3.0;
}

std::array<Vec3, 3> Surface::Corners(Index t) const
{
  const auto &tri = triangles[t];
  return {nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]};
}

Surface ExtractSurface(const Mesh &mesh, int domain)
{
  Surface s;
  s.domain = domain;
  std::set<int> verts;
  for (Index t = 0; t < mesh.NumSurfaceTriangles(); t++)
  {
    if (mesh.triangle_domain[t] == domain)
    {
      verts.insert(mesh.surface_triangles[t].begin(), mesh.surface_triangles[t].end());
    }
  }
  FEMBEM_VERIFY(!verts.empty(), "domain ", domain, " has no surface");
  s.volume_vertex.assign(verts.begin(), verts.end());
  std::vector<int> local(mesh.vertices.size(), -1);
  for (std::size_t i = 0; i < s.volume_vertex.size(); i++)
  {
    local[s.volume_vertex[i]] = static_cast<int>(i);
    s.nodes.push_back(mesh.vertices[s.volume_vertex[i]]);
  }
  for (Index t = 0; t < mesh.NumSurfaceTriangles(); t++)
  {
    if (mesh.triangle_domain[t] != domain)
    {
      continue;
    }
    const auto &tri = mesh.surface_triangles[t];
    s.triangles.push_back({local[tri[0]], local[tri[1]], local[tri[2]]});
    s.mesh_triangle.push_back(static_cast<int>(t));
    s.normals.push_back(mesh.triangle_normals[t]);
    const Vec3 &a = mesh.vertices[tri[0]], &b = mesh.vertices[tri[1]],
               &c = mesh.vertices[tri[2]];
    s.areas.push_back(0.5 * (b - a).cross(c - a).norm());
    s.max_diameter =
        std::max({s.max_diameter, (b - a).norm(), (c - b).norm(), (a - c).norm()});
  }
  return s;
}

DomainVolume ExtractVolume(const Mesh &mesh, int domain)
{
  DomainVolume vol;
  vol.domain = domain;
  std::vector<char> used(mesh.vertices.size(), 0);
  for (Index t = 0; t < mesh.NumTetrahedra(); t++)
  {
    if (mesh.tet_domain[t] == domain)
    {
      for (int v : mesh.tetrahedra[t])
      {
        used[v] = 1;
      }
    }
  }
  vol.global_to_local.assign(mesh.vertices.size(), -1);
  for (std::size_t v = 0; v < used.size(); v++)
  {
    if (used[v])
    {
      vol.global_to_local[v] = static_cast<int>(vol.vertices.size());
      vol.vertices.push_back(static_cast<int>(v));
    }
  }
  FEMBEM_VERIFY(!vol.vertices.empty(), "domain ", domain, " has no tetrahedra");
  for (Index t = 0; t < mesh.NumTetrahedra(); t++)
  {
    if (mesh.tet_domain[t] == domain)
    {
      const auto &tet = mesh.tetrahedra[t];
      vol.tets.push_back({vol.global_to_local[tet[0]], vol.global_to_local[tet[1]],
                          vol.global_to_local[tet[2]], vol.global_to_local[tet[3]]});
    }
  }
  return vol;
}

RestrictionMaps BuildRestrictions(const Mesh &mesh, int domain)
{
  const DomainVolume vol = ExtractVolume(mesh, domain);
  const Surface surf = ExtractSurface(mesh, domain);
  RestrictionMaps maps;
  std::vector<char> on_surface(vol.vertices.size(), 0);
  for (int g : surf.volume_vertex)
  {
    const int l = vol.global_to_local[g];
    maps.surface_dofs.push_back(l);
    on_surface[l] = 1;
  }
  for (std::size_t l = 0; l < vol.vertices.size(); l++)
  {
    if (!on_surface[l])
    {
      maps.interior_dofs.push_back(static_cast<int>(l));
    }
  }
  auto selection = [&](const std::vector<int> &cols)
  {
    RSparse m(static_cast<Index>(cols.size()), vol.NumDofs());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(cols.size());
    for (std::size_t r = 0; r < cols.size(); r++)
    {
      trip.emplace_back(static_cast<int>(r), cols[r], 1.0);
    }
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
  };
  maps.Z = selection(maps.surface_dofs);
  maps.Zbar = selection(maps.interior_dofs);
  return maps;
}

Mesh BuildCubeMesh(int subdivisions, const Vec3 &origin, double edge_length)
{
  FEMBEM_VERIFY(subdivisions >= 1, "cube subdivisions must be >= 1, got ", subdivisions);
  FEMBEM_VERIFY(edge_length > 0.0, "cube edge length must be positive");
  const int n = subdivisions, m = n + 1;
  const double h = edge_length / n;
  std::vector<Vec3> vertices;
  vertices.reserve(static_cast<std::size_t>(m) * m * m);
  for (int k = 0; k < m; k++)
  {
    for (int j = 0; j < m; j++)
    {
      for (int i = 0; i < m; i++)
      {
        vertices.push_back(origin + Vec3(i * h, j * h, k * h));
      }
    }
  }
  auto id = [m](int i, int j, int k) { return i + m * (j + m * k); };
  constexpr std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<std::array<int, 4>> tets;
  tets.reserve(static_cast<std::size_t>(6) * n * n * n);
  for (int k = 0; k < n; k++)
  {
    for (int j = 0; j < n; j++)
    {
      for (int i = 0; i < n; i++)
      {
        for (const auto &p : perms)
        {
          std::array<int, 3> c = {i, j, k};
          std::array<int, 4> tet;
          tet[0] = id(c[0], c[1], c[2]);
          for (int s = 0; s < 3; s++)
          {
            c[p[s]]++;
            tet[s + 1] = id(c[0], c[1], c[2]);
          }
          tets.push_back(tet);
        }
      }
    }
  }
  return Mesh::FromTetrahedra(std::move(vertices), std::move(tets),
                              std::vector<int>(tets.size(), 0));
}

Mesh BuildBallMesh(int subdivisions, const Vec3 &center, double radius)
{
  FEMBEM_VERIFY(radius > 0.0, "ball radius must be positive");
  Mesh cube = BuildCubeMesh(subdivisions, Vec3(-1.0, -1.0, -1.0), 2.0);
  for (auto &v : cube.vertices)
  {
    const double r2 = v.norm();
    if (r2 > 0.0)
    {
      v *= v.cwiseAbs().maxCoeff() / r2;
    }
    v = center + radius * v;
  }
  return Mesh::FromTetrahedra(std::move(cube.vertices), std::move(cube.tetrahedra),
                              std::move(cube.tet_domain));
}

Mesh BuildIcosphereMesh(int level, const Vec3 &center, double radius)
{
  FEMBEM_VERIFY(level >= 0, "icosphere level must be >= 0");
  FEMBEM_VERIFY(radius > 0.0, "icosphere radius must be positive");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> v = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
                         {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
                         {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto &p : v)
  {
    p.normalize();
  }
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
      {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  for (int l = 0; l < level; l++)
  {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b)
    {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end())
      {
        return it->second;
      }
      v.push_back((v[a] + v[b]).normalized());
      const int id = static_cast<int>(v.size()) - 1;
      midpoint.emplace(key, id);
      return id;
    };
    std::vector<std::array<int, 3>> g;
    g.reserve(4 * f.size());
    for (const auto &t : f)
    {
      const int a = mid(t[0], t[1]), b = mid(t[1], t[2]), c = mid(t[2], t[0]);
      g.push_back({t[0], a, c});
      g.push_back({t[1], b, a});
      g.push_back({t[2], c, b});
      g.push_back({a, b, c});
    }
    f = std::move(g);
  }
  std::vector<Vec3> vertices;
  vertices.reserve(v.size() + 1);
  for (const auto &p : v)
  {
    vertices.push_back(center + radius * p);
  }
  vertices.push_back(center);
  const int c = static_cast<int>(vertices.size()) - 1;
  std::vector<std::array<int, 4>> tets;
  tets.reserve(f.size());
  for (const auto &t : f)
  {
    tets.push_back({c, t[0], t[1], t[2]});
  }
  return Mesh::FromTetrahedra(std::move(vertices), std::move(tets),
                              std::vector<int>(tets.size(), 0));
}

Mesh MergeMeshes(const std::vector<Mesh> &meshes)
{
  FEMBEM_VERIFY(!meshes.empty(), "nothing to merge");
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 4>> tets;
  std::vector<int> domains;
  int next_domain = 0;
  for (const auto &m : meshes)
  {
    const int offset = static_cast<int>(vertices.size());
    vertices.insert(vertices.end(), m.vertices.begin(), m.vertices.end());
    std::map<int, int> remap;
    for (int d : m.Domains())
    {
      remap[d] = next_domain++;
    }
    for (Index t = 0; t < m.NumTetrahedra(); t++)
    {
      auto tet = m.tetrahedra[t];
      for (int &x : tet)
      {
        x += offset;
      }
      tets.push_back(tet);
      domains.push_back(remap.at(m.tet_domain[t]));
    }
  }
  return Mesh::FromTetrahedra(std::move(vertices), std::move(tets), std::move(domains));
}

bool PointInsideSurface(const Surface &surface, const Vec3 &x)
{
  // Ray casting parity. Hits too close to an edge or to the ray origin are ambiguous; the
  // ray is then redrawn from a fixed-seed generator.
  std::mt19937 rng(20240517);
  std::normal_distribution<double> g;
  Vec3 dir = Vec3(0.5773, 0.5774, 0.5775).normalized();
  for (int attempt = 0; attempt < 64; attempt++)
  {
    int hits = 0;
    bool ambiguous = false;
    for (Index t = 0; t < surface.NumTriangles() && !ambiguous; t++)
    {
      const auto p = surface.Corners(t);
      const Vec3 e1 = p[1] - p[0], e2 = p[2] - p[0];
      const Vec3 h = dir.cross(e2);
      const double det = e1.dot(h);
      const double scale = e1.norm() * e2.norm();
      if (std::abs(det) < 1e-12 * scale)
      {
        continue;
      }
      const Vec3 s = x - p[0];
      const double u = s.dot(h) / det;
      const Vec3 q = s.cross(e1);
      const double v = dir.dot(q) / det;
      const double d = e2.dot(q) / det;
      const double eps = 1e-9;
      if (u < -eps || v < -eps || u + v > 1.0 + eps || d < -eps * std::sqrt(scale))
      {
        continue;
      }
      if (u < eps || v < eps || u + v > 1.0 - eps || std::abs(d) < eps * std::sqrt(scale))
      {
        ambiguous = true;
        break;
      }
      hits++;
    }
    if (!ambiguous)
    {
      return hits % 2 == 1;
    }
    dir = Vec3(g(rng), g(rng), g(rng)).normalized();
  }
  throw NumericalError("inside/outside classification failed: point lies on the surface");
}

}  // namespace fembem

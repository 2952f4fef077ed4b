// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/fem.hpp"

#include <array>

#include "fembem/quadrature.hpp"

namespace fembem
{

namespace
{

struct TetGeometry
{
  std::array<Vec3, 4> p;
  std::array<Vec3, 4> grad;
  double volume;
};

TetGeometry Geometry(const Mesh &mesh, const std::array<int, 4> &tet)
{
  TetGeometry g;
  for (int a = 0; a < 4; a++)
  {
    g.p[a] = mesh.vertices[tet[a]];
  }
  Eigen::Matrix3d j;
  j.col(0) = g.p[1] - g.p[0];
  j.col(1) = g.p[2] - g.p[0];
  j.col(2) = g.p[3] - g.p[0];
  g.volume = j.determinant() / 6.0;
  const Eigen::Matrix3d jit = j.inverse().transpose();
  g.grad[1] = jit.col(0);
  g.grad[2] = jit.col(1);
  g.grad[3] = jit.col(2);
  g.grad[0] = -(g.grad[1] + g.grad[2] + g.grad[3]);
  return g;
}

template <typename Scalar, typename LocalFn>
Eigen::SparseMatrix<Scalar, Eigen::RowMajor> AssembleVolume(const Mesh &mesh, int domain,
                                                            Execution exec, LocalFn local)
{
  const DomainVolume vol = ExtractVolume(mesh, domain);
  const int nt = static_cast<int>(vol.tets.size());
  std::vector<int> global_tet;
  for (Index t = 0; t < mesh.NumTetrahedra(); t++)
  {
    if (mesh.tet_domain[t] == domain)
    {
      global_tet.push_back(static_cast<int>(t));
    }
  }
  using Local = Eigen::Matrix<Scalar, 4, 4>;
  std::vector<Local> locals(nt);
  if (exec == Execution::Serial)
  {
    for (int t = 0; t < nt; t++)
    {
      locals[t] = local(Geometry(mesh, mesh.tetrahedra[global_tet[t]]));
    }
  }
  else
  {
    // Exceptions may not cross the parallel region; record and rethrow afterwards.
    std::exception_ptr error;
#pragma omp parallel for schedule(static)
    for (int t = 0; t < nt; t++)
    {
      try
      {
        locals[t] = local(Geometry(mesh, mesh.tetrahedra[global_tet[t]]));
      }
      catch (...)
      {
#pragma omp critical
        error = error ? error : std::current_exception();
      }
    }
    if (error)
    {
      std::rethrow_exception(error);
    }
  }
  std::vector<Eigen::Triplet<Scalar>> trip;
  trip.reserve(16 * static_cast<std::size_t>(nt));
  for (int t = 0; t < nt; t++)
  {
    const auto &tet = vol.tets[t];
    for (int a = 0; a < 4; a++)
    {
      for (int b = 0; b < 4; b++)
      {
        trip.emplace_back(tet[a], tet[b], locals[t](a, b));
      }
    }
  }
  Eigen::SparseMatrix<Scalar, Eigen::RowMajor> m(vol.NumDofs(), vol.NumDofs());
  m.setFromTriplets(trip.begin(), trip.end());
  m.prune(Scalar(0));
  return m;
}

}  // namespace

SparseOperatorBlock AssembleFem(const Mesh &mesh, const MaterialModel &material, double k_ext,
                                int domain, Execution exec)
{
  const TetRule rule = TetDegree2();
  const DomainMaterial &mat = material.Get(domain);
  auto local = [&](const TetGeometry &g)
  {
    Eigen::Matrix<Complex, 4, 4> f = Eigen::Matrix<Complex, 4, 4>::Zero();
    for (int a = 0; a < 4; a++)
    {
      for (int b = 0; b < 4; b++)
      {
        f(a, b) = g.volume * g.grad[a].dot(g.grad[b]);
      }
    }
    for (std::size_t q = 0; q < rule.w.size(); q++)
    {
      const Eigen::Vector4d &l = rule.lambda[q];
      const Vec3 x = l[0] * g.p[0] + l[1] * g.p[1] + l[2] * g.p[2] + l[3] * g.p[3];
      material.CheckPositive(domain, x);
      const double w = rule.w[q] * 6.0 * g.volume;
      const double n = mat.refractivity.Value(x);
      const double k2 = k_ext * k_ext * n * n;
      const Vec3 drho = mat.density.IsConstant() ? Vec3::Zero().eval()
                                                 : mat.density.Gradient(x) / mat.density.Value(x);
      for (int a = 0; a < 4; a++)
      {
        for (int b = 0; b < 4; b++)
        {
          f(a, b) += w * (drho.dot(g.grad[b]) * l[a] - k2 * l[a] * l[b]);
        }
      }
    }
    return f;
  };
  SparseOperatorBlock block;
  block.matrix = AssembleVolume<Complex>(mesh, domain, exec, local);
  block.trial = block.test = {SpaceKind::VolumeP1, domain};
  block.label = "F";
  return block;
}

RSparse AssembleVolumeStiffness(const Mesh &mesh, int domain)
{
  return AssembleVolume<double>(mesh, domain, Execution::Serial,
                                [](const TetGeometry &g)
                                {
                                  Eigen::Matrix4d s;
                                  for (int a = 0; a < 4; a++)
                                  {
                                    for (int b = 0; b < 4; b++)
                                    {
                                      s(a, b) = g.volume * g.grad[a].dot(g.grad[b]);
                                    }
                                  }
                                  return s;
                                });
}

RSparse AssembleVolumeMass(const Mesh &mesh, int domain)
{
  return AssembleVolume<double>(mesh, domain, Execution::Serial,
                                [](const TetGeometry &g)
                                {
                                  Eigen::Matrix4d m = Eigen::Matrix4d::Constant(g.volume / 20.0);
                                  m.diagonal().array() = g.volume / 10.0;
                                  return m;
                                });
}

SurfaceLaplacian AssembleSurfaceLaplacian(const Surface &surface)
{
  std::vector<Eigen::Triplet<double>> ks, ms;
  for (Index t = 0; t < surface.NumTriangles(); t++)
  {
    const auto &tri = surface.triangles[t];
    const auto p = surface.Corners(t);
    const double area = surface.areas[t];
    const Vec3 &n = surface.normals[t];
    std::array<Vec3, 3> grad;
    for (int a = 0; a < 3; a++)
    {
      grad[a] = n.cross(p[(a + 2) % 3] - p[(a + 1) % 3]) / (2.0 * area);
    }
    for (int a = 0; a < 3; a++)
    {
      for (int b = 0; b < 3; b++)
      {
        ks.emplace_back(tri[a], tri[b], area * grad[a].dot(grad[b]));
        ms.emplace_back(tri[a], tri[b], area * (a == b ? 2.0 : 1.0) / 12.0);
      }
    }
  }
  SurfaceLaplacian lb;
  lb.stiffness.resize(surface.NumNodes(), surface.NumNodes());
  lb.mass.resize(surface.NumNodes(), surface.NumNodes());
  lb.stiffness.setFromTriplets(ks.begin(), ks.end());
  lb.mass.setFromTriplets(ms.begin(), ms.end());
  lb.stiffness.prune(0.0);
  return lb;
}

std::string ToString(RegulariserKind kind)
{
  switch (kind)
  {
    case RegulariserKind::ModifiedHelmholtz:
      return "mh";
    case RegulariserKind::ShiftedLaplace:
      return "sl";
    case RegulariserKind::Osrc:
      return "osrc";
  }
  return "?";
}

RSparse AssembleRegulariserForm(RegulariserKind kind, double kappa, const SurfaceLaplacian &lb)
{
  FEMBEM_VERIFY(kind != RegulariserKind::Osrc,
                "the OSRC regulariser has no sparse weak form; use the OSRC operator");
  if (kind == RegulariserKind::ModifiedHelmholtz)
  {
    kappa = 1.0;
  }
  FEMBEM_VERIFY(kappa > 0.0, "regulariser kappa must be positive, got ", kappa);
  RSparse s = lb.stiffness + (kappa * kappa) * lb.mass;
  return s;
}

}  // namespace fembem

// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "fembem/fem.hpp"
#include "test_helpers.hpp"

using namespace fembem;
using namespace fembem::testing;

namespace
{

Eigen::MatrixXcd Dense(const CSparse &m)
{
  return Eigen::MatrixXcd(m);
}

}  // namespace

TEST_CASE("constant coefficients give stiffness minus k^2 mass")
{
  Mesh mesh = BuildCubeMesh(3);
  MaterialModel mat;
  mat.Set(0, {ScalarField(1.3), ScalarField(2.0)});
  const double k = 2.5;
  auto f = AssembleFem(mesh, mat, k, 0);
  const Eigen::MatrixXd s(AssembleVolumeStiffness(mesh, 0));
  const Eigen::MatrixXd m(AssembleVolumeMass(mesh, 0));
  const Eigen::MatrixXcd ref = (s - k * k * 1.3 * 1.3 * m).cast<Complex>();
  CHECK((Dense(f.matrix) - ref).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(f.label == "F");
  CHECK(Eigen::MatrixXd(m).sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("static form is symmetric semi-definite with constants in the kernel")
{
  Mesh mesh = BuildCubeMesh(3);
  MaterialModel mat;
  auto f = Dense(AssembleFem(mesh, mat, 0.0, 0).matrix);
  CHECK((f - f.transpose()).norm() < 1e-12);
  CHECK((f * CVector::Ones(f.cols())).norm() < 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(f.real());
  CHECK(eig.eigenvalues().minCoeff() > -1e-12);
  CHECK(eig.eigenvalues()(1) > 1e-6);
}

TEST_CASE("patch test: linear fields are reproduced")
{
  Mesh mesh = BuildCubeMesh(4);
  MaterialModel mat;
  auto f = AssembleFem(mesh, mat, 0.0, 0).matrix;
  RestrictionMaps maps = BuildRestrictions(mesh, 0);
  CVector p(mesh.NumVertices());
  for (Index i = 0; i < mesh.NumVertices(); i++)
  {
    p[i] = 1.0 + 2.0 * mesh.vertices[i].x() - 0.5 * mesh.vertices[i].y() + mesh.vertices[i].z();
  }
  const CVector r = f * p;
  for (int i : maps.interior_dofs)
  {
    CHECK(std::abs(r[i]) < 1e-12);
  }
}

TEST_CASE("refractivity profile keeps the form symmetric, density gradients do not")
{
  Mesh mesh = BuildCubeMesh(3);
  MaterialModel mat;
  mat.Set(0, {BenchmarkRefractivityField(), ScalarField(1.0)});
  auto f = Dense(AssembleFem(mesh, mat, 4.0, 0).matrix);
  CHECK((f - f.transpose()).norm() < 1e-12 * f.norm());

  mat.Set(0, {BenchmarkRefractivityField(),
              ScalarField([](const Vec3 &x) { return 1.0 + x.x(); },
                          [](const Vec3 &) { return Vec3(1.0, 0.0, 0.0); })});
  auto g = Dense(AssembleFem(mesh, mat, 4.0, 0).matrix);
  CHECK((g - g.transpose()).norm() > 1e-3 * g.norm());

  // Finite-difference gradient fallback agrees with the analytic gradient.
  mat.Set(0, {BenchmarkRefractivityField(),
              ScalarField([](const Vec3 &x) { return 1.0 + x.x(); }, 1e-6)});
  auto h = Dense(AssembleFem(mesh, mat, 4.0, 0).matrix);
  CHECK((g - h).norm() < 1e-6 * g.norm());
}

TEST_CASE("parallel element assembly matches the serial reference")
{
  Mesh mesh = BuildCubeMesh(4);
  MaterialModel mat;
  mat.Set(0, {BenchmarkRefractivityField(), ScalarField(1.0)});
  auto a = AssembleFem(mesh, mat, 3.0, 0, Execution::Parallel).matrix;
  auto b = AssembleFem(mesh, mat, 3.0, 0, Execution::Serial).matrix;
  CHECK((Dense(a) - Dense(b)).norm() == 0.0);
}

TEST_CASE("non-positive material values are rejected")
{
  Mesh mesh = BuildCubeMesh(2);
  MaterialModel mat;
  mat.Set(0, {ScalarField(1.0), ScalarField([](const Vec3 &x) { return x.x() - 0.5; }, 1e-6)});
  CHECK_THROWS_AS(AssembleFem(mesh, mat, 1.0, 0), InvalidArgument);
}

TEST_CASE("surface Laplace-Beltrami matrices")
{
  Surface s = CubeSurface(3);
  SurfaceLaplacian lb = AssembleSurfaceLaplacian(s);
  CHECK((lb.stiffness * RVector::Ones(s.NumNodes())).norm() < 1e-12);
  CHECK(Eigen::MatrixXd(lb.mass).sum() == doctest::Approx(6.0).epsilon(1e-12));
  Eigen::MatrixXd k(lb.stiffness);
  CHECK((k - k.transpose()).norm() == 0.0);
}

TEST_CASE("Laplace-Beltrami spectrum on a sphere")
{
  const double radius = 1.5;
  Mesh ico = BuildIcosphereMesh(3, Vec3::Zero(), radius);
  SurfaceLaplacian lb = AssembleSurfaceLaplacian(ExtractSurface(ico, 0));
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(Eigen::MatrixXd(lb.stiffness),
                                                                Eigen::MatrixXd(lb.mass));
  const double mu1 = eig.eigenvalues()(1);
  CHECK(std::abs(eig.eigenvalues()(0)) < 1e-10);
  CHECK(mu1 == doctest::Approx(2.0 / (radius * radius)).epsilon(0.05));
}

TEST_CASE("regulariser forms")
{
  Surface s = CubeSurface(3);
  SurfaceLaplacian lb = AssembleSurfaceLaplacian(s);
  Eigen::MatrixXd mh(AssembleRegulariserForm(RegulariserKind::ModifiedHelmholtz, 7.0, lb));
  Eigen::MatrixXd sl1(AssembleRegulariserForm(RegulariserKind::ShiftedLaplace, 1.0, lb));
  CHECK((mh - sl1).norm() == 0.0);
  for (double kappa : {0.5, 1.0, 4.0})
  {
    Eigen::MatrixXd sl(AssembleRegulariserForm(RegulariserKind::ShiftedLaplace, kappa, lb));
    CHECK((sl - sl.transpose()).norm() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sl);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
  CHECK_THROWS_AS(AssembleRegulariserForm(RegulariserKind::ShiftedLaplace, 0.0, lb),
                  InvalidArgument);
}

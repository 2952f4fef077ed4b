// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <doctest.h>

#include "fembem/formulations.hpp"
#include "fembem/linsolve.hpp"

using namespace fembem;

namespace
{

CMatrix RandomMatrix(Index n, std::mt19937 &rng)
{
  std::normal_distribution<double> g;
  CMatrix m(n, n);
  for (Index j = 0; j < n; j++)
  {
    for (Index i = 0; i < n; i++)
    {
      m(i, j) = Complex(g(rng), g(rng));
    }
  }
  return m;
}

CVector Ones(Index n)
{
  return CVector::Ones(n);
}

// 1D Helmholtz-like tridiagonal matrix with a complex shift.
CSparse Tridiagonal(Index n)
{
  std::vector<Eigen::Triplet<Complex>> t;
  for (Index i = 0; i < n; i++)
  {
    t.emplace_back(i, i, Complex(2.2, 0.1));
    if (i > 0)
    {
      t.emplace_back(i, i - 1, -1.0);
    }
    if (i + 1 < n)
    {
      t.emplace_back(i, i + 1, -1.0);
    }
  }
  CSparse m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

TEST_CASE("GMRES on trivial systems")
{
  const GmresOptions opts;
  SolveReport r;
  const DenseOperator id(CMatrix::Identity(5, 5));
  CVector x = Gmres(id, Ones(5), nullptr, opts, r);
  CHECK(r.converged);
  CHECK(r.iterations == 1);
  CHECK((x - Ones(5)).norm() < 1e-12);

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  x = Gmres(DenseOperator(d), Ones(2), nullptr, opts, r);
  CHECK(r.converged);
  CHECK(r.iterations <= 2);
  CHECK(std::abs(x[1] - 0.5) < 1e-10);

  x = Gmres(id, CVector::Zero(5), nullptr, opts, r);
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  CHECK(x.norm() == 0.0);

  GmresOptions bad;
  bad.tol = 0.0;
  CHECK_THROWS_AS(Gmres(id, Ones(5), nullptr, bad, r), InvalidArgument);
  CHECK_THROWS_AS(Gmres(id, Ones(4), nullptr, opts, r), InvalidArgument);
}

TEST_CASE("GMRES residual history and iteration bound")
{
  std::mt19937 rng(3);
  const Index n = 40;
  const CMatrix a = RandomMatrix(n, rng) + 8.0 * CMatrix::Identity(n, n);
  const CVector b = RandomMatrix(n, rng).col(0);
  GmresOptions opts;
  opts.tol = 1e-10;
  SolveReport r;
  const CVector x = Gmres(DenseOperator(a), b, nullptr, opts, r);
  CHECK(r.converged);
  CHECK(r.iterations <= n);
  REQUIRE(r.residuals.size() == static_cast<std::size_t>(r.iterations) + 1);
  CHECK(r.residuals.front() == 1.0);
  for (std::size_t i = 1; i < r.residuals.size(); i++)
  {
    CHECK(r.residuals[i] <= r.residuals[i - 1] * (1.0 + 1e-12));
  }
  CHECK((a * x - b).norm() <= 1e-9 * b.norm());

  // An iteration cap is honoured and reported as non-convergence.
  opts.max_iter = 3;
  Gmres(DenseOperator(a), b, nullptr, opts, r);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
}

TEST_CASE("direct solve")
{
  std::mt19937 rng(5);
  const CMatrix a = RandomMatrix(50, rng);
  const CVector b = RandomMatrix(50, rng).col(0);
  SolveReport r;
  const CVector x = DirectSolve(a, b, &r);
  CHECK(r.relative_residual < 1e-12);
  CHECK((a * x - b).norm() < 1e-12 * b.norm() * a.norm());
  REQUIRE(r.rcond.has_value());
  CHECK(*r.rcond > 0.0);

  CMatrix s = a;
  s.col(3) = s.col(7);
  CHECK_THROWS_AS(DirectSolve(s, b), NumericalError);

  CMatrix ill = CMatrix::Identity(4, 4);
  ill(3, 3) = 1e-9;
  DirectSolve(ill, Ones(4), &r);
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("condition numbers")
{
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 10.0;
  CHECK(ConditionNumber(d) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(ConditionNumber(d, CondMethod::Lanczos) == doctest::Approx(10.0).epsilon(1e-10));

  std::mt19937 rng(9);
  const CMatrix a = RandomMatrix(120, rng);
  const double svd = ConditionNumber(a, CondMethod::Svd);
  CHECK(ConditionNumber(a, CondMethod::Lanczos) == doctest::Approx(svd).epsilon(1e-8));
  CHECK(ConditionNumber(DenseOperator(a)) == doctest::Approx(svd).epsilon(1e-12));

  CMatrix sing = CMatrix::Identity(3, 3);
  sing(2, 2) = 0.0;
  CHECK(std::isinf(ConditionNumber(sing)));
  CHECK(ParseCondMethod("lanczos") == CondMethod::Lanczos);
  CHECK_THROWS_AS(ParseCondMethod("power"), InvalidArgument);
}

TEST_CASE("incomplete LU")
{
  const CSparse a = Tridiagonal(60);
  const CVector b = Ones(60);
  const IluFactorization exact(a, 0.0);
  const CVector x = exact.Apply(b);
  CHECK((a * x - b).norm() < 1e-12 * b.norm());

  SolveReport r;
  Gmres(SparseOperator(a), b, &exact, GmresOptions{}, r);
  CHECK(r.converged);
  CHECK(r.iterations == 1);

  const IluFactorization loose(a, 0.5);
  CHECK(loose.NonZeros() <= exact.NonZeros());
  Gmres(SparseOperator(a), b, &loose, GmresOptions{}, r);
  CHECK(r.converged);

  // A zero leading diagonal needs a column swap.
  std::vector<Eigen::Triplet<Complex>> t = {{0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 1.0},
                                            {2, 2, 3.0}};
  CSparse p(3, 3);
  p.setFromTriplets(t.begin(), t.end());
  const IluFactorization pf(p, 0.0);
  CHECK(pf.NumPivotSwaps() >= 1);
  CHECK((p * pf.Apply(Ones(3)) - Ones(3)).norm() < 1e-12);
}

TEST_CASE("mass inverse")
{
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < 5; i++)
  {
    t.emplace_back(i, i, 2.0 + i);
  }
  RSparse m(5, 5);
  m.setFromTriplets(t.begin(), t.end());
  const MassInverse inv(m);
  const CVector y = inv.Apply(Ones(5));
  CHECK(std::abs(y[3] - 0.2) < 1e-14);
  CHECK_THROWS_AS(MassInverse(RSparse(3, 4)), InvalidArgument);
}

TEST_CASE("preconditioner presets")
{
  CHECK(PreconditionerRecipe::Preset("none").pressure == PrecondChoice::None);
  CHECK(PreconditionerRecipe::Preset("mass").surface == PrecondChoice::Mass);
  const auto r = PreconditionerRecipe::Preset("ilu_inner+osrc_surface");
  CHECK(r.pressure == PrecondChoice::IluInnerOsrcSurface);
  CHECK(r.surface == PrecondChoice::Auto);
  CHECK(r.drop_tol == 1e-4);
  CHECK_THROWS_AS(PreconditionerRecipe::Preset("jacobi"), InvalidArgument);

  const Mesh mesh = BuildCubeMesh(2);
  const MaterialModel materials;
  const IncidentWave wave{Vec3(1.0, 0.0, 0.0), 2.0};
  FormulationOptions o;
  o.theta_space = SpaceKind::SurfaceP0;
  const FormulationSystem p0 = BuildStabilised(Scene{mesh, materials, wave}, o);
  CHECK_THROWS_AS(BuildPreconditioner(PreconditionerRecipe::Preset("mass"), p0),
                  InvalidArgument);
  CHECK_NOTHROW(BuildPreconditioner(PreconditionerRecipe::Preset("none"), p0));

  // Every preset on the P1 system is a square operator of the system size that GMRES accepts.
  o.theta_space = SpaceKind::SurfaceP1;
  const FormulationSystem p1 = BuildStabilised(Scene{mesh, materials, wave}, o);
  for (const char *name : {"none", "mass", "osrc", "ilu_all", "ilu_inner+osrc_surface"})
  {
    CAPTURE(name);
    const auto pc = BuildPreconditioner(PreconditionerRecipe::Preset(name), p1);
    CHECK(pc->Rows() == p1.Size());
    SolveReport rep;
    Gmres(p1.lhs, p1.rhs, pc.get(), GmresOptions{}, rep);
    CHECK(rep.converged);
  }
}

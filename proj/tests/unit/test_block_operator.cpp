// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <doctest.h>

#include "fembem/block_operator.hpp"

using namespace fembem;

namespace
{

CMatrix RandomMatrix(Index r, Index c, std::mt19937 &rng)
{
  std::normal_distribution<double> g;
  CMatrix m(r, c);
  for (Index j = 0; j < c; j++)
  {
    for (Index i = 0; i < r; i++)
    {
      m(i, j) = Complex(g(rng), g(rng));
    }
  }
  return m;
}

CSparse RandomSparse(Index r, Index c, std::mt19937 &rng)
{
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Eigen::Triplet<Complex>> t;
  for (Index i = 0; i < r; i++)
  {
    t.emplace_back(i, i % c, Complex(u(rng), u(rng)));
    t.emplace_back(i, (3 * i + 1) % c, Complex(u(rng), 0.0));
  }
  CSparse m(r, c);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

CVector RandomVector(Index n, std::mt19937 &rng)
{
  return RandomMatrix(n, 1, rng).col(0);
}

}  // namespace

TEST_CASE("composite operators agree with their dense form")
{
  std::mt19937 rng(7);
  const CMatrix a = RandomMatrix(6, 5, rng);
  const CSparse s = RandomSparse(5, 4, rng);
  const CMatrix b = RandomMatrix(6, 5, rng);
  const OperatorPtr sum = MakeSum({{2.0, MakeDense(a)}, {Complex(0.0, -1.0), MakeDense(b)}});
  const OperatorPtr prod = MakeProduct({sum, MakeSparse(s)});
  const CMatrix ref = (2.0 * a - Complex(0.0, 1.0) * b) * CMatrix(s);
  CHECK((prod->ToDense() - ref).norm() <= 1e-12 * ref.norm());

  const CVector x = RandomVector(4, rng);
  CHECK((prod->Apply(x) - ref * x).norm() <= 1e-12 * (ref * x).norm());
  const CMatrix xs = RandomMatrix(4, 3, rng);
  CHECK((prod->ApplyMatrix(xs) - ref * xs).norm() <= 1e-12 * (ref * xs).norm());
  CHECK((Scale(3.0, MakeDense(a))->ToDense() - 3.0 * a).norm() <= 1e-12 * a.norm());
  CHECK_THROWS_AS(MakeProduct({MakeDense(a), MakeDense(a)}), InvalidArgument);
}

TEST_CASE("block operator apply matches its dense form")
{
  std::mt19937 rng(11);
  const std::vector<SpaceTag> layout = {{SpaceKind::VolumeP1, 0}, {SpaceKind::SurfaceP1, 0},
                                        {SpaceKind::SurfaceP1, 0}};
  BlockOperator op(layout, {7, 4, 4});
  op.Set(0, 0, MakeSparse(RandomSparse(7, 7, rng)));
  op.Set(0, 1, MakeDense(RandomMatrix(7, 4, rng)));
  op.Set(1, 0, MakeSparse(RandomSparse(4, 7, rng)));
  op.Set(1, 1, MakeDense(RandomMatrix(4, 4, rng)));
  op.Set(2, 2, MakeDense(RandomMatrix(4, 4, rng)));
  op.Set(1, 2, MakeDense(RandomMatrix(4, 4, rng)));

  const CMatrix dense = op.ToDense();
  REQUIRE(dense.rows() == 15);
  CHECK(dense.block(0, 11, 7, 4).norm() == 0.0);
  const CVector x = RandomVector(15, rng);
  CHECK((op.Apply(x) - dense * x).norm() <= 1e-10 * (dense * x).norm());

  const BlockOperator p = op.PermuteRows({0, 2, 1}, {-1.0, 1.0, 1.0});
  const CMatrix pd = p.ToDense();
  CHECK((pd.topRows(7) + dense.topRows(7)).norm() == 0.0);
  CHECK((pd.middleRows(7, 4) - dense.bottomRows(4)).norm() == 0.0);
  CHECK((pd.bottomRows(4) - dense.middleRows(7, 4)).norm() == 0.0);
  CHECK_THROWS_AS(op.PermuteRows({1, 0, 2}, {1.0, 1.0, 1.0}), InvalidArgument);

  CHECK_THROWS_AS(op.Set(0, 1, MakeDense(RandomMatrix(4, 4, rng))), InvalidArgument);
  CHECK_THROWS_AS(op.Apply(RandomVector(3, rng)), InvalidArgument);
}

// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/quadrature.hpp"

#include <cmath>

namespace fembem
{

GaussRule GaussLegendre01(int order)
{
  FEMBEM_VERIFY(order >= 1, "quadrature order must be >= 1, got ", order);
  GaussRule rule;
  rule.x.resize(order);
  rule.w.resize(order);
  for (int i = 0; i < (order + 1) / 2; i++)
  {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double z = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; it++)
    {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= order; j++)
      {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15)
      {
        break;
      }
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.x[i] = 0.5 * (1.0 - z);
    rule.x[order - 1 - i] = 0.5 * (1.0 + z);
    rule.w[i] = rule.w[order - 1 - i] = 0.5 * w;
  }
  return rule;
}

TriangleRule TriangleGauss(int order)
{
  const GaussRule g = GaussLegendre01(order);
  TriangleRule rule;
  for (int i = 0; i < order; i++)
  {
    for (int j = 0; j < order; j++)
    {
      rule.x.emplace_back(g.x[i], g.x[i] * g.x[j]);
      rule.w.push_back(g.w[i] * g.w[j] * g.x[i]);
    }
  }
  return rule;
}

PairRule SauterSchwabRule(PairRelation relation, int order)
{
  const GaussRule g = GaussLegendre01(order);
  PairRule rule;
  using V2 = Eigen::Vector2d;
  auto push = [&rule](const V2 &x, const V2 &y, double w)
  {
    rule.x.push_back(x);
    rule.y.push_back(y);
    rule.w.push_back(w);
  };
  if (relation == PairRelation::Regular)
  {
    const TriangleRule t = TriangleGauss(order);
    for (std::size_t i = 0; i < t.x.size(); i++)
    {
      for (std::size_t j = 0; j < t.x.size(); j++)
      {
        push(t.x[i], t.x[j], t.w[i] * t.w[j]);
      }
    }
    return rule;
  }
  for (int a = 0; a < order; a++)
  {
    for (int b = 0; b < order; b++)
    {
      for (int c = 0; c < order; c++)
      {
        for (int d = 0; d < order; d++)
        {
          const double xi = g.x[a], e1 = g.x[b], e2 = g.x[c], e3 = g.x[d];
          const double w = g.w[a] * g.w[b] * g.w[c] * g.w[d];
          switch (relation)
          {
            case PairRelation::Coincident:
            {
              const double wj = w * xi * xi * xi * e1 * e1 * e2;
              push(V2(xi, xi * (1 - e1 + e1 * e2)), V2(xi * (1 - e1 * e2 * e3), xi * (1 - e1)),
                   wj);
              push(V2(xi * (1 - e1 * e2 * e3), xi * (1 - e1)), V2(xi, xi * (1 - e1 + e1 * e2)),
                   wj);
              push(V2(xi, xi * e1 * (1 - e2 + e2 * e3)), V2(xi * (1 - e1 * e2), xi * e1 * (1 - e2)),
                   wj);
              push(V2(xi * (1 - e1 * e2), xi * e1 * (1 - e2)), V2(xi, xi * e1 * (1 - e2 + e2 * e3)),
                   wj);
              push(V2(xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3)),
                   V2(xi, xi * e1 * (1 - e2)), wj);
              push(V2(xi, xi * e1 * (1 - e2)),
                   V2(xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3)), wj);
              break;
            }
            case PairRelation::Edge:
            {
              const double w1 = w * xi * xi * xi * e1 * e1;
              const double w2 = w1 * e2;
              push(V2(xi, xi * e1 * e3), V2(xi * (1 - e1 * e2), xi * e1 * (1 - e2)), w1);
              push(V2(xi, xi * e1), V2(xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3)), w2);
              push(V2(xi * (1 - e1 * e2), xi * e1 * (1 - e2)), V2(xi, xi * e1 * e2 * e3), w2);
              push(V2(xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3)), V2(xi, xi * e1), w2);
              push(V2(xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3)), V2(xi, xi * e1 * e2),
                   w2);
              break;
            }
            case PairRelation::Vertex:
            {
              const double wj = w * xi * xi * xi * e2;
              push(V2(xi, xi * e1), V2(xi * e2, xi * e2 * e3), wj);
              push(V2(xi * e2, xi * e2 * e3), V2(xi, xi * e1), wj);
              break;
            }
            default:
              break;
          }
        }
      }
    }
  }
  return rule;
}

PairRule SymmetrizedRule(const PairRule &rule)
{
  PairRule out;
  const std::size_t n = rule.w.size();
  out.x = rule.x;
  out.y = rule.y;
  out.x.insert(out.x.end(), rule.y.begin(), rule.y.end());
  out.y.insert(out.y.end(), rule.x.begin(), rule.x.end());
  out.w.reserve(2 * n);
  for (int copy = 0; copy < 2; copy++)
  {
    for (double w : rule.w)
    {
      out.w.push_back(0.5 * w);
    }
  }
  return out;
}

TetRule TetDegree2()
{
  constexpr double a = 0.5854101966249685, b = 0.1381966011250105;
  TetRule rule;
  rule.lambda = {Eigen::Vector4d(a, b, b, b), Eigen::Vector4d(b, a, b, b),
                 Eigen::Vector4d(b, b, a, b), Eigen::Vector4d(b, b, b, a)};
  rule.w.assign(4, 1.0 / 24.0);
  return rule;
}

}  // namespace fembem

// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/problem.hpp"

#include <algorithm>
#include <cmath>

namespace fembem
{

ExteriorMedium ExteriorMedium::FromWavenumber(double k, double rho, double c)
{
  ExteriorMedium m;
  m.rho = rho;
  m.c = c;
  m.frequency = k * c / (2.0 * pi);
  m.Validate();
  return m;
}

void ExteriorMedium::Validate() const
{
  FEMBEM_VERIFY(rho > 0.0, "exterior density must be positive, got ", rho);
  FEMBEM_VERIFY(c > 0.0, "exterior wave speed must be positive, got ", c);
  FEMBEM_VERIFY(frequency > 0.0, "frequency must be positive, got ", frequency);
}

ScalarField::ScalarField(double constant)
  : value_([constant](const Vec3 &) { return constant; }),
    gradient_([](const Vec3 &) { return Vec3::Zero().eval(); }), constant_(true)
{
}

ScalarField::ScalarField(ValueFn value, GradientFn gradient)
  : value_(std::move(value)), gradient_(std::move(gradient))
{
}

ScalarField::ScalarField(ValueFn value, double fd_step)
  : value_(std::move(value)), fd_step_(fd_step)
{
  FEMBEM_VERIFY(fd_step > 0.0, "finite-difference step must be positive");
}

Vec3 ScalarField::Gradient(const Vec3 &x) const
{
  if (gradient_)
  {
    return gradient_(x);
  }
  Vec3 g;
  for (int d = 0; d < 3; d++)
  {
    Vec3 e = Vec3::Zero();
    e[d] = fd_step_;
    g[d] = (value_(x + e) - value_(x - e)) / (2.0 * fd_step_);
  }
  return g;
}

const DomainMaterial &MaterialModel::Get(int domain) const
{
  auto it = materials_.find(domain);
  return it == materials_.end() ? default_ : it->second;
}

void MaterialModel::CheckPositive(int domain, const Vec3 &x) const
{
  const auto &m = Get(domain);
  const double n = m.refractivity.Value(x), rho = m.density.Value(x);
  FEMBEM_VERIFY(n > 0.0, "refractivity ", n, " is not positive at (", x.transpose(),
                ") in domain ", domain);
  FEMBEM_VERIFY(rho > 0.0, "density ", rho, " is not positive at (", x.transpose(),
                ") in domain ", domain);
}

Complex IncidentWave::Value(const Vec3 &x) const
{
  return amplitude * std::exp(iu * k * direction.dot(x));
}

Eigen::Vector3cd IncidentWave::Gradient(const Vec3 &x) const
{
  return (iu * k * Value(x)) * direction.cast<Complex>();
}

Complex IncidentWave::NormalDerivative(const Vec3 &x, const Vec3 &n) const
{
  return iu * k * direction.dot(n) * Value(x);
}

void IncidentWave::Validate() const
{
  FEMBEM_VERIFY(std::abs(direction.norm() - 1.0) < 1e-12, "incident direction must be a "
                "unit vector, got norm ", direction.norm());
  FEMBEM_VERIFY(k > 0.0, "incident wavenumber must be positive");
}

std::pair<CVector, CVector> PlaneWaveTraces(const IncidentWave &wave,
                                            const std::vector<Vec3> &points,
                                            const std::vector<Vec3> &normals)
{
  wave.Validate();
  FEMBEM_VERIFY(points.size() == normals.size(), "points and normals differ in length");
  const Index n = static_cast<Index>(points.size());
  CVector dir(n), neu(n);
  for (Index i = 0; i < n; i++)
  {
    dir[i] = wave.Value(points[i]);
    neu[i] = wave.NormalDerivative(points[i], normals[i]);
  }
  return {dir, neu};
}

namespace
{

const double kRefractivityScale = 1.0 - 0.5 * std::exp(-0.25);

}  // namespace

double BenchmarkRefractivity(const Vec3 &x)
{
  const double s = (x.array() - 0.5).abs().maxCoeff();
  return (1.0 - 0.5 * std::exp(-s * s)) / kRefractivityScale;
}

Vec3 BenchmarkRefractivityGradient(const Vec3 &x)
{
  Eigen::Index i;
  const double s = (x.array() - 0.5).abs().maxCoeff(&i);
  Vec3 g = Vec3::Zero();
  if (s > 0.0)
  {
    g[i] = std::copysign(s * std::exp(-s * s) / kRefractivityScale, x[i] - 0.5);
  }
  return g;
}

ScalarField BenchmarkRefractivityField()
{
  return ScalarField(BenchmarkRefractivity, BenchmarkRefractivityGradient);
}

std::vector<double> CubeResonanceWavenumbers(double max_k)
{
  std::vector<int> sums;
  const int mmax = static_cast<int>(std::floor(max_k / pi)) + 1;
  for (int a = 1; a <= mmax; a++)
  {
    for (int b = 1; b <= mmax; b++)
    {
      for (int c = 1; c <= mmax; c++)
      {
        const int s = a * a + b * b + c * c;
        if (pi * std::sqrt(static_cast<double>(s)) <= max_k)
        {
          sums.push_back(s);
        }
      }
    }
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  std::vector<double> k;
  k.reserve(sums.size());
  for (int s : sums)
  {
    k.push_back(pi * std::sqrt(static_cast<double>(s)));
  }
  return k;
}

}  // namespace fembem

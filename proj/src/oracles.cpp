// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "fembem/bem.hpp"

namespace fembem
{

std::vector<double> SphericalBesselJ(int l_max, double x)
{
  FEMBEM_VERIFY(l_max >= 0 && x >= 0.0, "spherical Bessel j needs l_max >= 0 and x >= 0");
  std::vector<double> j(l_max + 1, 0.0);
  if (x == 0.0)
  {
    j[0] = 1.0;
    return j;
  }

  // Miller's downward recurrence, normalized with j_0 or j_1.
  const int start = l_max + 20 + static_cast<int>(std::ceil(x));
  std::vector<double> f(start + 2, 0.0);
  f[start] = 1e-300;
  for (int l = start; l >= 1; l--)
  {
    f[l - 1] = (2 * l + 1) / x * f[l] - f[l + 1];
    if (std::abs(f[l - 1]) > 1e250)
    {
      for (int m = l - 1; m <= start; m++)
      {
        f[m] *= 1e-250;
      }
    }
  }
  const double j0 = std::sin(x) / x;
  const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / f[0] : j1 / f[1];
  for (int l = 0; l <= l_max; l++)
  {
    j[l] = f[l] * scale;
  }
  return j;
}

std::vector<double> SphericalBesselY(int l_max, double x)
{
  FEMBEM_VERIFY(l_max >= 0 && x > 0.0, "spherical Bessel y needs l_max >= 0 and x > 0");
  std::vector<double> y(l_max + 1);
  y[0] = -std::cos(x) / x;
  if (l_max >= 1)
  {
    y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  }
  for (int l = 1; l < l_max; l++)
  {
    y[l + 1] = (2 * l + 1) / x * y[l] - y[l - 1];
  }
  return y;
}

namespace
{

// Values and derivatives of j_l and h_l = j_l + i y_l.
struct BesselTable
{
  std::vector<double> j, dj;
  std::vector<Complex> h, dh;
};

template <typename T>
std::vector<T> Derivative(const std::vector<T> &f, double x)
{
  std::vector<T> d(f.size());
  d[0] = f.size() > 1 ? -f[1] : T(0.0);
  for (std::size_t l = 1; l < f.size(); l++)
  {
    d[l] = f[l - 1] - static_cast<double>(l + 1) / x * f[l];
  }
  return d;
}

BesselTable Tabulate(int l_max, double x, bool hankel)
{
  // One extra order so that the derivative of the highest one is available.
  BesselTable t;
  t.j = SphericalBesselJ(l_max + 1, x);
  t.dj = Derivative(t.j, x);
  if (hankel)
  {
    const std::vector<double> y = SphericalBesselY(l_max + 1, x);
    t.h.resize(l_max + 2);
    for (int l = 0; l <= l_max + 1; l++)
    {
      t.h[l] = Complex(t.j[l], y[l]);
    }
    t.dh = Derivative(t.h, x);
  }
  return t;
}

std::vector<double> Legendre(int l_max, double c)
{
  std::vector<double> p(l_max + 1);
  p[0] = 1.0;
  if (l_max >= 1)
  {
    p[1] = c;
  }
  for (int l = 1; l < l_max; l++)
  {
    p[l + 1] = ((2 * l + 1) * c * p[l] - l * p[l - 1]) / (l + 1);
  }
  return p;
}

Complex PowI(int l)
{
  static const Complex table[4] = {1.0, iu, -1.0, -iu};
  return table[l % 4];
}

}  // namespace

SphereTransmissionOracle::SphereTransmissionOracle(double radius, double k_ext, double k_int,
                                                   double density_ratio, const Vec3 &direction,
                                                   int l_max)
  : radius_(radius), k_ext_(k_ext), k_int_(k_int), density_ratio_(density_ratio),
    direction_(direction), l_max_(l_max)
{
  FEMBEM_VERIFY(radius > 0.0 && k_ext > 0.0 && k_int > 0.0 && density_ratio > 0.0,
                "sphere oracle needs positive radius, wavenumbers and density ratio");
  FEMBEM_VERIFY(std::abs(direction.norm() - 1.0) < 1e-12, "incident direction must be a unit ",
                "vector, got norm ", direction.norm());
  if (l_max_ <= 0)
  {
    l_max_ = static_cast<int>(std::ceil(std::max(k_ext, k_int) * radius)) + 12;
  }
  const BesselTable ext = Tabulate(l_max_, k_ext * radius, true);
  const BesselTable in = Tabulate(l_max_, k_int * radius, false);
  a_.resize(l_max_ + 1);
  b_.resize(l_max_ + 1);
  for (int l = 0; l <= l_max_; l++)
  {
    // B j_l(k_i a) - A h_l(k a) = j_l(k a)
    // B k_i j_l'(k_i a) - r k A h_l'(k a) = r k j_l'(k a)
    Eigen::Matrix2cd m;
    m << in.j[l], -ext.h[l], k_int * in.dj[l], -density_ratio * k_ext * ext.dh[l];
    const Eigen::Vector2cd rhs(ext.j[l], density_ratio * k_ext * ext.dj[l]);
    const Eigen::Vector2cd sol = m.partialPivLu().solve(rhs);
    b_[l] = sol[0];
    a_[l] = sol[1];
  }
  if (TruncationRatio() >= 1e-10)
  {
    throw NumericalError(detail::Concat("sphere series truncated at l_max = ", l_max_,
                                        " has not converged (ratio ", TruncationRatio(), ")"));
  }
}

double SphereTransmissionOracle::TruncationRatio() const
{
  double top = 0.0;
  for (int l = 0; l <= l_max_; l++)
  {
    top = std::max(top, (2 * l + 1) * std::abs(a_[l]));
  }
  const double last = (2 * l_max_ + 1) * std::abs(a_[l_max_]);
  // A numerically transparent sphere has nothing to truncate.
  return top > 1e-14 ? last / top : 0.0;
}

Complex SphereTransmissionOracle::ScatteredField(const Vec3 &x) const
{
  const double r = x.norm();
  FEMBEM_VERIFY(r >= radius_, "scattered field is defined outside the sphere only");
  const BesselTable t = Tabulate(l_max_, k_ext_ * r, true);
  const std::vector<double> p = Legendre(l_max_, direction_.dot(x) / r);
  Complex s = 0.0;
  for (int l = 0; l <= l_max_; l++)
  {
    s += (2.0 * l + 1.0) * PowI(l) * a_[l] * t.h[l] * p[l];
  }
  return s;
}

Complex SphereTransmissionOracle::ScatteredNormalDerivative(const Vec3 &x) const
{
  const double r = x.norm();
  FEMBEM_VERIFY(r > 0.0, "normal derivative needs a point away from the center");
  const BesselTable t = Tabulate(l_max_, k_ext_ * r, true);
  const std::vector<double> p = Legendre(l_max_, direction_.dot(x) / r);
  Complex s = 0.0;
  for (int l = 0; l <= l_max_; l++)
  {
    s += (2.0 * l + 1.0) * PowI(l) * a_[l] * k_ext_ * t.dh[l] * p[l];
  }
  return s;
}

Complex SphereTransmissionOracle::Field(const Vec3 &x) const
{
  const double r = x.norm();
  if (r >= radius_)
  {
    return std::exp(iu * k_ext_ * direction_.dot(x)) + ScatteredField(x);
  }
  const std::vector<double> j = SphericalBesselJ(l_max_, k_int_ * r);
  const std::vector<double> p = Legendre(l_max_, r > 0.0 ? direction_.dot(x) / r : 1.0);
  Complex s = 0.0;
  for (int l = 0; l <= l_max_; l++)
  {
    s += (2.0 * l + 1.0) * PowI(l) * b_[l] * j[l] * p[l];
  }
  return s;
}

Complex PointSource::Value(const Vec3 &x) const
{
  return Green(x, location, k);
}

Eigen::Vector3cd PointSource::Gradient(const Vec3 &x) const
{
  const Vec3 d = x - location;
  const double r = d.norm();
  FEMBEM_VERIFY(r > 0.0, "point source evaluated at its own location");
  return (Green(x, location, k) * (iu * k - 1.0 / r) / r) * d.cast<Complex>();
}

Complex PointSource::NormalDerivative(const Vec3 &x, const Vec3 &n) const
{
  const Eigen::Vector3cd g = Gradient(x);
  return g[0] * n[0] + g[1] * n[1] + g[2] * n[2];
}

}  // namespace fembem

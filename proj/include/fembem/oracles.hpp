// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_ORACLES_HPP
#define FEMBEM_ORACLES_HPP

#include <vector>

#include "fembem/common.hpp"

namespace fembem
{

// Spherical Bessel functions j_l(x) and y_l(x) for l = 0..l_max.
std::vector<double> SphericalBesselJ(int l_max, double x);
std::vector<double> SphericalBesselY(int l_max, double x);

//
// Plane wave scattering by a homogeneous penetrable sphere centered at the origin, as a
// series in spherical harmonics. Pressure and its normal derivative divided by the density
// are continuous across r = a.
//
class SphereTransmissionOracle
{
public:
  // l_max <= 0 selects ceil(k a) + 12 with the larger of the two wavenumbers.
  SphereTransmissionOracle(double radius, double k_ext, double k_int, double density_ratio,
                           const Vec3 &direction = Vec3(1.0, 0.0, 0.0), int l_max = 0);

  // Total field; points with r < a are interior.
  Complex Field(const Vec3 &x) const;
  Complex ScatteredField(const Vec3 &x) const;

  // Exterior normal derivative of the scattered field at a point of the sphere.
  Complex ScatteredNormalDerivative(const Vec3 &x) const;

  int MaxOrder() const { return l_max_; }
  const std::vector<Complex> &ScatteringCoefficients() const { return a_; }
  const std::vector<Complex> &InteriorCoefficients() const { return b_; }

  // Largest weighted coefficient at l_max relative to the largest one over all orders.
  double TruncationRatio() const;

private:
  double radius_, k_ext_, k_int_, density_ratio_;
  Vec3 direction_;
  int l_max_;
  std::vector<Complex> a_, b_;
};

// Radiating point source G(x, y) with the source y inside the scatterer.
struct PointSource
{
  Vec3 location = Vec3::Zero();
  double k = 1.0;

  Complex Value(const Vec3 &x) const;
  Eigen::Vector3cd Gradient(const Vec3 &x) const;
  Complex NormalDerivative(const Vec3 &x, const Vec3 &n) const;
};

}  // namespace fembem

#endif  // FEMBEM_ORACLES_HPP

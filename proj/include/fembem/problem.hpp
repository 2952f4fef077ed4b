// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_PROBLEM_HPP
#define FEMBEM_PROBLEM_HPP

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "fembem/common.hpp"

namespace fembem
{

struct ExteriorMedium
{
  double rho = 1.0;
  double c = 1.0;
  double frequency = 1.0 / (2.0 * pi);

  double Wavenumber() const { return 2.0 * pi * frequency / c; }

  // Medium with the given wavenumber (frequency chosen accordingly).
  static ExteriorMedium FromWavenumber(double k, double rho = 1.0, double c = 1.0);
  void Validate() const;
};

// Real scalar field on a domain with its gradient. When constructed from a value alone,
// the gradient uses central differences with the given step.
class ScalarField
{
public:
  using ValueFn = std::function<double(const Vec3 &)>;
  using GradientFn = std::function<Vec3(const Vec3 &)>;

  ScalarField() : ScalarField(1.0) {}
  explicit ScalarField(double constant);
  ScalarField(ValueFn value, GradientFn gradient);
  ScalarField(ValueFn value, double fd_step);

  double Value(const Vec3 &x) const { return value_(x); }
  Vec3 Gradient(const Vec3 &x) const;
  bool IsConstant() const { return constant_; }

private:
  ValueFn value_;
  GradientFn gradient_;
  double fd_step_ = 0.0;
  bool constant_ = false;
};

struct DomainMaterial
{
  ScalarField refractivity;
  ScalarField density;
};

// Interior material of each domain; domains without an entry are homogeneous with
// n = 1 and the exterior density.
class MaterialModel
{
public:
  void Set(int domain, DomainMaterial material) { materials_[domain] = std::move(material); }
  const DomainMaterial &Get(int domain) const;

  // Throws InvalidArgument if n or rho are non-positive at the given point.
  void CheckPositive(int domain, const Vec3 &x) const;

private:
  std::map<int, DomainMaterial> materials_;
  DomainMaterial default_;
};

struct IncidentWave
{
  Vec3 direction = Vec3(1.0, 0.0, 0.0);
  double k = 1.0;
  Complex amplitude = 1.0;

  Complex Value(const Vec3 &x) const;
  Eigen::Vector3cd Gradient(const Vec3 &x) const;
  Complex NormalDerivative(const Vec3 &x, const Vec3 &n) const;
  void Validate() const;
};

// Dirichlet and Neumann traces of the plane wave at the given points and unit normals.
std::pair<CVector, CVector> PlaneWaveTraces(const IncidentWave &wave,
                                            const std::vector<Vec3> &points,
                                            const std::vector<Vec3> &normals);

// Refractivity profile of the cube benchmark, n = 1 at the corners, smallest at the center.
double BenchmarkRefractivity(const Vec3 &x);
Vec3 BenchmarkRefractivityGradient(const Vec3 &x);
ScalarField BenchmarkRefractivityField();

// Interior Dirichlet eigen-wavenumbers pi * |m| of the unit cube up to max_k.
std::vector<double> CubeResonanceWavenumbers(double max_k);

}  // namespace fembem

#endif  // FEMBEM_PROBLEM_HPP

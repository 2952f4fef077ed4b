// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_OSRC_HPP
#define FEMBEM_OSRC_HPP

#include <memory>
#include <vector>

#include "fembem/common.hpp"
#include "fembem/fem.hpp"
#include "fembem/mesh.hpp"

namespace fembem
{

struct OsrcConfig
{
  int pade_order = 2;
  double branch_angle = pi / 3.0;

  // Non-positive values select the defaults: damping 0.4 (k L)^(-2/3), and L the radius of
  // the sphere circumscribing the bounding box of the surface.
  double damping = 0.0;
  double characteristic_length = 0.0;

  void Validate() const;
};

double DefaultDamping(double k, double length);

// Radius of the sphere circumscribing the axis-aligned bounding box of the surface.
double BoundingBoxCircumradius(const Surface &surface);

// Rotated-branch Pade approximant R(z) = c0 + sum_j a_j z / (1 + b_j z) of sqrt(1 + z).
struct PadeCoefficients
{
  Complex c0;
  std::vector<Complex> a, b;

  Complex Evaluate(Complex z) const;
};

PadeCoefficients PadeSqrtCoefficients(int order, double theta);

// Same rotation applied to the diagonal Pade approximant of (1 + z)^(-1/2), which is the
// reciprocal of the real square root approximant.
PadeCoefficients PadeInverseSqrtCoefficients(int order, double theta);

// Sparse factorizations shared by the OSRC operators of one surface and wavenumber: one
// system M + b_j X per Pade term of the square root and of the inverse square root, with
// X = -K_LB / k_eps^2 the weak surface Laplacian scaled by the damped wavenumber.
class OsrcFactorization
{
public:
  OsrcFactorization(const Surface &surface, double k, const OsrcConfig &config);
  ~OsrcFactorization();

  // Coefficient actions of the approximated square root and inverse square root of
  // (1 + Laplace-Beltrami / k_eps^2).
  CVector ApplySqrt(const CVector &u) const;
  CVector ApplyInverseSqrt(const CVector &u) const;

  double Wavenumber() const { return k_; }
  Complex DampedWavenumber() const { return k_eps_; }
  double Damping() const { return damping_; }
  double CharacteristicLength() const { return length_; }
  const PadeCoefficients &Pade() const { return pade_; }
  const PadeCoefficients &InversePade() const { return inverse_pade_; }
  const SurfaceLaplacian &Laplacian() const { return lb_; }
  Index Size() const { return lb_.mass.rows(); }

private:
  struct Solvers;
  double k_, damping_, length_;
  Complex k_eps_;
  PadeCoefficients pade_, inverse_pade_;
  SurfaceLaplacian lb_;
  Eigen::SparseMatrix<Complex> mass_, x_;
  std::unique_ptr<Solvers> solvers_;
};

enum class OsrcKind
{
  DtN,
  NtD
};

// Strong-form (coefficient to coefficient) OSRC approximation of the exterior DtN map
// ik sqrt(1 + Delta/k_eps^2) or NtD map (1/ik) (1 + Delta/k_eps^2)^(-1/2), multiplied by
// sign.
class OsrcOperator
{
public:
  OsrcOperator(OsrcKind kind, double sign, std::shared_ptr<const OsrcFactorization> fact);

  CVector Apply(const CVector &u) const;
  CMatrix ToDense() const;
  Index Size() const { return fact_->Size(); }
  int NumFactorizations() const;
  OsrcKind Kind() const { return kind_; }
  double Sign() const { return sign_; }
  const OsrcFactorization &Factorization() const { return *fact_; }

private:
  OsrcKind kind_;
  double sign_;
  std::shared_ptr<const OsrcFactorization> fact_;
};

}  // namespace fembem

#endif  // FEMBEM_OSRC_HPP

// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/osrc.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

namespace fembem
{

void OsrcConfig::Validate() const
{
  FEMBEM_VERIFY(pade_order >= 1, "Pade order must be >= 1, got ", pade_order);
  FEMBEM_VERIFY(branch_angle > 0.0 && branch_angle < pi,
                "branch angle must lie in (0, pi), got ", branch_angle);
}

double DefaultDamping(double k, double length)
{
  FEMBEM_VERIFY(k > 0.0 && length > 0.0, "damping needs positive k and L, got k = ", k,
                ", L = ", length);
  return 0.4 * std::pow(k * length, -2.0 / 3.0);
}

double BoundingBoxCircumradius(const Surface &surface)
{
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (const auto &x : surface.nodes)
  {
    lo = lo.cwiseMin(x);
    hi = hi.cwiseMax(x);
  }
  return 0.5 * (hi - lo).norm();
}

Complex PadeCoefficients::Evaluate(Complex z) const
{
  Complex r = c0;
  for (std::size_t j = 0; j < a.size(); j++)
  {
    r += a[j] * z / (1.0 + b[j] * z);
  }
  return r;
}

namespace
{

// Real Pade approximant of sqrt(1 + w) about w = 0.
PadeCoefficients RealSqrtPade(int order)
{
  const double m = 2.0 * order + 1.0;
  PadeCoefficients p;
  p.c0 = 1.0;
  for (int j = 1; j <= order; j++)
  {
    const double s = std::sin(j * pi / m), c = std::cos(j * pi / m);
    p.a.push_back(2.0 / m * s * s);
    p.b.push_back(c * c);
  }
  return p;
}

// Polynomial helpers on ascending coefficient vectors.
std::vector<double> Multiply(const std::vector<double> &p, const std::vector<double> &q)
{
  std::vector<double> r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); i++)
  {
    for (std::size_t j = 0; j < q.size(); j++)
    {
      r[i + j] += p[i] * q[j];
    }
  }
  return r;
}

double Horner(const std::vector<double> &p, double x)
{
  double r = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it)
  {
    r = r * x + *it;
  }
  return r;
}

// The diagonal Pade approximant of (1 + w)^(-1/2) is the reciprocal of the one of
// sqrt(1 + w). Write 1/R = D/N and expand in partial fractions over the zeros of N.
PadeCoefficients RealInverseSqrtPade(int order)
{
  const PadeCoefficients r = RealSqrtPade(order);
  std::vector<double> den{1.0}, num;
  for (std::size_t j = 0; j < r.b.size(); j++)
  {
    den = Multiply(den, {1.0, r.b[j].real()});
  }
  num = den;
  for (std::size_t j = 0; j < r.a.size(); j++)
  {
    std::vector<double> t{0.0, r.a[j].real()};
    for (std::size_t i = 0; i < r.b.size(); i++)
    {
      if (i != j)
      {
        t = Multiply(t, {1.0, r.b[i].real()});
      }
    }
    for (std::size_t i = 0; i < t.size(); i++)
    {
      num[i] += t[i];
    }
  }
  const int n = order;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; i++)
  {
    companion(0, i) = -num[n - 1 - i] / num[n];
    if (i + 1 < n)
    {
      companion(i + 1, i) = 1.0;
    }
  }
  const Eigen::VectorXcd roots = companion.eigenvalues();
  std::vector<double> dnum(n);
  for (int i = 1; i <= n; i++)
  {
    dnum[i - 1] = i * num[i];
  }
  // 1/R(w) = den_n/num_n + sum_j res_j / (w - w_j), and
  // res / (w - w_j) = g - g e w / (1 + e w) with e = -1/w_j, g = -res/w_j.
  PadeCoefficients p;
  double c = den[n] / num[n];
  for (int j = 0; j < n; j++)
  {
    FEMBEM_VERIFY(std::abs(roots[j].imag()) < 1e-8 * std::abs(roots[j]),
                  "inverse square root Pade pole is not real");
    const double wj = roots[j].real();
    const double res = Horner(den, wj) / Horner(dnum, wj);
    const double e = -1.0 / wj, g = -res / wj;
    c += g;
    p.a.push_back(-g * e);
    p.b.push_back(e);
  }
  p.c0 = c;
  return p;
}

// Approximate (1 + z)^s by rotating the branch cut: (1 + z)^s = e^{i s theta} f(w) with
// w = e^{-i theta}(1 + z) - 1, and f the real approximant of (1 + w)^s.
PadeCoefficients Rotate(const PadeCoefficients &real, double s, double theta)
{
  const Complex rot = std::exp(-iu * theta), z0 = rot - 1.0, phase = std::exp(iu * s * theta);
  PadeCoefficients p;
  Complex sum = real.c0;
  for (std::size_t j = 0; j < real.a.size(); j++)
  {
    const Complex den = 1.0 + real.b[j] * z0;
    sum += real.a[j] * z0 / den;
    p.a.push_back(phase * rot * real.a[j] / (den * den));
    p.b.push_back(rot * real.b[j] / den);
  }
  p.c0 = phase * sum;
  return p;
}

void CheckPadeArguments(int order, double theta)
{
  FEMBEM_VERIFY(order >= 1, "Pade order must be >= 1, got ", order);
  FEMBEM_VERIFY(theta > 0.0 && theta < pi, "branch angle must lie in (0, pi), got ", theta);
}

}  // namespace

PadeCoefficients PadeSqrtCoefficients(int order, double theta)
{
  CheckPadeArguments(order, theta);
  return Rotate(RealSqrtPade(order), 0.5, theta);
}

PadeCoefficients PadeInverseSqrtCoefficients(int order, double theta)
{
  CheckPadeArguments(order, theta);
  return Rotate(RealInverseSqrtPade(order), -0.5, theta);
}

struct OsrcFactorization::Solvers
{
  using LU = Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>>;
  std::vector<std::unique_ptr<LU>> sqrt_terms, inverse_terms;

  static std::unique_ptr<LU> Factorize(const Eigen::SparseMatrix<Complex> &a, const char *what)
  {
    auto lu = std::make_unique<LU>();
    lu->compute(a);
    if (lu->info() != Eigen::Success)
    {
      throw NumericalError(detail::Concat("OSRC ", what, " factorization failed: ",
                                          lu->lastErrorMessage()));
    }
    return lu;
  }
};

OsrcFactorization::OsrcFactorization(const Surface &surface, double k, const OsrcConfig &config)
  : k_(k), solvers_(std::make_unique<Solvers>())
{
  config.Validate();
  FEMBEM_VERIFY(k > 0.0, "OSRC wavenumber must be positive, got ", k);
  length_ = config.characteristic_length > 0.0 ? config.characteristic_length
                                               : BoundingBoxCircumradius(surface);
  damping_ = config.damping > 0.0 ? config.damping : DefaultDamping(k, length_);
  k_eps_ = k * Complex(1.0, damping_);
  pade_ = PadeSqrtCoefficients(config.pade_order, config.branch_angle);
  inverse_pade_ = PadeInverseSqrtCoefficients(config.pade_order, config.branch_angle);
  lb_ = AssembleSurfaceLaplacian(surface);
  mass_ = lb_.mass.cast<Complex>();
  x_ = (lb_.stiffness.cast<Complex>() * (-1.0 / (k_eps_ * k_eps_)));
  for (const Complex &b : pade_.b)
  {
    Eigen::SparseMatrix<Complex> a = mass_ + b * x_;
    solvers_->sqrt_terms.push_back(Solvers::Factorize(a, "Pade term"));
  }
  for (const Complex &b : inverse_pade_.b)
  {
    Eigen::SparseMatrix<Complex> a = mass_ + b * x_;
    solvers_->inverse_terms.push_back(Solvers::Factorize(a, "Pade term"));
  }
}

OsrcFactorization::~OsrcFactorization() = default;

namespace
{

template <typename Terms>
CVector ApplyPade(const PadeCoefficients &p, const Terms &terms,
                  const Eigen::SparseMatrix<Complex> &x, const CVector &u)
{
  const CVector xu = x * u;
  CVector r = p.c0 * u;
  for (std::size_t j = 0; j < p.a.size(); j++)
  {
    r += p.a[j] * terms[j]->solve(xu);
  }
  return r;
}

}  // namespace

CVector OsrcFactorization::ApplySqrt(const CVector &u) const
{
  FEMBEM_VERIFY(u.size() == Size(), "OSRC input has ", u.size(), " entries, expected ", Size());
  return ApplyPade(pade_, solvers_->sqrt_terms, x_, u);
}

CVector OsrcFactorization::ApplyInverseSqrt(const CVector &u) const
{
  FEMBEM_VERIFY(u.size() == Size(), "OSRC input has ", u.size(), " entries, expected ", Size());
  return ApplyPade(inverse_pade_, solvers_->inverse_terms, x_, u);
}

OsrcOperator::OsrcOperator(OsrcKind kind, double sign,
                           std::shared_ptr<const OsrcFactorization> fact)
  : kind_(kind), sign_(sign), fact_(std::move(fact))
{
  FEMBEM_VERIFY(sign == 1.0 || sign == -1.0, "OSRC sign must be +1 or -1");
}

CVector OsrcOperator::Apply(const CVector &u) const
{
  const Complex ik = iu * fact_->Wavenumber();
  if (kind_ == OsrcKind::DtN)
  {
    return (sign_ * ik) * fact_->ApplySqrt(u);
  }
  return (sign_ / ik) * fact_->ApplyInverseSqrt(u);
}

CMatrix OsrcOperator::ToDense() const
{
  const Index n = Size();
  CMatrix m(n, n);
  for (Index j = 0; j < n; j++)
  {
    m.col(j) = Apply(CVector::Unit(n, j));
  }
  return m;
}

int OsrcOperator::NumFactorizations() const
{
  const auto &p = kind_ == OsrcKind::DtN ? fact_->Pade() : fact_->InversePade();
  return static_cast<int>(p.a.size());
}

}  // namespace fembem

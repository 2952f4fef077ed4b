// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/linsolve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "fembem/formulations.hpp"

namespace fembem
{

namespace
{

double Seconds(std::chrono::steady_clock::time_point start)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Complex Givens rotation zeroing b in (a, b).
void Givens(Complex a, Complex b, double &c, Complex &s)
{
  const double na = std::abs(a), nb = std::abs(b);
  if (nb == 0.0)
  {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (na == 0.0)
  {
    c = 0.0;
    s = std::conj(b) / nb;
    return;
  }
  const double r = std::hypot(na, nb);
  c = na / r;
  s = (a / na) * std::conj(b) / r;
}

}  // namespace

CVector Gmres(const LinearOperator &a, const CVector &b, const LinearOperator *precond,
              const GmresOptions &opts, SolveReport &report)
{
  FEMBEM_VERIFY(opts.tol > 0.0, "GMRES tolerance must be positive, got ", opts.tol);
  FEMBEM_VERIFY(opts.max_iter >= 1, "GMRES needs max_iter >= 1");
  FEMBEM_VERIFY(a.Rows() == a.Cols() && b.size() == a.Rows(), "GMRES: operator is ", a.Rows(),
                "x", a.Cols(), ", right-hand side has ", b.size(), " entries");
  FEMBEM_VERIFY(!precond || (precond->Rows() == a.Rows() && precond->Cols() == a.Rows()),
                "GMRES: preconditioner does not conform to the system");
  const auto start = std::chrono::steady_clock::now();
  auto prec = [&](const CVector &v) { return precond ? precond->Apply(v) : v; };
  report = SolveReport{};
  const Index n = b.size();
  CVector x = CVector::Zero(n);

  const CVector r0 = prec(b);
  const double beta = r0.norm();
  report.residuals.push_back(1.0);
  if (beta == 0.0)
  {
    report.converged = true;
    report.relative_residual = 0.0;
    report.wall_time_s = Seconds(start);
    return x;
  }

  const int m = static_cast<int>(std::min<Index>(opts.max_iter, n));
  std::vector<CVector> basis;
  basis.push_back(r0 / beta);
  CMatrix h = CMatrix::Zero(m + 1, m);
  std::vector<double> cs(m);
  std::vector<Complex> sn(m);
  CVector g = CVector::Zero(m + 1);
  g[0] = beta;
  int j = 0;
  for (; j < m; j++)
  {
    CVector w = prec(a.Apply(basis[j]));

    // Modified Gram-Schmidt, with one more pass if orthogonality was lost.
    for (int i = 0; i <= j; i++)
    {
      h(i, j) = basis[i].dot(w);
      w -= h(i, j) * basis[i];
    }
    double wn = w.norm();
    double loss = 0.0;
    for (int i = 0; i <= j && wn > 0.0; i++)
    {
      loss = std::max(loss, std::abs(basis[i].dot(w)) / wn);
    }
    if (loss > opts.reorth_threshold)
    {
      for (int i = 0; i <= j; i++)
      {
        const Complex c = basis[i].dot(w);
        h(i, j) += c;
        w -= c * basis[i];
      }
      wn = w.norm();
    }
    h(j + 1, j) = wn;

    for (int i = 0; i < j; i++)
    {
      const Complex t = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
      h(i + 1, j) = -std::conj(sn[i]) * h(i, j) + cs[i] * h(i + 1, j);
      h(i, j) = t;
    }
    Givens(h(j, j), h(j + 1, j), cs[j], sn[j]);
    h(j, j) = cs[j] * h(j, j) + sn[j] * h(j + 1, j);
    h(j + 1, j) = 0.0;
    g[j + 1] = -std::conj(sn[j]) * g[j];
    g[j] = cs[j] * g[j];

    const double res = std::abs(g[j + 1]) / beta;
    report.residuals.push_back(res);
    report.iterations = j + 1;
    if (std::abs(h(j, j)) <= 1e-14 * h.col(j).head(j + 1).norm() || h(j, j) == 0.0)
    {
      report.breakdown = true;
      report.breakdown_iteration = j + 1;
      report.warnings.push_back(detail::Concat("GMRES breakdown at iteration ", j + 1,
                                               ": singular Hessenberg matrix"));
      break;
    }
    if (res <= opts.tol || wn == 0.0)
    {
      j++;
      break;
    }
    basis.push_back(w / wn);
  }
  const int k = j;
  if (k > 0)
  {
    const CVector y =
        h.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    for (int i = 0; i < k; i++)
    {
      x += y[i] * basis[i];
    }
  }
  report.relative_residual = report.residuals.back();
  report.converged = !report.breakdown && report.relative_residual <= opts.tol;
  report.wall_time_s = Seconds(start);
  return x;
}

CVector DirectSolve(const CMatrix &a, const CVector &b, SolveReport *report, double rcond_warning)
{
  FEMBEM_VERIFY(a.rows() == a.cols() && b.size() == a.rows(), "direct solve: matrix is ",
                a.rows(), "x", a.cols(), ", right-hand side has ", b.size(), " entries");
  const auto start = std::chrono::steady_clock::now();
  const lapack_int n = static_cast<lapack_int>(a.rows());
  CMatrix lu = a;
  std::vector<lapack_int> ipiv(n);
  const double anorm = LAPACKE_zlange(LAPACK_COL_MAJOR, '1', n, n, lu.data(), n);
  lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lu.data(), n, ipiv.data());
  FEMBEM_VERIFY(info >= 0, "zgetrf: invalid argument ", -info);
  double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();
  for (lapack_int i = 0; i < n; i++)
  {
    pmax = std::max(pmax, std::abs(lu(i, i)));
    pmin = std::min(pmin, std::abs(lu(i, i)));
  }
  if (info > 0 || pmin <= 1e-14 * pmax)
  {
    throw NumericalError(detail::Concat("numerically singular matrix: pivot ratio ",
                                        pmax > 0.0 ? pmin / pmax : 0.0));
  }
  double rcond = 0.0;
  LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n, lu.data(), n, anorm, &rcond);
  CVector x = b;
  info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, 1, lu.data(), n, ipiv.data(), x.data(), n);
  FEMBEM_VERIFY(info == 0, "zgetrs failed with code ", info);
  if (report)
  {
    *report = SolveReport{};
    const double bn = b.norm();
    report->relative_residual = bn > 0.0 ? (a * x - b).norm() / bn : 0.0;
    report->converged = true;
    report->rcond = rcond;
    if (rcond < rcond_warning)
    {
      report->warnings.push_back(detail::Concat(
          "ill-conditioned system: reciprocal condition estimate ", rcond, ", pivot ratio ",
          pmin / pmax));
    }
    report->wall_time_s = Seconds(start);
  }
  return x;
}

CVector DirectSolve(const LinearOperator &a, const CVector &b, SolveReport *report,
                    double rcond_warning)
{
  return DirectSolve(a.ToDense(), b, report, rcond_warning);
}

std::string ToString(CondMethod method)
{
  return method == CondMethod::Svd ? "svd" : "lanczos";
}

CondMethod ParseCondMethod(const std::string &name)
{
  if (name == "svd")
  {
    return CondMethod::Svd;
  }
  if (name == "lanczos")
  {
    return CondMethod::Lanczos;
  }
  throw InvalidArgument("unknown condition number method \"" + name +
                        "\" (expected svd or lanczos)");
}

namespace
{

// Largest eigenvalue of a Hermitian positive semi-definite operator by Lanczos with full
// reorthogonalisation, stopped on the Ritz residual bound.
double LargestEigenvalue(const std::function<CVector(const CVector &)> &apply, Index n)
{
  std::mt19937 rng(20240517);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  CVector q(n);
  for (Index i = 0; i < n; i++)
  {
    q[i] = Complex(dist(rng), dist(rng));
  }
  q.normalize();
  const int max_iter = static_cast<int>(std::min<Index>(n, 400));
  std::vector<CVector> basis{q};
  std::vector<double> alpha, beta;
  double theta = 0.0;
  for (int j = 0; j < max_iter; j++)
  {
    CVector w = apply(basis[j]);
    alpha.push_back(basis[j].dot(w).real());
    for (int pass = 0; pass < 2; pass++)
    {
      for (const CVector &v : basis)
      {
        w -= v.dot(w) * v;
      }
    }
    const double b = w.norm();
    const int m = j + 1;
    const Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    const Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
    eig.computeFromTridiagonal(diag, sub);
    theta = eig.eigenvalues()[m - 1];
    const double residual = b * std::abs(eig.eigenvectors()(m - 1, m - 1));
    if (residual <= 1e-8 * std::abs(theta) || b <= 1e-14 * std::abs(theta) || m == n)
    {
      return theta;
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  return theta;
}

double SvdConditionNumber(const CMatrix &a)
{
  const lapack_int n = static_cast<lapack_int>(a.rows());
  CMatrix work = a;
  RVector s(n);
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', n, n, work.data(), n, s.data(),
                                         nullptr, 1, nullptr, 1);
  if (info != 0)
  {
    throw NumericalError(detail::Concat("zgesdd failed with code ", info));
  }
  return s[n - 1] > 0.0 ? s[0] / s[n - 1] : std::numeric_limits<double>::infinity();
}

double LanczosConditionNumber(const CMatrix &a)
{
  const lapack_int n = static_cast<lapack_int>(a.rows());
  CMatrix lu = a;
  std::vector<lapack_int> ipiv(n);
  const lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lu.data(), n, ipiv.data());
  FEMBEM_VERIFY(info >= 0, "zgetrf: invalid argument ", -info);
  if (info > 0)
  {
    return std::numeric_limits<double>::infinity();
  }
  const double smax2 = LargestEigenvalue(
      [&](const CVector &x) -> CVector { return a.adjoint() * (a * x); }, n);
  const double inv2 = LargestEigenvalue(
      [&](const CVector &x)
      {
        CVector y = x;
        LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'C', n, 1, lu.data(), n, ipiv.data(), y.data(), n);
        LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, 1, lu.data(), n, ipiv.data(), y.data(), n);
        return y;
      },
      n);
  return std::sqrt(smax2 * inv2);
}

}  // namespace

double ConditionNumber(const CMatrix &a, CondMethod method)
{
  FEMBEM_VERIFY(a.rows() == a.cols() && a.rows() > 0, "condition number needs a square matrix");
  return method == CondMethod::Svd ? SvdConditionNumber(a) : LanczosConditionNumber(a);
}

double ConditionNumber(const LinearOperator &a, bool force, CondMethod method)
{
  FEMBEM_VERIFY(force || a.Rows() <= kDenseGuard, "condition number of a ", a.Rows(),
                " unknown system exceeds the dense limit of ", kDenseGuard,
                " (use --force to override)");
  return ConditionNumber(a.ToDense(), method);
}

IluFactorization::IluFactorization(const CSparse &a, double drop_tol, double pivot_tol)
  : n_(a.rows())
{
  FEMBEM_VERIFY(a.rows() == a.cols(), "ILU needs a square matrix, got ", a.rows(), "x",
                a.cols());
  FEMBEM_VERIFY(drop_tol >= 0.0, "ILU drop tolerance must be non-negative");
  const int n = static_cast<int>(n_);
  l_.resize(n);
  u_.resize(n);
  diag_.resize(n);
  perm_.resize(n);
  position_.resize(n);
  for (int i = 0; i < n; i++)
  {
    perm_[i] = position_[i] = i;
  }
  std::vector<Complex> w(n, 0.0);
  std::vector<char> in_row(n, 0), queued(n, 0);
  std::vector<int> cols;
  using Item = std::pair<int, int>;
  for (int i = 0; i < n; i++)
  {
    cols.clear();
    double norm = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    for (CSparse::InnerIterator it(a, i); it; ++it)
    {
      const int c = static_cast<int>(it.col());
      w[c] = it.value();
      in_row[c] = 1;
      cols.push_back(c);
      norm += std::norm(it.value());
      if (position_[c] < i)
      {
        heap.push({position_[c], c});
        queued[c] = 1;
      }
    }
    norm = std::sqrt(norm);
    const double drop = drop_tol * norm;

    // Eliminate with the previous rows in position order.
    while (!heap.empty())
    {
      const auto [j, c] = heap.top();
      heap.pop();
      const Complex mult = w[c] / diag_[j];
      w[c] = 0.0;
      if (std::abs(mult) <= drop && drop_tol > 0.0)
      {
        continue;
      }
      l_[i].push_back({c, mult});
      for (const auto &[c2, u] : u_[j])
      {
        if (!in_row[c2])
        {
          in_row[c2] = 1;
          cols.push_back(c2);
        }
        w[c2] -= mult * u;
        if (position_[c2] < i && !queued[c2])
        {
          heap.push({position_[c2], c2});
          queued[c2] = 1;
        }
      }
    }

    // Pivot among the remaining upper entries.
    int cmax = -1;
    double vmax = 0.0;
    for (int c : cols)
    {
      if (position_[c] >= i && std::abs(w[c]) > vmax)
      {
        vmax = std::abs(w[c]);
        cmax = c;
      }
    }
    if (cmax < 0)
    {
      throw NumericalError(detail::Concat("ILU zero pivot in row ", i));
    }
    const int cdiag = perm_[i];
    if (std::abs(w[cdiag]) < pivot_tol * vmax)
    {
      const int pj = position_[cmax];
      std::swap(perm_[i], perm_[pj]);
      position_[perm_[i]] = i;
      position_[perm_[pj]] = pj;
      swaps_++;
    }
    diag_[i] = w[perm_[i]];
    for (int c : cols)
    {
      if (position_[c] > i && w[c] != 0.0 && (std::abs(w[c]) > drop || drop_tol == 0.0))
      {
        u_[i].push_back({c, w[c]});
      }
      w[c] = 0.0;
      in_row[c] = 0;
      queued[c] = 0;
    }
  }
}

Index IluFactorization::NonZeros() const
{
  Index nnz = n_;
  for (Index i = 0; i < n_; i++)
  {
    nnz += static_cast<Index>(l_[i].size() + u_[i].size());
  }
  return nnz;
}

CVector IluFactorization::Apply(const CVector &b) const
{
  FEMBEM_VERIFY(b.size() == n_, "ILU solve expects ", n_, " entries, got ", b.size());
  CVector y(n_);
  for (Index i = 0; i < n_; i++)
  {
    Complex s = b[i];
    for (const auto &[c, v] : l_[i])
    {
      s -= v * y[position_[c]];
    }
    y[i] = s;
  }
  for (Index i = n_ - 1; i >= 0; i--)
  {
    Complex s = y[i];
    for (const auto &[c, v] : u_[i])
    {
      s -= v * y[position_[c]];
    }
    y[i] = s / diag_[i];
  }
  CVector x(n_);
  for (Index j = 0; j < n_; j++)
  {
    x[perm_[j]] = y[j];
  }
  return x;
}

struct MassInverse::Solver
{
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

MassInverse::MassInverse(const RSparse &m) : n_(m.rows()), solver_(std::make_unique<Solver>())
{
  FEMBEM_VERIFY(m.rows() == m.cols(), "mass preconditioning needs a square mass matrix; got ",
                m.rows(), "x", m.cols(), " (the P0-P1 mass matrix is rectangular)");
  solver_->ldlt.compute(Eigen::SparseMatrix<double>(m));
  if (solver_->ldlt.info() != Eigen::Success)
  {
    throw NumericalError("mass matrix factorization failed");
  }
}

MassInverse::~MassInverse() = default;

CVector MassInverse::Apply(const CVector &b) const
{
  FEMBEM_VERIFY(b.size() == n_, "mass solve expects ", n_, " entries, got ", b.size());
  const RVector re = solver_->ldlt.solve(RVector(b.real()));
  const RVector im = solver_->ldlt.solve(RVector(b.imag()));
  CVector x(n_);
  x.real() = re;
  x.imag() = im;
  return x;
}

std::string ToString(PrecondChoice choice)
{
  switch (choice)
  {
    case PrecondChoice::Auto:
      return "auto";
    case PrecondChoice::None:
      return "none";
    case PrecondChoice::Mass:
      return "mass";
    case PrecondChoice::OsrcNtD:
      return "osrc_ntd";
    case PrecondChoice::OsrcDtN:
      return "osrc_dtn";
    case PrecondChoice::IluAll:
      return "ilu_all";
    case PrecondChoice::IluInnerOsrcSurface:
      return "ilu_inner+osrc_surface";
  }
  return "?";
}

PrecondChoice ParsePrecondChoice(const std::string &name)
{
  for (auto c : {PrecondChoice::Auto, PrecondChoice::None, PrecondChoice::Mass,
                 PrecondChoice::OsrcNtD, PrecondChoice::OsrcDtN, PrecondChoice::IluAll,
                 PrecondChoice::IluInnerOsrcSurface})
  {
    if (ToString(c) == name)
    {
      return c;
    }
  }
  throw InvalidArgument("unknown preconditioner choice \"" + name + "\"");
}

PreconditionerRecipe PreconditionerRecipe::Preset(const std::string &name)
{
  PreconditionerRecipe r;
  r.name = name;
  if (name == "none")
  {
    return r;
  }
  if (name == "mass")
  {
    r.surface = PrecondChoice::Mass;
    return r;
  }
  r.surface = PrecondChoice::Auto;
  if (name == "osrc")
  {
    r.pressure = PrecondChoice::OsrcNtD;
  }
  else if (name == "ilu_all")
  {
    r.pressure = PrecondChoice::IluAll;
  }
  else if (name == "ilu_inner+osrc_surface")
  {
    r.pressure = PrecondChoice::IluInnerOsrcSurface;
  }
  else
  {
    throw InvalidArgument("unknown preconditioner \"" + name +
                          "\" (expected none, mass, osrc, ilu_all or ilu_inner+osrc_surface)");
  }
  return r;
}

Preconditioner::Preconditioner(std::vector<Index> sizes, std::vector<OperatorPtr> blocks,
                               std::string name)
  : sizes_(std::move(sizes)), blocks_(std::move(blocks)), name_(std::move(name))
{
  FEMBEM_VERIFY(sizes_.size() == blocks_.size(), "preconditioner needs one block per row");
  offsets_.assign(sizes_.size() + 1, 0);
  for (std::size_t i = 0; i < sizes_.size(); i++)
  {
    FEMBEM_VERIFY(!blocks_[i] ||
                      (blocks_[i]->Rows() == sizes_[i] && blocks_[i]->Cols() == sizes_[i]),
                  "preconditioner block ", i, " does not conform to the system layout");
    offsets_[i + 1] = offsets_[i] + sizes_[i];
  }
}

CVector Preconditioner::Apply(const CVector &x) const
{
  FEMBEM_VERIFY(x.size() == Rows(), "preconditioner expects ", Rows(), " entries, got ",
                x.size());
  CVector y(x.size());
  for (std::size_t i = 0; i < blocks_.size(); i++)
  {
    const auto seg = x.segment(offsets_[i], sizes_[i]);
    y.segment(offsets_[i], sizes_[i]) = blocks_[i] ? blocks_[i]->Apply(seg) : CVector(seg);
  }
  return y;
}

namespace
{

// Shared per-domain pieces of the OSRC and mass preconditioners.
struct DomainPrecond
{
  const DomainData *data = nullptr;
  std::shared_ptr<const OsrcFactorization> osrc;
  OperatorPtr mass_inv;

  OperatorPtr MassInv()
  {
    if (!mass_inv)
    {
      mass_inv = std::make_shared<MassInverse>(data->mass_p1);
    }
    return mass_inv;
  }

  OperatorPtr Osrc(OsrcKind kind, double k, const OsrcConfig &config)
  {
    if (!osrc)
    {
      osrc = data->osrc ? data->osrc
                        : std::make_shared<OsrcFactorization>(data->surface, k, config);
    }
    return MakeProduct({MakeOsrc(OsrcOperator(kind, 1.0, osrc)), MassInv()});
  }
};

}  // namespace

std::shared_ptr<Preconditioner> BuildPreconditioner(const PreconditionerRecipe &recipe,
                                                    const FormulationSystem &system)
{
  const auto &sizes = system.lhs.Sizes();
  FEMBEM_VERIFY(system.row_test.size() == sizes.size() &&
                    system.row_roles.size() == sizes.size(),
                "system is missing its row metadata");
  std::vector<DomainPrecond> dom(system.domains.size());
  auto domain_index = [&](int domain)
  {
    for (std::size_t i = 0; i < system.domains.size(); i++)
    {
      if (system.domains[i].domain == domain)
      {
        dom[i].data = &system.domains[i];
        return i;
      }
    }
    throw InvalidArgument(detail::Concat("no data for domain ", domain));
  };
  const OsrcConfig &oc = system.options.osrc;
  std::vector<OperatorPtr> blocks(sizes.size());
  for (std::size_t r = 0; r < sizes.size(); r++)
  {
    const Unknown &u = system.unknowns[system.row_test[r]];
    DomainPrecond &dp = dom[domain_index(u.domain)];
    const DomainData &d = *dp.data;
    const RowRole role = system.row_roles[r];
    if (role == RowRole::Fem)
    {
      const OperatorPtr z = MakeSparse(d.maps.Z);
      const OperatorPtr zt = MakeSparse(RSparse(d.maps.Z.transpose()));
      const OperatorPtr zb = MakeSparse(d.maps.Zbar);
      const OperatorPtr zbt = MakeSparse(RSparse(d.maps.Zbar.transpose()));
      switch (recipe.pressure)
      {
        case PrecondChoice::None:
          break;
        case PrecondChoice::OsrcNtD:
          blocks[r] = MakeSum(
              {{1.0, MakeProduct({zbt, zb})},
               {1.0, MakeProduct({zt, dp.Osrc(OsrcKind::NtD, system.k, oc), z})}});
          break;
        case PrecondChoice::IluAll:
          blocks[r] = std::make_shared<IluFactorization>(d.fem, recipe.drop_tol);
          break;
        case PrecondChoice::IluInnerOsrcSurface:
        {
          const CSparse zbc = d.maps.Zbar.cast<Complex>();
          const CSparse inner = zbc * d.fem * CSparse(zbc.transpose());
          blocks[r] = MakeSum(
              {{1.0, MakeProduct({zbt, std::make_shared<IluFactorization>(inner, recipe.drop_tol),
                                  zb})},
               {1.0, MakeProduct({zt, dp.Osrc(OsrcKind::NtD, system.k, oc), z})}});
          break;
        }
        default:
          throw InvalidArgument("preconditioner choice " + ToString(recipe.pressure) +
                                " does not apply to the pressure unknown");
      }
      continue;
    }
    if (recipe.surface == PrecondChoice::None)
    {
      continue;
    }
    FEMBEM_VERIFY(u.space.kind == SpaceKind::SurfaceP1, "preconditioner ",
                  ToString(recipe.surface), " needs P1 surface test spaces; with P0-P1 the ",
                  "mass matrix is rectangular");
    PrecondChoice c = recipe.surface;
    if (c == PrecondChoice::Auto)
    {
      switch (role)
      {
        case RowRole::SingleLayer:
        case RowRole::EtaMassRegulariser:
          c = PrecondChoice::OsrcDtN;
          break;
        case RowRole::Regulariser:
          c = PrecondChoice::OsrcNtD;
          break;
        default:
          c = PrecondChoice::Mass;
      }
    }
    switch (c)
    {
      case PrecondChoice::Mass:
        blocks[r] = dp.MassInv();
        break;
      case PrecondChoice::OsrcDtN:
        blocks[r] = dp.Osrc(OsrcKind::DtN, system.k, oc);
        break;
      case PrecondChoice::OsrcNtD:
        blocks[r] = dp.Osrc(OsrcKind::NtD, system.k, oc);
        break;
      default:
        throw InvalidArgument("preconditioner choice " + ToString(c) +
                              " does not apply to surface unknowns");
    }
  }
  return std::make_shared<Preconditioner>(sizes, std::move(blocks), recipe.name);
}

}  // namespace fembem

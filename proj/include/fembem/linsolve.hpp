// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_LINSOLVE_HPP
#define FEMBEM_LINSOLVE_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fembem/block_operator.hpp"
#include "fembem/common.hpp"

namespace fembem
{

struct FormulationSystem;

struct GmresOptions
{
  double tol = 1e-5;
  int max_iter = 1000;

  // A second Gram-Schmidt pass runs when the new Krylov vector keeps a component larger
  // than this (relative to its norm) along the previous basis.
  double reorth_threshold = 1e-8;
};

struct SolveReport
{
  int iterations = 0;

  // Preconditioned relative residual estimate, starting with 1 for the initial guess.
  std::vector<double> residuals;
  double relative_residual = 0.0;
  bool converged = false;
  bool breakdown = false;
  int breakdown_iteration = -1;
  double wall_time_s = 0.0;
  std::optional<double> condition_number;

  // Direct solves: LAPACK estimate of the reciprocal 1-norm condition number.
  std::optional<double> rcond;
  std::vector<std::string> warnings;
};

// Left-preconditioned GMRES without restart, from a zero initial guess. Stops when the
// preconditioned relative residual drops below tol or after max_iter iterations.
CVector Gmres(const LinearOperator &a, const CVector &b, const LinearOperator *precond,
              const GmresOptions &opts, SolveReport &report);

// Dense LU with partial pivoting of the densified operator (LAPACK). Throws NumericalError
// when a pivot is below 1e-14 times the largest one. Adds a warning to report when the
// estimated reciprocal condition number is below rcond_warning.
CVector DirectSolve(const CMatrix &a, const CVector &b, SolveReport *report = nullptr,
                    double rcond_warning = 1e-6);
CVector DirectSolve(const LinearOperator &a, const CVector &b, SolveReport *report = nullptr,
                    double rcond_warning = 1e-6);

enum class CondMethod
{
  // All singular values (LAPACK divide and conquer SVD).
  Svd,
  // Extreme singular values only: Lanczos on A^H A and, through a dense LU, on its inverse.
  Lanczos
};

std::string ToString(CondMethod method);
CondMethod ParseCondMethod(const std::string &name);

// 2-norm condition number of a dense matrix; infinite for a singular one.
inline constexpr Index kDenseGuard = 9000;
double ConditionNumber(const CMatrix &a, CondMethod method = CondMethod::Svd);
double ConditionNumber(const LinearOperator &a, bool force = false,
                       CondMethod method = CondMethod::Svd);

//
// Threshold incomplete LU with column pivoting: A Q = L U, entries of each row smaller than
// drop_tol times the row's 2-norm are dropped. drop_tol = 0 gives the complete LU.
//
class IluFactorization : public LinearOperator
{
public:
  IluFactorization(const CSparse &a, double drop_tol, double pivot_tol = 0.1);

  Index Rows() const override { return n_; }
  Index Cols() const override { return n_; }
  OperatorKind Kind() const override { return OperatorKind::Sparse; }

  // Approximate solve of A x = b.
  CVector Apply(const CVector &b) const override;

  Index NonZeros() const;
  int NumPivotSwaps() const { return swaps_; }

private:
  using Row = std::vector<std::pair<int, Complex>>;

  Index n_;
  // Rows of L (strictly lower, unit diagonal) and U (strictly upper, diagonal kept apart),
  // both keyed by original column. perm_[j] is the original column at position j.
  std::vector<Row> l_, u_;
  CVector diag_;
  std::vector<int> perm_, position_;
  int swaps_ = 0;
};

// Real symmetric positive definite sparse solve applied to complex vectors.
class MassInverse : public LinearOperator
{
public:
  explicit MassInverse(const RSparse &m);
  ~MassInverse() override;

  Index Rows() const override { return n_; }
  Index Cols() const override { return n_; }
  OperatorKind Kind() const override { return OperatorKind::Sparse; }
  CVector Apply(const CVector &b) const override;

private:
  struct Solver;
  Index n_;
  std::unique_ptr<Solver> solver_;
};

enum class PrecondChoice
{
  // Automatic choice from the diagonal block of the row (OSRC or mass).
  Auto,
  None,
  Mass,
  OsrcNtD,
  OsrcDtN,
  IluAll,
  IluInnerOsrcSurface
};

std::string ToString(PrecondChoice choice);
PrecondChoice ParsePrecondChoice(const std::string &name);

struct PreconditionerRecipe
{
  std::string name = "none";

  // Choice for the pressure rows, and for the surface rows (theta and Sigma equations).
  PrecondChoice pressure = PrecondChoice::None;
  PrecondChoice surface = PrecondChoice::None;
  double drop_tol = 1e-4;

  // Presets: none, mass, osrc, ilu_all, ilu_inner+osrc_surface.
  static PreconditionerRecipe Preset(const std::string &name);
};

//
// Block-diagonal left preconditioner; one action per block row of the system (empty for
// identity).
//
class Preconditioner : public LinearOperator
{
public:
  Preconditioner(std::vector<Index> sizes, std::vector<OperatorPtr> blocks, std::string name);

  Index Rows() const override { return offsets_.back(); }
  Index Cols() const override { return offsets_.back(); }
  OperatorKind Kind() const override { return OperatorKind::Sum; }
  CVector Apply(const CVector &x) const override;
  const std::string &Name() const { return name_; }
  const OperatorPtr &Block(std::size_t i) const { return blocks_[i]; }

private:
  std::vector<Index> sizes_, offsets_;
  std::vector<OperatorPtr> blocks_;
  std::string name_;
};

std::shared_ptr<Preconditioner> BuildPreconditioner(const PreconditionerRecipe &recipe,
                                                    const FormulationSystem &system);

}  // namespace fembem

#endif  // FEMBEM_LINSOLVE_HPP

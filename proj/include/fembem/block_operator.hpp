// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_BLOCK_OPERATOR_HPP
#define FEMBEM_BLOCK_OPERATOR_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fembem/common.hpp"
#include "fembem/osrc.hpp"
#include "fembem/space.hpp"

namespace fembem
{

enum class OperatorKind
{
  Dense,
  Sparse,
  Sum,
  Product,
  Osrc,
  Zero
};

//
// Linear map between coefficient vectors. Implementations are immutable after
// construction, so Apply may be called concurrently.
//
class LinearOperator
{
public:
  virtual ~LinearOperator() = default;

  virtual Index Rows() const = 0;
  virtual Index Cols() const = 0;
  virtual OperatorKind Kind() const = 0;
  virtual CVector Apply(const CVector &x) const = 0;

  // Applies the operator to every column of x.
  virtual CMatrix ApplyMatrix(const CMatrix &x) const;
  virtual CMatrix ToDense() const;
};

using OperatorPtr = std::shared_ptr<const LinearOperator>;

class DenseOperator : public LinearOperator
{
public:
  explicit DenseOperator(CMatrix m) : m_(std::move(m)) {}

  Index Rows() const override { return m_.rows(); }
  Index Cols() const override { return m_.cols(); }
  OperatorKind Kind() const override { return OperatorKind::Dense; }
  CVector Apply(const CVector &x) const override;
  CMatrix ApplyMatrix(const CMatrix &x) const override { return m_ * x; }
  CMatrix ToDense() const override { return m_; }
  const CMatrix &Matrix() const { return m_; }

private:
  CMatrix m_;
};

class SparseOperator : public LinearOperator
{
public:
  explicit SparseOperator(CSparse m) : m_(std::move(m)) {}

  Index Rows() const override { return m_.rows(); }
  Index Cols() const override { return m_.cols(); }
  OperatorKind Kind() const override { return OperatorKind::Sparse; }
  CVector Apply(const CVector &x) const override;
  CMatrix ApplyMatrix(const CMatrix &x) const override { return m_ * x; }
  const CSparse &Matrix() const { return m_; }

private:
  CSparse m_;
};

// sum_i c_i A_i
class SumOperator : public LinearOperator
{
public:
  explicit SumOperator(std::vector<std::pair<Complex, OperatorPtr>> terms);

  Index Rows() const override { return terms_.front().second->Rows(); }
  Index Cols() const override { return terms_.front().second->Cols(); }
  OperatorKind Kind() const override { return OperatorKind::Sum; }
  CVector Apply(const CVector &x) const override;
  CMatrix ApplyMatrix(const CMatrix &x) const override;
  CMatrix ToDense() const override;

private:
  std::vector<std::pair<Complex, OperatorPtr>> terms_;
};

// A_0 A_1 ... A_{n-1}, applied right to left.
class ProductOperator : public LinearOperator
{
public:
  explicit ProductOperator(std::vector<OperatorPtr> factors);

  Index Rows() const override { return factors_.front()->Rows(); }
  Index Cols() const override { return factors_.back()->Cols(); }
  OperatorKind Kind() const override { return OperatorKind::Product; }
  CVector Apply(const CVector &x) const override;
  CMatrix ApplyMatrix(const CMatrix &x) const override;
  CMatrix ToDense() const override;

private:
  std::vector<OperatorPtr> factors_;
};

class OsrcBlock : public LinearOperator
{
public:
  explicit OsrcBlock(OsrcOperator op) : op_(std::move(op)) {}

  Index Rows() const override { return op_.Size(); }
  Index Cols() const override { return op_.Size(); }
  OperatorKind Kind() const override { return OperatorKind::Osrc; }
  CVector Apply(const CVector &x) const override { return op_.Apply(x); }
  const OsrcOperator &Operator() const { return op_; }

private:
  OsrcOperator op_;
};

class ZeroOperator : public LinearOperator
{
public:
  ZeroOperator(Index rows, Index cols) : rows_(rows), cols_(cols) {}

  Index Rows() const override { return rows_; }
  Index Cols() const override { return cols_; }
  OperatorKind Kind() const override { return OperatorKind::Zero; }
  CVector Apply(const CVector &) const override { return CVector::Zero(rows_); }
  CMatrix ApplyMatrix(const CMatrix &x) const override { return CMatrix::Zero(rows_, x.cols()); }
  CMatrix ToDense() const override { return CMatrix::Zero(rows_, cols_); }

private:
  Index rows_, cols_;
};

OperatorPtr MakeDense(CMatrix m);
OperatorPtr MakeSparse(CSparse m);
OperatorPtr MakeSparse(const RSparse &m);
OperatorPtr MakeSum(std::vector<std::pair<Complex, OperatorPtr>> terms);
OperatorPtr MakeProduct(std::vector<OperatorPtr> factors);
OperatorPtr MakeOsrc(OsrcOperator op);
OperatorPtr Scale(Complex c, OperatorPtr a);

//
// Square grid of operator blocks. Row i tests against layout[i], column j acts on
// layout[j]; empty blocks are zero.
//
class BlockOperator : public LinearOperator
{
public:
  BlockOperator() = default;
  BlockOperator(std::vector<SpaceTag> layout, std::vector<Index> sizes);

  void Set(std::size_t row, std::size_t col, OperatorPtr block);
  const OperatorPtr &Get(std::size_t row, std::size_t col) const { return grid_[row][col]; }

  std::size_t NumBlocks() const { return layout_.size(); }
  const std::vector<SpaceTag> &Layout() const { return layout_; }
  const std::vector<Index> &Sizes() const { return sizes_; }
  Index Offset(std::size_t block) const { return offsets_[block]; }

  Index Rows() const override { return offsets_.back(); }
  Index Cols() const override { return offsets_.back(); }
  OperatorKind Kind() const override { return OperatorKind::Sum; }
  CVector Apply(const CVector &x) const override;
  CMatrix ToDense() const override;

  // New operator whose block row i is sign[i] times block row order[i] of this one.
  BlockOperator PermuteRows(const std::vector<std::size_t> &order,
                            const std::vector<double> &sign) const;

private:
  std::vector<SpaceTag> layout_;
  std::vector<Index> sizes_, offsets_;
  std::vector<std::vector<OperatorPtr>> grid_;
};

}  // namespace fembem

#endif  // FEMBEM_BLOCK_OPERATOR_HPP

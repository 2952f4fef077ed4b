// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "fembem/block_operator.hpp"

namespace fembem
{

CMatrix LinearOperator::ApplyMatrix(const CMatrix &x) const
{
  CMatrix y(Rows(), x.cols());
  for (Index j = 0; j < x.cols(); j++)
  {
    y.col(j) = Apply(x.col(j));
  }
  return y;
}

CMatrix LinearOperator::ToDense() const
{
  return ApplyMatrix(CMatrix::Identity(Cols(), Cols()));
}

CVector DenseOperator::Apply(const CVector &x) const
{
  FEMBEM_VERIFY(x.size() == m_.cols(), "dense block expects ", m_.cols(), " entries, got ",
                x.size());
  return m_ * x;
}

CVector SparseOperator::Apply(const CVector &x) const
{
  FEMBEM_VERIFY(x.size() == m_.cols(), "sparse block expects ", m_.cols(), " entries, got ",
                x.size());
  return m_ * x;
}

SumOperator::SumOperator(std::vector<std::pair<Complex, OperatorPtr>> terms)
  : terms_(std::move(terms))
{
  FEMBEM_VERIFY(!terms_.empty(), "sum of operators needs at least one term");
  for (const auto &[c, a] : terms_)
  {
    FEMBEM_VERIFY(a->Rows() == Rows() && a->Cols() == Cols(), "sum terms have shapes ",
                  a->Rows(), "x", a->Cols(), " and ", Rows(), "x", Cols());
  }
}

CVector SumOperator::Apply(const CVector &x) const
{
  CVector y = CVector::Zero(Rows());
  for (const auto &[c, a] : terms_)
  {
    y += c * a->Apply(x);
  }
  return y;
}

CMatrix SumOperator::ApplyMatrix(const CMatrix &x) const
{
  CMatrix y = CMatrix::Zero(Rows(), x.cols());
  for (const auto &[c, a] : terms_)
  {
    y += c * a->ApplyMatrix(x);
  }
  return y;
}

CMatrix SumOperator::ToDense() const
{
  CMatrix y = CMatrix::Zero(Rows(), Cols());
  for (const auto &[c, a] : terms_)
  {
    y += c * a->ToDense();
  }
  return y;
}

ProductOperator::ProductOperator(std::vector<OperatorPtr> factors) : factors_(std::move(factors))
{
  FEMBEM_VERIFY(!factors_.empty(), "product of operators needs at least one factor");
  for (std::size_t i = 0; i + 1 < factors_.size(); i++)
  {
    FEMBEM_VERIFY(factors_[i]->Cols() == factors_[i + 1]->Rows(), "product factor ", i,
                  " has ", factors_[i]->Cols(), " columns but factor ", i + 1, " has ",
                  factors_[i + 1]->Rows(), " rows");
  }
}

CVector ProductOperator::Apply(const CVector &x) const
{
  CVector y = x;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
  {
    y = (*it)->Apply(y);
  }
  return y;
}

CMatrix ProductOperator::ApplyMatrix(const CMatrix &x) const
{
  CMatrix y = x;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
  {
    y = (*it)->ApplyMatrix(y);
  }
  return y;
}

CMatrix ProductOperator::ToDense() const
{
  // A trailing sparse factor is applied from the right to the densified prefix.
  if (factors_.size() > 1 && factors_.back()->Kind() == OperatorKind::Sparse)
  {
    if (const auto *s = dynamic_cast<const SparseOperator *>(factors_.back().get()))
    {
      std::vector<OperatorPtr> prefix(factors_.begin(), factors_.end() - 1);
      return ProductOperator(std::move(prefix)).ToDense() * s->Matrix();
    }
  }
  CMatrix y = factors_.back()->ToDense();
  for (auto it = factors_.rbegin() + 1; it != factors_.rend(); ++it)
  {
    y = (*it)->ApplyMatrix(y);
  }
  return y;
}

OperatorPtr MakeDense(CMatrix m)
{
  return std::make_shared<DenseOperator>(std::move(m));
}

OperatorPtr MakeSparse(CSparse m)
{
  return std::make_shared<SparseOperator>(std::move(m));
}

OperatorPtr MakeSparse(const RSparse &m)
{
  return std::make_shared<SparseOperator>(m.cast<Complex>());
}

OperatorPtr MakeSum(std::vector<std::pair<Complex, OperatorPtr>> terms)
{
  return std::make_shared<SumOperator>(std::move(terms));
}

OperatorPtr MakeProduct(std::vector<OperatorPtr> factors)
{
  return std::make_shared<ProductOperator>(std::move(factors));
}

OperatorPtr MakeOsrc(OsrcOperator op)
{
  return std::make_shared<OsrcBlock>(std::move(op));
}

OperatorPtr Scale(Complex c, OperatorPtr a)
{
  return MakeSum({{c, std::move(a)}});
}

BlockOperator::BlockOperator(std::vector<SpaceTag> layout, std::vector<Index> sizes)
  : layout_(std::move(layout)), sizes_(std::move(sizes))
{
  FEMBEM_VERIFY(layout_.size() == sizes_.size(), "block layout has ", layout_.size(),
                " spaces but ", sizes_.size(), " sizes");
  offsets_.assign(sizes_.size() + 1, 0);
  for (std::size_t i = 0; i < sizes_.size(); i++)
  {
    offsets_[i + 1] = offsets_[i] + sizes_[i];
  }
  grid_.assign(sizes_.size(), std::vector<OperatorPtr>(sizes_.size()));
}

void BlockOperator::Set(std::size_t row, std::size_t col, OperatorPtr block)
{
  FEMBEM_VERIFY(row < NumBlocks() && col < NumBlocks(), "block (", row, ", ", col,
                ") outside a ", NumBlocks(), "x", NumBlocks(), " grid");
  if (block)
  {
    FEMBEM_VERIFY(block->Rows() == sizes_[row] && block->Cols() == sizes_[col], "block (", row,
                  ", ", col, ") has shape ", block->Rows(), "x", block->Cols(), ", expected ",
                  sizes_[row], "x", sizes_[col]);
    if (block->Kind() == OperatorKind::Zero)
    {
      block = nullptr;
    }
  }
  grid_[row][col] = std::move(block);
}

CVector BlockOperator::Apply(const CVector &x) const
{
  FEMBEM_VERIFY(x.size() == Cols(), "block operator expects ", Cols(), " entries, got ",
                x.size());
  CVector y = CVector::Zero(Rows());
  for (std::size_t i = 0; i < NumBlocks(); i++)
  {
    for (std::size_t j = 0; j < NumBlocks(); j++)
    {
      if (grid_[i][j])
      {
        y.segment(offsets_[i], sizes_[i]) +=
            grid_[i][j]->Apply(x.segment(offsets_[j], sizes_[j]));
      }
    }
  }
  return y;
}

CMatrix BlockOperator::ToDense() const
{
  CMatrix m = CMatrix::Zero(Rows(), Cols());
  for (std::size_t i = 0; i < NumBlocks(); i++)
  {
    for (std::size_t j = 0; j < NumBlocks(); j++)
    {
      if (grid_[i][j])
      {
        m.block(offsets_[i], offsets_[j], sizes_[i], sizes_[j]) = grid_[i][j]->ToDense();
      }
    }
  }
  return m;
}

BlockOperator BlockOperator::PermuteRows(const std::vector<std::size_t> &order,
                                         const std::vector<double> &sign) const
{
  FEMBEM_VERIFY(order.size() == NumBlocks() && sign.size() == NumBlocks(),
                "row permutation needs one entry per block row");
  BlockOperator p(layout_, sizes_);
  for (std::size_t i = 0; i < NumBlocks(); i++)
  {
    FEMBEM_VERIFY(order[i] < NumBlocks(), "row permutation index out of range");
    FEMBEM_VERIFY(sizes_[order[i]] == sizes_[i], "row permutation swaps blocks of sizes ",
                  sizes_[order[i]], " and ", sizes_[i]);
    for (std::size_t j = 0; j < NumBlocks(); j++)
    {
      const OperatorPtr &b = grid_[order[i]][j];
      if (b)
      {
        p.grid_[i][j] = sign[i] == 1.0 ? b : Scale(sign[i], b);
      }
    }
  }
  return p;
}

}  // namespace fembem

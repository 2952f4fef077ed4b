// Copyright fembem contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef FEMBEM_COMMON_HPP
#define FEMBEM_COMMON_HPP

#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace fembem
{

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CSparse = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using RSparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Index = Eigen::Index;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex iu{0.0, 1.0};

// Base class for all errors raised by the library. Callers that only need a message can
// catch std::runtime_error.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Invalid input (bad configuration, unsupported mesh cell, incompatible spaces).
class InvalidArgument : public Error
{
public:
  using Error::Error;
};

// Numerical failure (singular factorization, breakdown).
class NumericalError : public Error
{
public:
  using Error::Error;
};

// File could not be read or written.
class IoError : public Error
{
public:
  using Error::Error;
};

namespace detail
{

template <typename... Args>
std::string Concat(const Args &...args)
{
  std::ostringstream os;
  (os << ... << args);
  return os.str();
}

}  // namespace detail

}  // namespace fembem

#define FEMBEM_VERIFY(cond, ...)                                                        \
  do                                                                                    \
  {                                                                                     \
    if (!(cond))                                                                        \
    {                                                                                   \
      throw ::fembem::InvalidArgument(::fembem::detail::Concat(__VA_ARGS__));           \
    }                                                                                   \
  } while (0)

#endif  // FEMBEM_COMMON_HPP

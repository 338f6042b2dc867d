#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pcax {

/// Dense row-major matrix of doubles. At least 1x1; entries constructed
/// from user data are checked to be finite.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) {
    return {entries_.data() + i * cols_, cols_};
  }

  const std::vector<double>& data() const { return entries_; }

  bool all_finite() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

/// Eigenpairs of a symmetric matrix. values are sorted non-increasing and
/// row i of vectors is the eigenvector of values[i]. Each eigenvector is
/// oriented so that its entry of largest absolute value is non-negative
/// (ties broken by lowest index); eigenvector bases inside a repeated
/// eigenvalue are convention-dependent.
struct EigenPairs {
  std::vector<double> values;
  Matrix vectors;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

double trace(const Matrix& a);
double frobenius_norm(const Matrix& a);

/// Determinant via LU with partial pivoting.
double determinant(const Matrix& a);

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Converges when the off-diagonal Frobenius norm drops below
/// 1e-12 * ||k||_F, capped at 100 sweeps.
///
/// Throws InvalidArgumentError for non-square input, NumericalError for
/// asymmetry beyond 1e-9 relative tolerance or failure to converge.
EigenPairs symmetric_eigen(const Matrix& k);

/// Solves a x = b by LU with partial pivoting. b may have several columns.
/// A pivot below 1e-12 * ||a||_F is treated as singular (NumericalError).
Matrix solve_linear(const Matrix& a, const Matrix& b);

/// Cholesky factor L (lower triangular, a = L L^T) of a symmetric
/// positive-definite matrix. Throws NumericalError when a diagonal pivot
/// falls below 1e-12 times the largest diagonal entry.
Matrix cholesky_lower(const Matrix& a);

/// Solve L x = b (L lower triangular) / U x = b (U upper triangular).
Matrix solve_lower_triangular(const Matrix& l, const Matrix& b);
Matrix solve_upper_triangular(const Matrix& u, const Matrix& b);

/// Uniformly seeded random orthogonal matrix (Gaussian fill + modified
/// Gram-Schmidt with re-orthogonalization). Deterministic for a fixed seed.
Matrix random_orthogonal(std::size_t n, std::uint64_t seed);

}  // namespace pcax

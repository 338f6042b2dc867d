#include "pcax/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "pcax/errors.hpp"
#include "pcax/rng.hpp"

namespace pcax {

namespace {

constexpr double kJacobiRelTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kSymmetryRelTol = 1e-9;
constexpr double kPivotRelTol = 1e-12;

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw InvalidArgumentError("matrix dimensions must be at least 1x1");
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {
  check_dims(rows, cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  check_dims(rows, cols);
  if (entries_.size() != rows_ * cols_) {
    throw InvalidArgumentError("entry count does not match matrix shape");
  }
  if (!all_finite()) {
    throw InvalidArgumentError("matrix entries must be finite");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

bool Matrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](double v) { return std::isfinite(v); });
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw InvalidArgumentError(
        "matmul dimension mismatch: " + std::to_string(a.rows()) + "x" +
        std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
        std::to_string(b.cols()));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(j, i) = a(i, j);
    }
  }
  return out;
}

double trace(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw InvalidArgumentError("trace requires a square matrix");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, i);
  return sum;
}

double frobenius_norm(const Matrix& a) {
  double sum = 0.0;
  for (double v : a.data()) sum += v * v;
  return std::sqrt(sum);
}

namespace {

struct LuFactors {
  Matrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  double min_pivot = 0.0;
};

LuFactors lu_factor(const Matrix& a) {
  const std::size_t n = a.rows();
  LuFactors f{a, std::vector<std::size_t>(n), 1, 0.0};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  f.min_pivot = std::numeric_limits<double>::infinity();
  Matrix& lu = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        piv = i;
      }
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.sign = -f.sign;
    }
    f.min_pivot = std::min(f.min_pivot, std::abs(lu(k, k)));
    if (lu(k, k) == 0.0) continue;  // column already eliminated; det is 0
    for (std::size_t i = k + 1; i < n; ++i) {
      lu(i, k) /= lu(k, k);
      const double lik = lu(i, k);
      if (lik == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) {
        lu(i, j) -= lik * lu(k, j);
      }
    }
  }
  return f;
}

}  // namespace

double determinant(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw InvalidArgumentError("determinant requires a square matrix");
  }
  const LuFactors f = lu_factor(a);
  double det = static_cast<double>(f.sign);
  for (std::size_t i = 0; i < a.rows(); ++i) det *= f.lu(i, i);
  return det;
}

Matrix solve_linear(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) {
    throw InvalidArgumentError("solve_linear requires a square matrix");
  }
  if (a.rows() != b.rows()) {
    throw InvalidArgumentError("solve_linear shape mismatch between a and b");
  }
  const LuFactors f = lu_factor(a);
  if (f.min_pivot < kPivotRelTol * frobenius_norm(a)) {
    throw NumericalError("solve_linear: matrix is singular within tolerance");
  }
  const std::size_t n = a.rows();
  Matrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      x(i, j) = b(f.perm[i], j);
    }
  }
  // Forward substitution with unit lower triangle, then back substitution.
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      const double lik = f.lu(i, k);
      if (lik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) -= lik * x(k, j);
    }
  }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) {
      const double uik = f.lu(ii, k);
      if (uik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) x(ii, j) -= uik * x(k, j);
    }
    for (std::size_t j = 0; j < b.cols(); ++j) x(ii, j) /= f.lu(ii, ii);
  }
  return x;
}

EigenPairs symmetric_eigen(const Matrix& k) {
  if (k.rows() != k.cols()) {
    throw InvalidArgumentError("symmetric_eigen requires a square matrix");
  }
  const std::size_t n = k.rows();
  const double norm = frobenius_norm(k);

  double asym = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = k(i, j) - k(j, i);
      asym += 2.0 * d * d;
    }
  }
  if (std::sqrt(asym) > kSymmetryRelTol * std::max(norm, 1e-300)) {
    throw NumericalError("symmetric_eigen: input asymmetric beyond tolerance");
  }

  // Work on the symmetrized copy so the rotations see an exactly symmetric
  // matrix.
  Matrix a = k;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (k(i, j) + k(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
  }

  Matrix v = Matrix::identity(n);
  const double stop = kJacobiRelTol * norm;

  auto off_norm = [&a, n]() {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * a(i, j) * a(i, j);
    }
    return std::sqrt(sum);
  };

  bool converged = n == 1 || off_norm() <= stop;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = a(i, p);
          const double aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(p, i) = a(i, p);
          a(i, q) = s * aip + c * aiq;
          a(q, i) = a(i, q);
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v(i, p);
          const double viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
    converged = off_norm() <= stop;
  }
  if (!converged) {
    throw NumericalError("symmetric_eigen: Jacobi sweeps did not converge");
  }

  // Sort non-increasing; stable so degenerate eigenvalues keep the order the
  // sweeps produced.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&a](std::size_t x, std::size_t y) {
                     return a(x, x) > a(y, y);
                   });

  EigenPairs out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t col = order[r];
    out.values[r] = a(col, col);
    std::size_t dominant = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = std::abs(v(i, col));
      if (mag > best) {
        best = mag;
        dominant = i;
      }
    }
    const double flip = v(dominant, col) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      out.vectors(r, i) = flip * v(i, col);
    }
  }
  return out;
}

Matrix cholesky_lower(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw InvalidArgumentError("cholesky_lower requires a square matrix");
  }
  const std::size_t n = a.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i));

  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a(i, j);
      for (std::size_t k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
      if (i == j) {
        if (sum <= kPivotRelTol * std::max(max_diag, 1e-300)) {
          throw NumericalError(
              "cholesky_lower: matrix not positive definite within tolerance");
        }
        l(i, i) = std::sqrt(sum);
      } else {
        l(i, j) = sum / l(j, j);
      }
    }
  }
  return l;
}

Matrix solve_lower_triangular(const Matrix& l, const Matrix& b) {
  if (l.rows() != l.cols() || l.rows() != b.rows()) {
    throw InvalidArgumentError("solve_lower_triangular shape mismatch");
  }
  const std::size_t n = l.rows();
  Matrix x = b;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      const double lik = l(i, k);
      if (lik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) -= lik * x(k, j);
    }
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) /= l(i, i);
  }
  return x;
}

Matrix solve_upper_triangular(const Matrix& u, const Matrix& b) {
  if (u.rows() != u.cols() || u.rows() != b.rows()) {
    throw InvalidArgumentError("solve_upper_triangular shape mismatch");
  }
  const std::size_t n = u.rows();
  Matrix x = b;
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) {
      const double uik = u(ii, k);
      if (uik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) x(ii, j) -= uik * x(k, j);
    }
    for (std::size_t j = 0; j < b.cols(); ++j) x(ii, j) /= u(ii, ii);
  }
  return x;
}

Matrix random_orthogonal(std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw InvalidArgumentError("random_orthogonal requires n >= 1");
  }
  Rng rng(seed);
  Matrix q(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    while (true) {
      std::vector<double> x(n);
      for (auto& v : x) v = rng.gaussian();
      // Two Gram-Schmidt passes keep the columns orthogonal to roundoff.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t prev = 0; prev < col; ++prev) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += x[i] * q(i, prev);
          for (std::size_t i = 0; i < n; ++i) x[i] -= dot * q(i, prev);
        }
      }
      double norm = 0.0;
      for (double v : x) norm += v * v;
      norm = std::sqrt(norm);
      if (norm > 1e-8) {
        for (std::size_t i = 0; i < n; ++i) q(i, col) = x[i] / norm;
        break;
      }
    }
  }
  return q;
}

}  // namespace pcax

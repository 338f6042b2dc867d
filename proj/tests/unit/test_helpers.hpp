#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "pcax/matrix.hpp"
#include "pcax/rng.hpp"
#include "pcax/stats.hpp"

namespace pcax::testing {

inline Matrix random_matrix(std::size_t rows, std::size_t cols,
                            std::uint64_t seed, double scale = 1.0) {
  Rng rng(seed);
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      out(i, j) = scale * rng.gaussian();
    }
  }
  return out;
}

inline Matrix random_symmetric(std::size_t n, std::uint64_t seed,
                               double scale = 1.0) {
  Rng rng(seed);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = scale * rng.gaussian();
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

inline std::vector<std::string> feature_names(std::size_t n) {
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = "f" + std::to_string(i + 1);
  return names;
}

inline DataMatrix random_dataset(std::size_t n, std::size_t q,
                              std::uint64_t seed, double scale = 1.0) {
  return DataMatrix(feature_names(n), random_matrix(n, q, seed, scale));
}

// Entry-by-entry triple loop, the independent product oracle.
inline Matrix oracle_matmul(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
      out(i, j) = sum;
    }
  }
  return out;
}

// Cofactor-expansion determinant, independent of the library's LU route.
// Exponential cost; keep n small.
inline double oracle_det_cofactor(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t col = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, col++) = a(i, j);
      }
    }
    const double sign = c % 2 == 0 ? 1.0 : -1.0;
    det += sign * a(0, c) * oracle_det_cofactor(minor);
  }
  return det;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    }
  }
  return worst;
}

inline std::string test_data_dir() {
#ifdef PCAX_TEST_DATA_DIR
  return PCAX_TEST_DATA_DIR;
#else
  return "data";
#endif
}

inline double sample_variance(std::span<const double> xs) {
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(xs.size() - 1);
}

}  // namespace pcax::testing

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pcax/matrix.hpp"

namespace pcax {

/// A dataset laid out features-by-objects: row i holds the N_i-th measurement
/// across all Q objects. Feature names are unique, values finite, Q >= 2.
struct DataMatrix {
  std::vector<std::string> feature_names;
  Matrix values;

  DataMatrix(std::vector<std::string> names, Matrix data);

  std::size_t n_features() const { return values.rows(); }
  std::size_t n_objects() const { return values.cols(); }
};

/// Per-feature means and standard deviations (Q-1 denominator throughout,
/// so that the covariance of standardized data is exactly the Pearson
/// correlation matrix).
struct SummaryStats {
  std::vector<double> means;
  std::vector<double> stds;
};

enum class ZeroStdPolicy { error, drop };

struct StandardizeResult {
  DataMatrix data;
  SummaryStats stats;              // aligned with data rows (kept features)
  std::vector<std::size_t> kept;   // indices into the input features
};

SummaryStats summarize(const DataMatrix& x);

/// Subtracts the per-feature mean from every row.
DataMatrix center(const DataMatrix& x);

/// Centers and divides every row by its standard deviation. Zero-variance
/// features are dropped or rejected according to the policy.
StandardizeResult standardize(const DataMatrix& x, ZeroStdPolicy policy);

/// Covariance matrix (1/(Q-1)) X X^T of already-centered data. Row means
/// must vanish relative to the row dispersion; enforced.
Matrix covariance_matrix(const DataMatrix& x_hat);

/// Pearson correlation coefficient of two non-constant samples, clamped to
/// [-1, 1].
double pearson(std::span<const double> x1, std::span<const double> x2);

/// Raw correlation E[X1 X2]: plain mean of the elementwise products.
double correlation_raw(std::span<const double> x1, std::span<const double> x2);

}  // namespace pcax

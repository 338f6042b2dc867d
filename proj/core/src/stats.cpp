#include "pcax/stats.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

#include "pcax/errors.hpp"

namespace pcax {

DataMatrix::DataMatrix(std::vector<std::string> names, Matrix data)
    : feature_names(std::move(names)), values(std::move(data)) {
  if (feature_names.size() != values.rows()) {
    throw InvalidArgumentError("feature name count does not match row count");
  }
  if (values.cols() < 2) {
    throw InvalidArgumentError("a DataMatrix needs at least 2 objects");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : feature_names) {
    if (!seen.insert(name).second) {
      throw InvalidArgumentError("duplicate feature name: " + name);
    }
  }
  if (!values.all_finite()) {
    throw InvalidArgumentError("DataMatrix values must be finite");
  }
}

SummaryStats summarize(const DataMatrix& x) {
  const std::size_t n = x.n_features();
  const std::size_t q = x.n_objects();
  SummaryStats out{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = x.values.row(i);
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= static_cast<double>(q);
    double ss = 0.0;
    for (double v : row) {
      const double d = v - mean;
      ss += d * d;
    }
    out.means[i] = mean;
    out.stds[i] = std::sqrt(ss / static_cast<double>(q - 1));
  }
  return out;
}

DataMatrix center(const DataMatrix& x) {
  const SummaryStats stats = summarize(x);
  Matrix values = x.values;
  for (std::size_t i = 0; i < x.n_features(); ++i) {
    for (double& v : values.row(i)) v -= stats.means[i];
  }
  return DataMatrix(x.feature_names, std::move(values));
}

StandardizeResult standardize(const DataMatrix& x, ZeroStdPolicy policy) {
  const SummaryStats stats = summarize(x);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < x.n_features(); ++i) {
    if (stats.stds[i] > 0.0) {
      kept.push_back(i);
    } else if (policy == ZeroStdPolicy::error) {
      throw DataError("zero-variance feature: " + x.feature_names[i]);
    }
  }
  if (kept.empty()) {
    throw DataError("standardize dropped every feature (all zero variance)");
  }

  Matrix values(kept.size(), x.n_objects());
  std::vector<std::string> names(kept.size());
  SummaryStats kept_stats{std::vector<double>(kept.size()),
                          std::vector<double>(kept.size())};
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const std::size_t i = kept[r];
    names[r] = x.feature_names[i];
    kept_stats.means[r] = stats.means[i];
    kept_stats.stds[r] = stats.stds[i];
    const auto src = x.values.row(i);
    auto dst = values.row(r);
    for (std::size_t j = 0; j < src.size(); ++j) {
      dst[j] = (src[j] - stats.means[i]) / stats.stds[i];
    }
  }
  return {DataMatrix(std::move(names), std::move(values)),
          std::move(kept_stats), std::move(kept)};
}

Matrix covariance_matrix(const DataMatrix& x_hat) {
  const SummaryStats stats = summarize(x_hat);
  for (std::size_t i = 0; i < x_hat.n_features(); ++i) {
    const double scale = stats.stds[i] > 0.0 ? stats.stds[i] : 1.0;
    if (std::abs(stats.means[i]) > 1e-9 * scale) {
      throw DataError("covariance_matrix requires centered data (feature " +
                      x_hat.feature_names[i] + " has non-zero mean)");
    }
  }
  const std::size_t n = x_hat.n_features();
  const std::size_t q = x_hat.n_objects();
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = x_hat.values.row(i);
    for (std::size_t j = i; j < n; ++j) {
      const auto rj = x_hat.values.row(j);
      double sum = 0.0;
      for (std::size_t c = 0; c < q; ++c) sum += ri[c] * rj[c];
      const double kij = sum / static_cast<double>(q - 1);
      k(i, j) = kij;
      k(j, i) = kij;
    }
  }
  return k;
}

namespace {

void check_pair(std::span<const double> x1, std::span<const double> x2,
                std::size_t min_len) {
  if (x1.size() != x2.size()) {
    throw InvalidArgumentError("vector length mismatch");
  }
  if (x1.size() < min_len) {
    throw InvalidArgumentError("vectors too short");
  }
}

}  // namespace

double pearson(std::span<const double> x1, std::span<const double> x2) {
  check_pair(x1, x2, 2);
  const double q = static_cast<double>(x1.size());
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < x1.size(); ++i) {
    m1 += x1[i];
    m2 += x2[i];
  }
  m1 /= q;
  m2 /= q;
  double s11 = 0.0;
  double s22 = 0.0;
  double s12 = 0.0;
  for (std::size_t i = 0; i < x1.size(); ++i) {
    const double d1 = x1[i] - m1;
    const double d2 = x2[i] - m2;
    s11 += d1 * d1;
    s22 += d2 * d2;
    s12 += d1 * d2;
  }
  if (s11 == 0.0 || s22 == 0.0) {
    throw DataError("pearson undefined for a constant input");
  }
  return std::clamp(s12 / std::sqrt(s11 * s22), -1.0, 1.0);
}

double correlation_raw(std::span<const double> x1,
                       std::span<const double> x2) {
  check_pair(x1, x2, 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < x1.size(); ++i) sum += x1[i] * x2[i];
  return sum / static_cast<double>(x1.size());
}

}  // namespace pcax

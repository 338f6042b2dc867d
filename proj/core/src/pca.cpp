#include "pcax/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <json.hpp>

#include "pcax/errors.hpp"

namespace pcax {

std::string to_string(PcaMode mode) {
  return mode == PcaMode::covariance ? "covariance" : "correlation";
}

PcaMode pca_mode_from_string(const std::string& s) {
  if (s == "covariance") return PcaMode::covariance;
  if (s == "correlation") return PcaMode::correlation;
  throw InvalidArgumentError("unknown PCA mode: " + s);
}

namespace {

// Eigenvalues of a covariance matrix are non-negative; negatives within
// 1e-10 * lambda_1 are roundoff and clamp to zero, anything larger is a
// genuine failure.
std::vector<double> clamp_eigenvalues(std::vector<double> values) {
  const double lead = values.empty() ? 0.0 : std::max(values.front(), 0.0);
  const double tol = 1e-10 * lead;
  for (double& v : values) {
    if (v < -tol) {
      throw NumericalError(
          "negative eigenvalue beyond roundoff tolerance in covariance "
          "eigendecomposition");
    }
    if (v < 0.0) v = 0.0;
  }
  return values;
}

}  // namespace

PcaModel fit(const DataMatrix& x, PcaMode mode, ZeroStdPolicy policy) {
  if (mode == PcaMode::correlation) {
    StandardizeResult std_result = standardize(x, policy);
    EigenPairs eig = symmetric_eigen(covariance_matrix(std_result.data));
    return PcaModel{mode,
                    std_result.data.feature_names,
                    std_result.stats.means,
                    std_result.stats.stds,
                    clamp_eigenvalues(std::move(eig.values)),
                    std::move(eig.vectors)};
  }
  const SummaryStats stats = summarize(x);
  EigenPairs eig = symmetric_eigen(covariance_matrix(center(x)));
  return PcaModel{mode,
                  x.feature_names,
                  stats.means,
                  std::nullopt,
                  clamp_eigenvalues(std::move(eig.values)),
                  std::move(eig.vectors)};
}

Matrix transform(const PcaModel& model, const DataMatrix& x, std::size_t m) {
  if (x.feature_names != model.feature_names) {
    throw InvalidArgumentError(
        "transform: input features do not match the model's features");
  }
  const std::size_t n = model.n_features();
  if (m < 1 || m > n) {
    throw InvalidArgumentError("transform: m out of range");
  }
  Matrix pre = x.values;
  for (std::size_t i = 0; i < n; ++i) {
    const double mean = model.means[i];
    const double scale = model.scales ? (*model.scales)[i] : 1.0;
    for (double& v : pre.row(i)) v = (v - mean) / scale;
  }
  Matrix y(m, x.n_objects());
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const double w = model.w(r, k);
      if (w == 0.0) continue;
      const auto src = pre.row(k);
      auto dst = y.row(r);
      for (std::size_t j = 0; j < src.size(); ++j) dst[j] += w * src[j];
    }
  }
  return y;
}

VarianceReport variance_report(const PcaModel& model) {
  VarianceReport report{0.0, {}, {}};
  report.cumulative.reserve(model.eigenvalues.size());
  double running = 0.0;
  for (double v : model.eigenvalues) {
    running += v;
    report.cumulative.push_back(running);
  }
  report.total = report.cumulative.back();
  if (report.total <= 0.0) {
    throw DataError("variance_report: all eigenvalues are zero");
  }
  report.ratios.reserve(report.cumulative.size());
  for (double c : report.cumulative) {
    report.ratios.push_back(100.0 * (c / report.total));
  }
  return report;
}

std::size_t select_components(const VarianceReport& report, double target_g) {
  if (!(target_g > 0.0) || target_g > 100.0) {
    throw InvalidArgumentError("select_components: target must be in (0, 100]");
  }
  for (std::size_t m = 0; m < report.ratios.size(); ++m) {
    if (report.ratios[m] >= target_g - 1e-9) return m + 1;
  }
  return report.ratios.size();
}

Matrix loadings(const PcaModel& model) {
  if (model.mode != PcaMode::correlation) {
    throw InvalidArgumentError(
        "loadings are Pearson correlations only for correlation-mode models");
  }
  const std::size_t n = model.n_features();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double root = std::sqrt(std::max(model.eigenvalues[i], 0.0));
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = root * model.w(i, j);
    }
  }
  return out;
}

BiplotData biplot_data(const PcaModel& model, const DataMatrix& x) {
  if (model.n_features() < 2) {
    throw InvalidArgumentError("biplot_data needs at least 2 features");
  }
  if (model.eigenvalues[1] <= 0.0) {
    throw DataError("biplot_data: second eigenvalue is zero");
  }
  Matrix scores = transform(model, x, 2);
  const std::size_t q = scores.cols();
  for (std::size_t r = 0; r < 2; ++r) {
    auto row = scores.row(r);
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= static_cast<double>(q);
    double ss = 0.0;
    for (double v : row) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(q - 1));
    if (sd == 0.0) {
      throw DataError("biplot_data: component " + std::to_string(r + 1) +
                      " has zero dispersion on this data");
    }
    for (double& v : row) v /= sd;
  }
  const Matrix load = loadings(model);
  Matrix vectors(model.n_features(), 2);
  for (std::size_t j = 0; j < model.n_features(); ++j) {
    vectors(j, 0) = load(0, j);
    vectors(j, 1) = load(1, j);
  }
  return {std::move(scores), std::move(vectors)};
}

double entropy_logdet(const Matrix& cov) {
  const EigenPairs eig = symmetric_eigen(cov);
  double sum = 0.0;
  for (double v : eig.values) {
    if (v <= 0.0) {
      throw DataError("entropy_logdet requires a positive-definite matrix");
    }
    sum += std::log(2.0 * std::numbers::pi * std::numbers::e * v);
  }
  return 0.5 * sum;
}

std::string pca_model_to_json(const PcaModel& model) {
  nlohmann::json doc{
      {"kind", "pca"},
      {"mode", to_string(model.mode)},
      {"feature_names", model.feature_names},
      {"means", model.means},
      {"eigenvalues", model.eigenvalues},
      {"w", model.w.data()},
  };
  if (model.scales) doc["scales"] = *model.scales;
  return doc.dump(2);
}

PcaModel pca_model_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid model JSON: ") + e.what());
  }
  try {
    if (doc.at("kind").get<std::string>() != "pca") {
      throw DataError("model JSON is not a PCA model");
    }
    const PcaMode mode = pca_mode_from_string(doc.at("mode"));
    auto names = doc.at("feature_names").get<std::vector<std::string>>();
    auto means = doc.at("means").get<std::vector<double>>();
    auto values = doc.at("eigenvalues").get<std::vector<double>>();
    auto w_data = doc.at("w").get<std::vector<double>>();
    const std::size_t n = names.size();
    std::optional<std::vector<double>> scales;
    if (doc.contains("scales")) {
      scales = doc.at("scales").get<std::vector<double>>();
    }
    if ((mode == PcaMode::correlation) != scales.has_value()) {
      throw DataError("model JSON: scales must be present exactly for "
                      "correlation mode");
    }
    if (means.size() != n || values.size() != n || w_data.size() != n * n ||
        (scales && scales->size() != n)) {
      throw DataError("model JSON: inconsistent field sizes");
    }
    return PcaModel{mode,
                    std::move(names),
                    std::move(means),
                    std::move(scales),
                    std::move(values),
                    Matrix(n, n, std::move(w_data))};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid model JSON: ") + e.what());
  }
}

}  // namespace pcax

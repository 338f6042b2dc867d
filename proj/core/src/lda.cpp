#include "pcax/lda.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <json.hpp>

#include "pcax/errors.hpp"

namespace pcax {

LabeledData::LabeledData(DataMatrix d, std::vector<int> ids,
                         std::vector<std::string> names)
    : data(std::move(d)), labels(std::move(ids)), class_names(std::move(names)) {
  if (labels.size() != data.n_objects()) {
    throw InvalidArgumentError("label count does not match object count");
  }
  if (class_names.empty()) {
    throw InvalidArgumentError("at least one class is required");
  }
  std::vector<std::size_t> counts(class_names.size(), 0);
  for (int id : labels) {
    if (id < 0 || static_cast<std::size_t>(id) >= class_names.size()) {
      throw InvalidArgumentError("label id out of range");
    }
    ++counts[static_cast<std::size_t>(id)];
  }
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] < 2) {
      throw DataError("category " + class_names[j] +
                      " has fewer than 2 members");
    }
  }
}

std::vector<std::size_t> LabeledData::class_counts() const {
  std::vector<std::size_t> counts(class_names.size(), 0);
  for (int id : labels) ++counts[static_cast<std::size_t>(id)];
  return counts;
}

ScatterMatrices scatter_matrices(const LabeledData& d) {
  const std::size_t n = d.data.n_features();
  const std::size_t q = d.data.n_objects();
  const std::size_t k = d.n_classes();

  std::vector<std::size_t> counts = d.class_counts();
  Matrix centroids(n, k);
  std::vector<double> global_mean(n, 0.0);
  for (std::size_t j = 0; j < q; ++j) {
    const auto cls = static_cast<std::size_t>(d.labels[j]);
    for (std::size_t i = 0; i < n; ++i) {
      centroids(i, cls) += d.data.values(i, j);
      global_mean[i] += d.data.values(i, j);
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      centroids(i, c) /= static_cast<double>(counts[c]);
    }
  }
  for (double& v : global_mean) v /= static_cast<double>(q);

  Matrix intra(n, n);
  for (std::size_t j = 0; j < q; ++j) {
    const auto cls = static_cast<std::size_t>(d.labels[j]);
    for (std::size_t a = 0; a < n; ++a) {
      const double da = d.data.values(a, j) - centroids(a, cls);
      for (std::size_t b = a; b < n; ++b) {
        intra(a, b) += da * (d.data.values(b, j) - centroids(b, cls));
      }
    }
  }
  Matrix inter(n, n);
  for (std::size_t c = 0; c < k; ++c) {
    const double weight = static_cast<double>(counts[c]);
    for (std::size_t a = 0; a < n; ++a) {
      const double da = centroids(a, c) - global_mean[a];
      for (std::size_t b = a; b < n; ++b) {
        inter(a, b) += weight * da * (centroids(b, c) - global_mean[b]);
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      intra(b, a) = intra(a, b);
      inter(b, a) = inter(a, b);
    }
  }
  return {std::move(intra), std::move(inter)};
}

namespace {

struct SolvedAxes {
  Matrix axes;
  std::vector<double> eigenvalues;
};

// Eigenproblem of S_intra^-1 S_inter through the symmetric congruence
// L^-1 S_inter L^-T, mapping eigenvectors back with x = L^-T u.
SolvedAxes solve_discriminant(const Matrix& intra_ridged,
                              const Matrix& inter) {
  const std::size_t n = inter.rows();
  const Matrix l = cholesky_lower(intra_ridged);
  const Matrix t = solve_lower_triangular(l, inter);
  Matrix m = solve_lower_triangular(l, transpose(t));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  EigenPairs eig = symmetric_eigen(m);
  // The congruent problem is PSD; tiny negatives are roundoff.
  for (double& v : eig.values) v = std::max(v, 0.0);

  const Matrix u_cols = transpose(eig.vectors);        // columns = u_i
  const Matrix lt = transpose(l);
  Matrix a_cols = solve_upper_triangular(lt, u_cols);  // columns = axes
  Matrix axes(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += a_cols(i, r) * a_cols(i, r);
    norm = std::sqrt(norm);
    std::size_t dominant = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(a_cols(i, r)) > best) {
        best = std::abs(a_cols(i, r));
        dominant = i;
      }
    }
    const double flip = a_cols(dominant, r) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      axes(r, i) = flip * a_cols(i, r) / norm;
    }
  }
  return {std::move(axes), std::move(eig.values)};
}

}  // namespace

LdaModel fit_lda(const LabeledData& d, std::optional<double> ridge) {
  if (ridge && *ridge < 0.0) {
    throw InvalidArgumentError("ridge must be non-negative");
  }
  ScatterMatrices scatter = scatter_matrices(d);
  const std::size_t n = d.data.n_features();

  auto ridged = [&](double r) {
    Matrix a = scatter.intra;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += r;
    return a;
  };

  double ridge_used = ridge.value_or(0.0);
  SolvedAxes solved = [&] {
    try {
      return solve_discriminant(ridged(ridge_used), scatter.inter);
    } catch (const NumericalError&) {
      if (ridge.has_value()) throw;  // explicit ridge, including 0: no retry
      ridge_used = 1e-8 * trace(scatter.intra) / static_cast<double>(n);
      return solve_discriminant(ridged(ridge_used), scatter.inter);
    }
  }();

  const double lead = solved.eigenvalues.empty() ? 0.0 : solved.eigenvalues[0];
  std::size_t retained = 0;
  for (double v : solved.eigenvalues) {
    if (lead > 0.0 && v > 1e-9 * lead) ++retained;
  }

  const SummaryStats stats = summarize(d.data);
  return LdaModel{d.data.feature_names,
                  stats.means,
                  std::move(scatter.intra),
                  std::move(scatter.inter),
                  std::move(solved.axes),
                  std::move(solved.eigenvalues),
                  retained,
                  ridge_used,
                  d.class_names};
}

double LdaModel::separation_score() const {
  double sum = 0.0;
  for (double v : eigenvalues) sum += v;
  return sum;
}

Matrix transform_lda(const LdaModel& model, const DataMatrix& x,
                     std::size_t m) {
  if (x.feature_names != model.feature_names) {
    throw InvalidArgumentError(
        "transform_lda: input features do not match the model's features");
  }
  if (m < 1 || m > model.retained) {
    throw InvalidArgumentError("transform_lda: m out of range");
  }
  const std::size_t n = model.feature_names.size();
  Matrix y(m, x.n_objects());
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const double w = model.axes(r, k);
      if (w == 0.0) continue;
      const auto src = x.values.row(k);
      auto dst = y.row(r);
      for (std::size_t j = 0; j < src.size(); ++j) {
        dst[j] += w * (src[j] - model.mean[k]);
      }
    }
  }
  return y;
}

std::string lda_model_to_json(const LdaModel& model) {
  nlohmann::json doc{
      {"kind", "lda"},
      {"feature_names", model.feature_names},
      {"mean", model.mean},
      {"s_intra", model.s_intra.data()},
      {"s_inter", model.s_inter.data()},
      {"axes", model.axes.data()},
      {"eigenvalues", model.eigenvalues},
      {"retained", model.retained},
      {"ridge_used", model.ridge_used},
      {"class_names", model.class_names},
  };
  return doc.dump(2);
}

LdaModel lda_model_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid model JSON: ") + e.what());
  }
  try {
    if (doc.at("kind").get<std::string>() != "lda") {
      throw DataError("model JSON is not an LDA model");
    }
    auto names = doc.at("feature_names").get<std::vector<std::string>>();
    auto mean = doc.at("mean").get<std::vector<double>>();
    auto intra = doc.at("s_intra").get<std::vector<double>>();
    auto inter = doc.at("s_inter").get<std::vector<double>>();
    auto axes = doc.at("axes").get<std::vector<double>>();
    auto values = doc.at("eigenvalues").get<std::vector<double>>();
    const auto retained = doc.at("retained").get<std::size_t>();
    const auto ridge_used = doc.at("ridge_used").get<double>();
    auto class_names = doc.at("class_names").get<std::vector<std::string>>();
    const std::size_t n = names.size();
    if (mean.size() != n || values.size() != n || intra.size() != n * n ||
        inter.size() != n * n || axes.size() != n * n || retained > n) {
      throw DataError("model JSON: inconsistent field sizes");
    }
    return LdaModel{std::move(names),
                    std::move(mean),
                    Matrix(n, n, std::move(intra)),
                    Matrix(n, n, std::move(inter)),
                    Matrix(n, n, std::move(axes)),
                    std::move(values),
                    retained,
                    ridge_used,
                    std::move(class_names)};
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid model JSON: ") + e.what());
  }
}

}  // namespace pcax

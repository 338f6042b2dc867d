#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pcax/matrix.hpp"
#include "pcax/stats.hpp"

namespace pcax {

enum class PcaMode { covariance, correlation };

std::string to_string(PcaMode mode);
PcaMode pca_mode_from_string(const std::string& s);

/// Fitted PCA transformation: rows of w are the eigenvectors of the
/// covariance matrix of the preprocessed training data, eigenvalues are the
/// matching component variances (non-increasing, clamped at 0). Correlation
/// mode standardizes first and carries the per-feature scales.
struct PcaModel {
  PcaMode mode;
  std::vector<std::string> feature_names;
  std::vector<double> means;
  std::optional<std::vector<double>> scales;  // present iff mode==correlation
  std::vector<double> eigenvalues;
  Matrix w;  // N x N, row i = eigenvector i

  std::size_t n_features() const { return w.rows(); }
};

/// Cumulative variance accounting: total dispersion, running sums over the
/// leading components, and the conserved-variance ratios G(M) in percent.
struct VarianceReport {
  double total;
  std::vector<double> cumulative;
  std::vector<double> ratios;
};

/// Data for a two-component biplot: unit-variance component scores and one
/// 2-vector of loadings per feature. In correlation mode each loading
/// coordinate is the Pearson correlation between the component and the
/// standardized feature.
struct BiplotData {
  Matrix scores;    // 2 x Q
  Matrix loadings;  // N x 2
};

PcaModel fit(const DataMatrix& x, PcaMode mode,
             ZeroStdPolicy policy = ZeroStdPolicy::drop);

/// Projects data onto the leading m components, applying the training-set
/// centering (and scaling, in correlation mode) first. The input must carry
/// exactly the model's features in order.
Matrix transform(const PcaModel& model, const DataMatrix& x, std::size_t m);

VarianceReport variance_report(const PcaModel& model);

/// Smallest M whose variance ratio G(M) reaches target_g percent.
std::size_t select_components(const VarianceReport& report, double target_g);

/// Loading matrix, entry (i, j) = sqrt(lambda_i) * W_ij. Correlation mode
/// only; components with a zero eigenvalue load as zero.
Matrix loadings(const PcaModel& model);

BiplotData biplot_data(const PcaModel& model, const DataMatrix& x);

/// Differential entropy of a Gaussian with the given covariance up to the
/// additive convention: 0.5 * ln det(2 pi e cov), evaluated through the
/// eigenvalues.
double entropy_logdet(const Matrix& cov);

/// JSON document round-trip for a model; doubles are written in
/// shortest-round-trip form so a reloaded model transforms identically.
std::string pca_model_to_json(const PcaModel& model);
PcaModel pca_model_from_json(const std::string& text);

}  // namespace pcax

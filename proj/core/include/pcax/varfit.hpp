#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pcax/dataio.hpp"

namespace pcax {

/// Cumulative variance-ratio curve of one dataset: ys[i] = G(xs[i]) / 100,
/// non-decreasing and ending at 1. xs are component counts 1..N, or
/// fractions m/N when built normalized.
struct VarianceCurve {
  std::string dataset_name;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct AlphaFit {
  double alpha = 0.0;
  double rss = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Starting point for the exponential fit: exact for the first curve point,
/// -ln(1 - y_1) / x_1 clamped to [1e-6, 1e6]; 1.0 when that is undefined.
double default_alpha0(const VarianceCurve& curve);

/// Least-squares fit of f(x) = 1 - exp(-alpha x) to the curve by
/// Levenberg-Marquardt damping: lambda starts at 1e-3, x10 on a rejected
/// step, /10 on an accepted one; a step is accepted only when it lowers the
/// residual sum of squares. Converges when |delta alpha| <= tol * alpha or
/// the rss gradient magnitude falls below tol.
AlphaFit lm_fit_exponential(const VarianceCurve& curve, double alpha0,
                            std::size_t max_iter = 200, double tol = 1e-10);
AlphaFit lm_fit_exponential(const VarianceCurve& curve);

struct AlphaCorrelations {
  double vs_classes;
  double vs_samples;
  double vs_measurements;
  std::size_t n_with_classes;
  std::size_t n_total;
};

/// Pearson correlations of the fitted alphas against dataset properties.
/// fits[i] belongs to manifests[i]; datasets without a class count are
/// excluded from the class correlation. At least 3 datasets are required
/// for each correlation.
AlphaCorrelations alpha_property_correlations(
    std::span<const AlphaFit> fits, std::span<const DatasetManifest> manifests);

/// CSV document: dataset, alpha, rss, iterations, converged.
std::string alpha_fits_to_csv(std::span<const std::string> dataset_names,
                              std::span<const AlphaFit> fits);

}  // namespace pcax

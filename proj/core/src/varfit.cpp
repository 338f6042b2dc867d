#include "pcax/varfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcax/errors.hpp"
#include "pcax/stats.hpp"

namespace pcax {

namespace {

void validate_curve(const VarianceCurve& curve) {
  if (curve.xs.empty() || curve.xs.size() != curve.ys.size()) {
    throw InvalidArgumentError("variance curve is empty or inconsistent");
  }
}

double residual_sum(const VarianceCurve& curve, double alpha) {
  double rss = 0.0;
  for (std::size_t i = 0; i < curve.xs.size(); ++i) {
    const double r = curve.ys[i] - (1.0 - std::exp(-alpha * curve.xs[i]));
    rss += r * r;
  }
  return rss;
}

}  // namespace

double default_alpha0(const VarianceCurve& curve) {
  validate_curve(curve);
  const double x1 = curve.xs.front();
  const double y1 = curve.ys.front();
  if (y1 > 0.0 && y1 < 1.0 && x1 > 0.0) {
    return std::clamp(-std::log(1.0 - y1) / x1, 1e-6, 1e6);
  }
  return 1.0;
}

AlphaFit lm_fit_exponential(const VarianceCurve& curve) {
  return lm_fit_exponential(curve, default_alpha0(curve));
}

AlphaFit lm_fit_exponential(const VarianceCurve& curve, double alpha0,
                            std::size_t max_iter, double tol) {
  validate_curve(curve);
  if (!(alpha0 > 0.0)) {
    throw InvalidArgumentError("lm_fit_exponential requires alpha0 > 0");
  }

  double alpha = alpha0;
  double rss = residual_sum(curve, alpha);
  double damping = 1e-3;
  AlphaFit fit{alpha, rss, 0, false};

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    fit.iterations = iter + 1;
    // Jacobian of the model: df/dalpha = x exp(-alpha x).
    double jtj = 0.0;
    double jtr = 0.0;
    for (std::size_t i = 0; i < curve.xs.size(); ++i) {
      const double x = curve.xs[i];
      const double j = x * std::exp(-alpha * x);
      const double r = curve.ys[i] - (1.0 - std::exp(-alpha * x));
      jtj += j * j;
      jtr += j * r;
    }
    // Gradient of rss is -2 jtr; at a flat point we are done.
    if (std::abs(2.0 * jtr) <= tol) {
      fit.converged = true;
      break;
    }
    const double step = jtr / (jtj * (1.0 + damping));
    if (!std::isfinite(step)) {
      break;  // jtj underflowed; no usable direction left
    }
    const double candidate = alpha + step;
    const double candidate_rss =
        candidate > 0.0 ? residual_sum(curve, candidate)
                        : std::numeric_limits<double>::infinity();
    if (candidate_rss < rss) {
      alpha = candidate;
      rss = candidate_rss;
      damping = std::max(damping / 10.0, 1e-12);
      fit.alpha = alpha;
      fit.rss = rss;
      if (std::abs(step) <= tol * alpha) {
        fit.converged = true;
        break;
      }
    } else {
      damping *= 10.0;
      if (std::abs(step) <= tol * alpha) {
        fit.converged = true;
        break;
      }
    }
  }
  fit.alpha = alpha;
  fit.rss = rss;
  return fit;
}

AlphaCorrelations alpha_property_correlations(
    std::span<const AlphaFit> fits,
    std::span<const DatasetManifest> manifests) {
  if (fits.size() != manifests.size()) {
    throw InvalidArgumentError(
        "alpha_property_correlations: fits and manifests differ in length");
  }
  std::vector<double> alphas;
  std::vector<double> samples;
  std::vector<double> measurements;
  std::vector<double> alphas_with_classes;
  std::vector<double> classes;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    const auto& m = manifests[i];
    if (!m.expected_samples || !m.expected_measurements) {
      throw InvalidArgumentError("manifest " + m.name +
                                 " lacks sample/measurement counts");
    }
    alphas.push_back(fits[i].alpha);
    samples.push_back(static_cast<double>(*m.expected_samples));
    measurements.push_back(static_cast<double>(*m.expected_measurements));
    if (m.expected_classes) {
      alphas_with_classes.push_back(fits[i].alpha);
      classes.push_back(static_cast<double>(*m.expected_classes));
    }
  }
  if (alphas.size() < 3 || alphas_with_classes.size() < 3) {
    throw DataError(
        "alpha_property_correlations needs at least 3 datasets (3 of them "
        "labeled)");
  }
  return {pearson(alphas_with_classes, classes), pearson(alphas, samples),
          pearson(alphas, measurements), alphas_with_classes.size(),
          alphas.size()};
}

std::string alpha_fits_to_csv(std::span<const std::string> dataset_names,
                              std::span<const AlphaFit> fits) {
  if (dataset_names.size() != fits.size()) {
    throw InvalidArgumentError("alpha_fits_to_csv: length mismatch");
  }
  CsvWriter writer({"dataset", "alpha", "rss", "iterations", "converged"});
  for (std::size_t i = 0; i < fits.size(); ++i) {
    writer.add_row({dataset_names[i], format_double(fits[i].alpha),
                    format_double(fits[i].rss),
                    std::to_string(fits[i].iterations),
                    fits[i].converged ? "true" : "false"});
  }
  return writer.str();
}

}  // namespace pcax

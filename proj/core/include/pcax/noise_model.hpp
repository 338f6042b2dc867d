#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pcax {

/// Monte-Carlo study of measuring two perfectly correlated properties when
/// one measurement carries additive Gaussian noise: X1 = P, X2 = P + eps.
struct NoiseSimConfig {
  std::vector<double> ratio_grid;     // sigma_P / sigma_eps values
  std::size_t objects_per_trial = 200;
  std::size_t realizations = 1000;
  double sigma_eps = 0.5;
  std::uint64_t seed = 1;

  /// 30 log-spaced ratios in [0.1, 10].
  static std::vector<double> default_ratio_grid();
};

struct NoiseSimPoint {
  double ratio;
  double analytic_rho;
  double mean_rho;
  double std_rho;
  double mean_g1;  // percent explained by the first axis, standardized PCA
  double std_g1;
};

struct NoiseSimResult {
  std::vector<NoiseSimPoint> points;
};

/// Expected measured Pearson correlation 1 / sqrt(1 + 1/ratio^2) at noise
/// ratio sigma_P / sigma_eps.
double analytic_rho(double ratio);

/// One realization: sample correlation between the two measurements and the
/// first-axis variance explanation (percent) of standardized PCA on them.
struct NoiseTrialOutcome {
  double rho;
  double g1;
};

/// Runs a single trial with the sub-seed derived from (seed, grid index,
/// realization index); simulate() aggregates exactly these outcomes.
NoiseTrialOutcome noise_trial(const NoiseSimConfig& config,
                              std::size_t grid_index,
                              std::size_t realization_index);

NoiseSimResult simulate(const NoiseSimConfig& config);

/// CSV document: ratio, analytic_rho, mean_rho, std_rho, mean_g1, std_g1.
std::string noise_sim_to_csv(const NoiseSimResult& result);

}  // namespace pcax

#include "pcax/noise_model.hpp"

#include <cmath>
#include <utility>

#include "pcax/dataio.hpp"
#include "pcax/errors.hpp"
#include "pcax/pca.hpp"
#include "pcax/rng.hpp"
#include "pcax/stats.hpp"

namespace pcax {

std::vector<double> NoiseSimConfig::default_ratio_grid() {
  constexpr int kPoints = 30;
  const double lo = std::log10(0.1);
  const double hi = std::log10(10.0);
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    grid[static_cast<std::size_t>(i)] =
        std::pow(10.0, lo + (hi - lo) * i / (kPoints - 1));
  }
  return grid;
}

double analytic_rho(double ratio) {
  if (!(ratio > 0.0)) {
    throw InvalidArgumentError("analytic_rho requires ratio > 0");
  }
  return 1.0 / std::sqrt(1.0 + 1.0 / (ratio * ratio));
}

namespace {

void validate(const NoiseSimConfig& config) {
  if (config.ratio_grid.empty()) {
    throw InvalidArgumentError("noise simulation needs a non-empty grid");
  }
  for (double r : config.ratio_grid) {
    if (!(r > 0.0)) {
      throw InvalidArgumentError("ratio grid values must be positive");
    }
  }
  if (config.objects_per_trial < 2 || config.realizations < 1 ||
      !(config.sigma_eps > 0.0)) {
    throw InvalidArgumentError("invalid noise simulation configuration");
  }
}

}  // namespace

NoiseTrialOutcome noise_trial(const NoiseSimConfig& config,
                              std::size_t grid_index,
                              std::size_t realization_index) {
  validate(config);
  const double ratio = config.ratio_grid.at(grid_index);
  const double sigma_p = ratio * config.sigma_eps;
  Rng rng(Rng::derive(config.seed, grid_index, realization_index));

  const std::size_t q = config.objects_per_trial;
  Matrix values(2, q);
  for (std::size_t j = 0; j < q; ++j) {
    const double p = sigma_p * rng.gaussian();
    const double eps = config.sigma_eps * rng.gaussian();
    values(0, j) = p;        // X1 = P1 = P2, measured exactly
    values(1, j) = p + eps;  // X2 = P2 + eps
  }
  DataMatrix data({"x1", "x2"}, std::move(values));

  const double rho = pearson(data.values.row(0), data.values.row(1));
  const PcaModel model =
      fit(data, PcaMode::correlation, ZeroStdPolicy::error);
  const double g1 = variance_report(model).ratios[0];
  return {rho, g1};
}

NoiseSimResult simulate(const NoiseSimConfig& config) {
  validate(config);
  NoiseSimResult result;
  result.points.reserve(config.ratio_grid.size());
  for (std::size_t g = 0; g < config.ratio_grid.size(); ++g) {
    double sum_rho = 0.0;
    double sum_g1 = 0.0;
    std::vector<double> rhos(config.realizations);
    std::vector<double> g1s(config.realizations);
    for (std::size_t t = 0; t < config.realizations; ++t) {
      const NoiseTrialOutcome outcome = noise_trial(config, g, t);
      rhos[t] = outcome.rho;
      g1s[t] = outcome.g1;
      sum_rho += outcome.rho;
      sum_g1 += outcome.g1;
    }
    const double n = static_cast<double>(config.realizations);
    const double mean_rho = sum_rho / n;
    const double mean_g1 = sum_g1 / n;
    double var_rho = 0.0;
    double var_g1 = 0.0;
    for (std::size_t t = 0; t < config.realizations; ++t) {
      var_rho += (rhos[t] - mean_rho) * (rhos[t] - mean_rho);
      var_g1 += (g1s[t] - mean_g1) * (g1s[t] - mean_g1);
    }
    const double denom = n > 1.0 ? n - 1.0 : 1.0;
    result.points.push_back({config.ratio_grid[g],
                             analytic_rho(config.ratio_grid[g]), mean_rho,
                             std::sqrt(var_rho / denom), mean_g1,
                             std::sqrt(var_g1 / denom)});
  }
  return result;
}

std::string noise_sim_to_csv(const NoiseSimResult& result) {
  CsvWriter writer(
      {"ratio", "analytic_rho", "mean_rho", "std_rho", "mean_g1", "std_g1"});
  for (const auto& p : result.points) {
    writer.add_row({format_double(p.ratio), format_double(p.analytic_rho),
                    format_double(p.mean_rho), format_double(p.std_rho),
                    format_double(p.mean_g1), format_double(p.std_g1)});
  }
  return writer.str();
}

}  // namespace pcax

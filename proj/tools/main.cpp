#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_common_output(CLI::App* cmd, pcax::cli::RunConfig& config) {
  cmd->add_option("--out-dir", config.out_dir, "Directory for output files")
      ->capture_default_str();
}

void add_input_options(CLI::App* cmd, pcax::cli::RunConfig& config) {
  cmd->add_option("--input", config.input,
                  "Dataset CSV (resolved against PCAX_DATA_DIR when relative)")
      ->required();
  cmd->add_option("--class-column", config.class_column,
                  "Header name of the label column, excluded from features");
}

void add_mode_options(CLI::App* cmd, pcax::cli::RunConfig& config) {
  cmd->add_option("--mode", config.mode, "PCA preprocessing mode")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, pcax::PcaMode>{
              {"covariance", pcax::PcaMode::covariance},
              {"correlation", pcax::PcaMode::correlation}},
          CLI::ignore_case))
      ->default_str("correlation");
  cmd->add_option("--zero-std", config.zero_std_policy,
                  "Zero-variance feature policy for standardization")
      ->check(CLI::IsMember({"drop", "error"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  pcax::cli::RunConfig config;
  CLI::App app{
      "pcax - PCA, LDA and variance-explanation toolkit emitting plot-ready "
      "CSV data"};
  app.require_subcommand(1);

  auto* fit = app.add_subcommand(
      "fit", "Fit a PCA model and write the model JSON plus the G(M) table");
  add_input_options(fit, config);
  add_mode_options(fit, config);
  add_common_output(fit, config);
  fit->add_option("--target-g", config.target_g,
                  "Variance-ratio target in percent for component selection")
      ->check(CLI::Range(1e-9, 100.0))
      ->capture_default_str();

  auto* biplot = app.add_subcommand(
      "biplot",
      "Write normalized two-component scores and per-feature loading vectors");
  add_input_options(biplot, config);
  add_mode_options(biplot, config);
  add_common_output(biplot, config);

  auto* lda = app.add_subcommand(
      "lda", "Fit discriminant axes on labeled data and write scores");
  add_input_options(lda, config);
  add_common_output(lda, config);
  lda->add_option("--components", config.components,
                  "Number of discriminant axes to project (0 = all retained)");
  lda->add_option("--ridge", config.ridge,
                  "Ridge added to the intra-group scatter; negative applies "
                  "the default ridge only when the scatter is singular")
      ->capture_default_str();

  auto* noise = app.add_subcommand(
      "noise-sim",
      "Monte-Carlo study of measurement noise vs Pearson correlation and "
      "first-axis explanation");
  add_common_output(noise, config);
  noise->add_option("--ratio-grid", config.ratio_grid,
                    "Explicit sigma_P/sigma_eps grid values (default: 30 "
                    "log-spaced in [0.1, 10])");
  noise->add_option("--realizations", config.realizations,
                    "Realizations per grid point")
      ->capture_default_str();
  noise->add_option("--objects", config.objects, "Objects per realization")
      ->capture_default_str();
  noise->add_option("--sigma-eps", config.sigma_eps,
                    "Noise standard deviation")
      ->capture_default_str();
  noise->add_option("--seed", config.seed, "Master seed")
      ->capture_default_str();

  auto* benchmark = app.add_subcommand(
      "benchmark",
      "Run the cross-dataset variance-explanation study over a manifest "
      "registry");
  benchmark
      ->add_option("--manifest", config.manifest,
                   "JSON registry of dataset manifests")
      ->required();
  add_common_output(benchmark, config);
  benchmark->add_flag("--normalize-x", config.normalize_x,
                      "Fit alpha against m/N instead of raw component counts");
  benchmark->add_option("--seed", config.seed, "Master seed")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Collapse CLI11's assorted parse codes onto the usage exit code.
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  config.command = app.get_subcommands().front()->get_name();
  return pcax::cli::run_command(config);
}

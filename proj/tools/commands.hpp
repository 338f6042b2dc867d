#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pcax/pca.hpp"

namespace pcax::cli {

/// Everything a subcommand can consume; each command reads the slice of
/// fields that applies to it.
struct RunConfig {
  std::string command;
  std::string input;              // --input: dataset CSV
  std::string manifest;           // --manifest: registry JSON (benchmark)
  std::string class_column;       // --class-column: label column name
  PcaMode mode = PcaMode::correlation;  // --mode
  double target_g = 70.0;         // --target-g, percent
  std::size_t components = 0;     // --components, 0 = all retained
  std::uint64_t seed = 1;         // --seed
  std::string out_dir = ".";      // --out-dir
  std::vector<double> ratio_grid; // --ratio-grid, empty = default
  std::size_t realizations = 1000;  // --realizations
  std::size_t objects = 200;        // --objects per noise trial
  double sigma_eps = 0.5;           // --sigma-eps
  bool normalize_x = false;         // --normalize-x: fit alpha on m/N
  double ridge = -1.0;              // --ridge, negative = auto on singular
  std::string zero_std_policy = "drop";  // --zero-std {drop,error}
};

// Each command writes its artifacts under config.out_dir and throws
// pcax::Error subclasses on failure; file contents are deterministic
// functions of the inputs and the seed.
void cmd_fit(const RunConfig& config);
void cmd_biplot(const RunConfig& config);
void cmd_lda(const RunConfig& config);
void cmd_noise_sim(const RunConfig& config);
void cmd_benchmark(const RunConfig& config);

/// Maps a thrown error to the process exit code: 1 usage, 2 data,
/// 3 numerical failure.
int run_command(const RunConfig& config);

/// <dataset>__<mode>__<artifact>.<ext> under out_dir.
std::string artifact_path(const std::string& out_dir,
                          const std::string& dataset, const std::string& mode,
                          const std::string& artifact, const std::string& ext);

void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace pcax::cli

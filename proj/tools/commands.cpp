#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include "pcax/dataio.hpp"
#include "pcax/errors.hpp"
#include "pcax/lda.hpp"
#include "pcax/noise_model.hpp"
#include "pcax/varfit.hpp"

namespace pcax::cli {

namespace fs = std::filesystem;

std::string artifact_path(const std::string& out_dir,
                          const std::string& dataset, const std::string& mode,
                          const std::string& artifact,
                          const std::string& ext) {
  return (fs::path(out_dir) / (dataset + "__" + mode + "__" + artifact + "." +
                               ext))
      .string();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write file: " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

namespace {

void ensure_out_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec || !fs::is_directory(config.out_dir)) {
    throw DataError("output directory is not usable: " + config.out_dir);
  }
}

std::string dataset_name_from_input(const std::string& input) {
  return fs::path(input).stem().string();
}

ZeroStdPolicy zero_std_policy(const RunConfig& config) {
  if (config.zero_std_policy == "drop") return ZeroStdPolicy::drop;
  if (config.zero_std_policy == "error") return ZeroStdPolicy::error;
  throw InvalidArgumentError("unknown zero-std policy: " +
                             config.zero_std_policy);
}

LoadResult load_input(const RunConfig& config) {
  if (config.input.empty()) {
    throw InvalidArgumentError("this command requires --input");
  }
  DatasetManifest manifest;
  manifest.name = dataset_name_from_input(config.input);
  manifest.path = config.input;
  if (!config.class_column.empty()) manifest.class_column = config.class_column;
  const std::string path = resolve_data_path(config.input, ".");
  return load_csv(path, manifest);
}

std::string variance_csv(const PcaModel& model, const VarianceReport& report) {
  CsvWriter writer({"m", "eigenvalue", "cumulative", "g_percent"});
  for (std::size_t m = 0; m < report.ratios.size(); ++m) {
    writer.add_row({std::to_string(m + 1),
                    format_double(model.eigenvalues[m]),
                    format_double(report.cumulative[m]),
                    format_double(report.ratios[m])});
  }
  return writer.str();
}

std::string curve_csv(const VarianceReport& report) {
  const std::size_t n = report.ratios.size();
  CsvWriter writer({"m", "fraction", "g_percent"});
  for (std::size_t m = 0; m < n; ++m) {
    writer.add_row({std::to_string(m + 1),
                    format_double(static_cast<double>(m + 1) /
                                  static_cast<double>(n)),
                    format_double(report.ratios[m])});
  }
  return writer.str();
}

}  // namespace

void cmd_fit(const RunConfig& config) {
  ensure_out_dir(config);
  const LoadResult loaded = load_input(config);
  const std::string name = dataset_name_from_input(config.input);
  const PcaModel model =
      fit(loaded.data, config.mode, zero_std_policy(config));
  const VarianceReport report = variance_report(model);

  const std::string mode = to_string(config.mode);
  write_file_atomic(artifact_path(config.out_dir, name, mode, "model", "json"),
                    pca_model_to_json(model));
  write_file_atomic(
      artifact_path(config.out_dir, name, mode, "variance", "csv"),
      variance_csv(model, report));

  const std::size_t m = select_components(report, config.target_g);
  std::cout << name << ": N=" << model.n_features() << " Q="
            << loaded.data.n_objects() << " G(" << m
            << ")=" << format_double(report.ratios[m - 1])
            << "% reaches target " << format_double(config.target_g) << "%\n";
}

void cmd_biplot(const RunConfig& config) {
  ensure_out_dir(config);
  const LoadResult loaded = load_input(config);
  const std::string name = dataset_name_from_input(config.input);
  const PcaModel model =
      fit(loaded.data, config.mode, zero_std_policy(config));
  const BiplotData biplot = biplot_data(model, loaded.data);

  const std::string mode = to_string(config.mode);
  {
    std::vector<std::string> header{"object", "score1", "score2"};
    const bool labeled = loaded.labels.has_value();
    if (labeled) header.push_back("class");
    CsvWriter writer(header);
    for (std::size_t j = 0; j < biplot.scores.cols(); ++j) {
      std::vector<std::string> row{std::to_string(j + 1),
                                   format_double(biplot.scores(0, j)),
                                   format_double(biplot.scores(1, j))};
      if (labeled) {
        row.push_back(loaded.labels->class_names[static_cast<std::size_t>(
            loaded.labels->ids[j])]);
      }
      writer.add_row(row);
    }
    write_file_atomic(
        artifact_path(config.out_dir, name, mode, "scores", "csv"),
        writer.str());
  }
  {
    CsvWriter writer({"feature", "loading1", "loading2"});
    for (std::size_t i = 0; i < biplot.loadings.rows(); ++i) {
      writer.add_row({model.feature_names[i],
                      format_double(biplot.loadings(i, 0)),
                      format_double(biplot.loadings(i, 1))});
    }
    write_file_atomic(
        artifact_path(config.out_dir, name, mode, "loadings", "csv"),
        writer.str());
  }
  std::cout << name << ": biplot over " << biplot.scores.cols()
            << " objects, " << biplot.loadings.rows() << " features\n";
}

void cmd_lda(const RunConfig& config) {
  ensure_out_dir(config);
  if (config.class_column.empty()) {
    throw DataError("lda requires --class-column naming the labels");
  }
  const LoadResult loaded = load_input(config);
  if (!loaded.labels) {
    throw DataError("lda input produced no labels");
  }
  const std::string name = dataset_name_from_input(config.input);
  const LabeledData labeled(loaded.data, loaded.labels->ids,
                            loaded.labels->class_names);
  const std::optional<double> ridge =
      config.ridge < 0.0 ? std::nullopt : std::optional<double>(config.ridge);
  const LdaModel model = fit_lda(labeled, ridge);

  const std::size_t m =
      config.components == 0
          ? model.retained
          : std::min(config.components, model.retained);
  if (m == 0) {
    throw DataError("lda retained no discriminant axes");
  }
  const Matrix scores = transform_lda(model, loaded.data, m);

  write_file_atomic(
      artifact_path(config.out_dir, name, "lda", "model", "json"),
      lda_model_to_json(model));
  {
    std::vector<std::string> header{"object"};
    for (std::size_t r = 0; r < m; ++r) {
      header.push_back("axis" + std::to_string(r + 1));
    }
    header.push_back("class");
    CsvWriter writer(header);
    for (std::size_t j = 0; j < scores.cols(); ++j) {
      std::vector<std::string> row{std::to_string(j + 1)};
      for (std::size_t r = 0; r < m; ++r) {
        row.push_back(format_double(scores(r, j)));
      }
      row.push_back(loaded.labels->class_names[static_cast<std::size_t>(
          loaded.labels->ids[j])]);
      writer.add_row(row);
    }
    write_file_atomic(
        artifact_path(config.out_dir, name, "lda", "scores", "csv"),
        writer.str());
  }
  std::cout << name << ": lda retained " << model.retained
            << " axes, separation score "
            << format_double(model.separation_score()) << "\n";
}

void cmd_noise_sim(const RunConfig& config) {
  ensure_out_dir(config);
  NoiseSimConfig sim;
  sim.ratio_grid = config.ratio_grid.empty()
                       ? NoiseSimConfig::default_ratio_grid()
                       : config.ratio_grid;
  sim.objects_per_trial = config.objects;
  sim.realizations = config.realizations;
  sim.sigma_eps = config.sigma_eps;
  sim.seed = config.seed;

  const NoiseSimResult result = simulate(sim);
  const std::string path =
      (fs::path(config.out_dir) / "noise_sim.csv").string();
  write_file_atomic(path, noise_sim_to_csv(result));
  std::cout << "noise-sim: " << result.points.size() << " grid points, "
            << sim.realizations << " realizations, seed " << sim.seed << " -> "
            << path << "\n";
}

namespace {

struct BenchmarkEntry {
  DatasetManifest manifest;
  IngestReport report;
  std::vector<std::string> discrepancies;
  VarianceReport standardized;
  AlphaFit alpha;
  bool labeled = false;
};

// Piecewise-linear G at a fraction of the component budget; every curve is
// anchored at the implicit point (0, 0).
double g_at_fraction(const VarianceReport& report, double fraction) {
  const std::size_t n = report.ratios.size();
  const double position = fraction * static_cast<double>(n);
  if (position <= 0.0) return 0.0;
  if (position >= static_cast<double>(n)) return report.ratios.back();
  const auto below = static_cast<std::size_t>(position);  // floor
  const double above_g = report.ratios[below];  // ratio at component below+1
  const double below_g = below == 0 ? 0.0 : report.ratios[below - 1];
  return below_g + (above_g - below_g) * (position - below);
}

std::string averaged_raw_csv(const std::vector<BenchmarkEntry>& entries) {
  std::size_t min_n = entries.front().standardized.ratios.size();
  for (const auto& e : entries) {
    min_n = std::min(min_n, e.standardized.ratios.size());
  }
  CsvWriter writer({"m", "mean_g", "std_g"});
  const double n = static_cast<double>(entries.size());
  for (std::size_t m = 0; m < min_n; ++m) {
    double mean = 0.0;
    for (const auto& e : entries) mean += e.standardized.ratios[m];
    mean /= n;
    double var = 0.0;
    for (const auto& e : entries) {
      var += (e.standardized.ratios[m] - mean) *
             (e.standardized.ratios[m] - mean);
    }
    const double sd = entries.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    writer.add_row({std::to_string(m + 1), format_double(mean),
                    format_double(sd)});
  }
  return writer.str();
}

std::string averaged_normalized_csv(
    const std::vector<BenchmarkEntry>& entries) {
  CsvWriter writer({"fraction", "mean_g", "std_g"});
  const double n = static_cast<double>(entries.size());
  for (int j = 1; j <= 100; ++j) {
    const double fraction = static_cast<double>(j) / 100.0;
    double mean = 0.0;
    for (const auto& e : entries) {
      mean += g_at_fraction(e.standardized, fraction);
    }
    mean /= n;
    double var = 0.0;
    for (const auto& e : entries) {
      const double g = g_at_fraction(e.standardized, fraction);
      var += (g - mean) * (g - mean);
    }
    const double sd = entries.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    writer.add_row(
        {format_double(fraction), format_double(mean), format_double(sd)});
  }
  return writer.str();
}

}  // namespace

void cmd_benchmark(const RunConfig& config) {
  ensure_out_dir(config);
  if (config.manifest.empty()) {
    throw InvalidArgumentError("benchmark requires --manifest");
  }
  const std::vector<DatasetManifest> registry =
      load_manifest_registry(config.manifest);
  if (registry.empty()) {
    throw DataError("manifest registry is empty: " + config.manifest);
  }
  const std::string base_dir =
      fs::path(config.manifest).parent_path().string();

  std::vector<BenchmarkEntry> entries;
  for (const auto& manifest : registry) {
    const std::string path = resolve_data_path(manifest.path, base_dir);
    if (!fs::exists(path)) {
      std::cerr << "benchmark: skipping " << manifest.name
                << " (file not found: " << path << ")\n";
      continue;
    }
    LoadResult loaded = load_csv(path, manifest);

    BenchmarkEntry entry;
    entry.manifest = manifest;
    entry.labeled = loaded.labels.has_value();

    const PcaModel std_model =
        fit(loaded.data, PcaMode::correlation, ZeroStdPolicy::drop);
    // Features the correlation fit had to drop show up as zero-variance
    // drops in the ingest report.
    if (std_model.n_features() < loaded.data.n_features()) {
      std::set<std::string> kept(std_model.feature_names.begin(),
                                 std_model.feature_names.end());
      for (const auto& feature : loaded.data.feature_names) {
        if (!kept.contains(feature)) {
          loaded.report.dropped_columns.push_back(
              {feature, DropReason::zero_variance});
        }
      }
    }
    entry.report = loaded.report;
    entry.discrepancies = verify_manifest(loaded.report, manifest);
    entry.standardized = variance_report(std_model);

    const PcaModel raw_model =
        fit(loaded.data, PcaMode::covariance, ZeroStdPolicy::drop);
    const VarianceReport raw_report = variance_report(raw_model);

    write_file_atomic(artifact_path(config.out_dir, manifest.name,
                                    "correlation", "curve", "csv"),
                      curve_csv(entry.standardized));
    write_file_atomic(artifact_path(config.out_dir, manifest.name,
                                    "covariance", "curve", "csv"),
                      curve_csv(raw_report));

    VarianceCurve curve;
    curve.dataset_name = manifest.name;
    const std::size_t n = entry.standardized.ratios.size();
    for (std::size_t m = 0; m < n; ++m) {
      curve.xs.push_back(config.normalize_x
                             ? static_cast<double>(m + 1) /
                                   static_cast<double>(n)
                             : static_cast<double>(m + 1));
      curve.ys.push_back(entry.standardized.ratios[m] / 100.0);
    }
    entry.alpha = lm_fit_exponential(curve);
    entries.push_back(std::move(entry));
  }
  if (entries.empty()) {
    throw DataError("no dataset in the registry could be loaded");
  }

  {
    CsvWriter writer({"dataset", "n", "q", "classes", "dropped_rows",
                      "dropped_columns", "discrepancies"});
    for (const auto& e : entries) {
      std::string dropped;
      for (const auto& col : e.report.dropped_columns) {
        if (!dropped.empty()) dropped += "; ";
        dropped += col.name + " (" + to_string(col.reason) + ")";
      }
      std::string discrepancies;
      for (const auto& d : e.discrepancies) {
        if (!discrepancies.empty()) discrepancies += "; ";
        discrepancies += d;
      }
      writer.add_row({e.manifest.name, std::to_string(e.report.final_n),
                      std::to_string(e.report.final_q),
                      e.report.n_classes ? std::to_string(*e.report.n_classes)
                                         : "-",
                      std::to_string(e.report.dropped_rows), dropped,
                      discrepancies});
    }
    write_file_atomic(
        (fs::path(config.out_dir) / "datasets__summary.csv").string(),
        writer.str());
  }

  {
    std::vector<std::string> names;
    std::vector<AlphaFit> fits;
    for (const auto& e : entries) {
      names.push_back(e.manifest.name);
      fits.push_back(e.alpha);
    }
    write_file_atomic(
        (fs::path(config.out_dir) / "alpha_fits__correlation.csv").string(),
        alpha_fits_to_csv(names, fits));
  }

  // Property correlations; fall back to ingested counts when a manifest does
  // not pin the expectation.
  std::vector<AlphaFit> fits;
  std::vector<DatasetManifest> manifests;
  std::size_t labeled_count = 0;
  for (const auto& e : entries) {
    DatasetManifest m = e.manifest;
    if (!m.expected_samples) m.expected_samples = e.report.final_q;
    if (!m.expected_measurements) m.expected_measurements = e.report.final_n;
    if (!m.expected_classes && e.report.n_classes) {
      m.expected_classes = e.report.n_classes;
    }
    if (m.expected_classes) ++labeled_count;
    fits.push_back(e.alpha);
    manifests.push_back(std::move(m));
  }
  if (entries.size() >= 3 && labeled_count >= 3) {
    const AlphaCorrelations corr =
        alpha_property_correlations(fits, manifests);
    CsvWriter writer({"property", "pearson_r", "n_datasets"});
    writer.add_row({"classes", format_double(corr.vs_classes),
                    std::to_string(corr.n_with_classes)});
    writer.add_row({"samples", format_double(corr.vs_samples),
                    std::to_string(corr.n_total)});
    writer.add_row({"measurements", format_double(corr.vs_measurements),
                    std::to_string(corr.n_total)});
    write_file_atomic((fs::path(config.out_dir) /
                       "alpha_correlations__correlation.csv")
                          .string(),
                      writer.str());
  } else {
    std::cerr << "benchmark: skipping alpha correlations (needs >= 3 "
                 "datasets, 3 of them labeled)\n";
  }

  write_file_atomic(
      (fs::path(config.out_dir) / "average__correlation__curve.csv").string(),
      averaged_raw_csv(entries));
  write_file_atomic((fs::path(config.out_dir) /
                     "average__correlation__curve_normalized.csv")
                        .string(),
                    averaged_normalized_csv(entries));

  std::cout << "benchmark: processed " << entries.size() << " of "
            << registry.size() << " datasets into " << config.out_dir << "\n";
}

int run_command(const RunConfig& config) {
  try {
    if (config.command == "fit") {
      cmd_fit(config);
    } else if (config.command == "biplot") {
      cmd_biplot(config);
    } else if (config.command == "lda") {
      cmd_lda(config);
    } else if (config.command == "noise-sim") {
      cmd_noise_sim(config);
    } else if (config.command == "benchmark") {
      cmd_benchmark(config);
    } else {
      std::cerr << "unknown command: " << config.command << "\n";
      return 1;
    }
    return 0;
  } catch (const InvalidArgumentError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace pcax::cli

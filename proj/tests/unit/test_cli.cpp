#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "pcax/dataio.hpp"
#include "pcax/errors.hpp"
#include "pcax/lda.hpp"
#include "pcax/noise_model.hpp"
#include "test_helpers.hpp"

using namespace pcax;
using namespace pcax::testing;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char c : text) {
    if (c == '\n') ++lines;
  }
  return lines;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

cli::RunConfig base_config(const std::string& out_dir) {
  cli::RunConfig config;
  config.out_dir = out_dir;
  return config;
}

}  // namespace

TEST_CASE("cmd_fit writes the wine model and a 13-row variance table") {
  const fs::path out = fresh_dir("pcax_cli_fit");
  cli::RunConfig config = base_config(out.string());
  config.input = test_data_dir() + "/wine.csv";
  config.class_column = "class";
  cli::cmd_fit(config);

  const std::string variance =
      read_file(out / "wine__correlation__variance.csv");
  CHECK(count_lines(variance) == 14);  // header + 13 components
  const std::string last_line =
      variance.substr(variance.rfind('\n', variance.size() - 2) + 1);
  CHECK(last_line.substr(0, 3) == "13,");
  CHECK(last_line.find(",100") != std::string::npos);

  const PcaModel model = pca_model_from_json(
      read_file(out / "wine__correlation__model.json"));
  CHECK(model.n_features() == 13);
  CHECK(model.mode == PcaMode::correlation);
}

TEST_CASE("cmd_fit on rank-1 synthetic data explains everything at M=1") {
  const fs::path out = fresh_dir("pcax_cli_rank1");
  const fs::path input = out / "rank1.csv";
  {
    std::ofstream f(input);
    f << "a,b\n";
    for (int j = 0; j < 10; ++j) f << j << "," << 2 * j << "\n";
  }
  cli::RunConfig config = base_config(out.string());
  config.input = input.string();
  config.mode = PcaMode::covariance;
  cli::cmd_fit(config);
  const std::string variance =
      read_file(out / "rank1__covariance__variance.csv");
  std::istringstream lines(variance);
  std::string header;
  std::string first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(first.find(",100") != std::string::npos);
}

TEST_CASE("command errors map onto the documented exit codes") {
  const fs::path out = fresh_dir("pcax_cli_errors");
  cli::RunConfig config = base_config(out.string());
  config.command = "fit";
  config.input = "/nonexistent/nowhere.csv";
  CHECK(cli::run_command(config) == 2);

  config.command = "lda";
  config.input = test_data_dir() + "/wine.csv";
  config.class_column = "";
  CHECK(cli::run_command(config) == 2);

  config.command = "benchmark";
  config.manifest = "";
  CHECK(cli::run_command(config) == 1);

  config.command = "unknown";
  CHECK(cli::run_command(config) == 1);
}

TEST_CASE("cmd_biplot emits iris scores and loadings with unit variance") {
  const fs::path out = fresh_dir("pcax_cli_biplot");
  cli::RunConfig config = base_config(out.string());
  config.input = test_data_dir() + "/iris.csv";
  config.class_column = "class";
  cli::cmd_biplot(config);

  const std::string scores = read_file(out / "iris__correlation__scores.csv");
  const std::string loadings =
      read_file(out / "iris__correlation__loadings.csv");
  CHECK(count_lines(scores) == 151);    // header + 150 objects
  CHECK(count_lines(loadings) == 5);    // header + 4 features

  // The emitted CSV parses under the project dialect; the class column comes
  // back as labels and score columns stay numeric.
  DatasetManifest manifest;
  manifest.name = "scores";
  manifest.path = "scores.csv";
  manifest.class_column = "class";
  const LoadResult parsed = load_csv(
      (out / "iris__correlation__scores.csv").string(), manifest);
  REQUIRE(parsed.labels.has_value());
  CHECK(parsed.labels->class_names.size() == 3);
  REQUIRE(parsed.data.n_features() == 3);  // object, score1, score2
  CHECK(std::abs(sample_variance(parsed.data.values.row(1)) - 1.0) <= 1e-9);
  CHECK(std::abs(sample_variance(parsed.data.values.row(2)) - 1.0) <= 1e-9);
}

TEST_CASE("cmd_biplot rejects rank-1 two-feature data") {
  const fs::path out = fresh_dir("pcax_cli_biplot_rank1");
  const fs::path input = out / "rank1.csv";
  {
    std::ofstream f(input);
    f << "a,b\n";
    for (int j = 0; j < 8; ++j) f << j << "," << 3 * j << "\n";
  }
  cli::RunConfig config = base_config(out.string());
  config.command = "biplot";
  config.input = input.string();
  CHECK(cli::run_command(config) == 2);
}

TEST_CASE("cmd_lda projects iris onto two axes matching the library") {
  const fs::path out = fresh_dir("pcax_cli_lda");
  cli::RunConfig config = base_config(out.string());
  config.input = test_data_dir() + "/iris.csv";
  config.class_column = "class";
  cli::cmd_lda(config);

  const LdaModel model =
      lda_model_from_json(read_file(out / "iris__lda__model.json"));
  CHECK(model.retained == 2);

  DatasetManifest manifest;
  manifest.name = "iris";
  manifest.path = "iris.csv";
  manifest.class_column = "class";
  const LoadResult iris = load_csv(test_data_dir() + "/iris.csv", manifest);
  const Matrix expected = transform_lda(model, iris.data, 2);

  DatasetManifest score_manifest;
  score_manifest.name = "scores";
  score_manifest.path = "scores.csv";
  score_manifest.class_column = "class";
  const LoadResult scores = load_csv(
      (out / "iris__lda__scores.csv").string(), score_manifest);
  REQUIRE(scores.data.n_objects() == 150);
  for (std::size_t j = 0; j < 150; ++j) {
    CHECK(scores.data.values(1, j) == expected(0, j));
    CHECK(scores.data.values(2, j) == expected(1, j));
  }
}

TEST_CASE("cmd_noise_sim writes a deterministic six-column table") {
  const fs::path out1 = fresh_dir("pcax_cli_noise1");
  const fs::path out2 = fresh_dir("pcax_cli_noise2");
  cli::RunConfig config = base_config(out1.string());
  config.ratio_grid = {0.5, 1.0, 2.0};
  config.realizations = 40;
  config.objects = 60;
  config.seed = 99;
  cli::cmd_noise_sim(config);
  config.out_dir = out2.string();
  cli::cmd_noise_sim(config);

  const std::string csv1 = read_file(out1 / "noise_sim.csv");
  const std::string csv2 = read_file(out2 / "noise_sim.csv");
  CHECK(csv1 == csv2);
  CHECK(csv1.substr(0, csv1.find('\n')) ==
        "ratio,analytic_rho,mean_rho,std_rho,mean_g1,std_g1");

  // Matches the library path bit for bit.
  NoiseSimConfig sim;
  sim.ratio_grid = config.ratio_grid;
  sim.realizations = config.realizations;
  sim.objects_per_trial = config.objects;
  sim.seed = config.seed;
  CHECK(noise_sim_to_csv(simulate(sim)) == csv1);
}

TEST_CASE("cmd_benchmark processes the demo registry end to end") {
  const fs::path out = fresh_dir("pcax_cli_benchmark");
  cli::RunConfig config = base_config(out.string());
  config.manifest = test_data_dir() + "/manifests_demo.json";
  cli::cmd_benchmark(config);

  for (const std::string name : {"wine", "iris", "breast_cancer"}) {
    CHECK(fs::exists(out / (name + "__correlation__curve.csv")));
    CHECK(fs::exists(out / (name + "__covariance__curve.csv")));
  }
  const std::string fits = read_file(out / "alpha_fits__correlation.csv");
  CHECK(count_lines(fits) == 4);  // header + 3 datasets
  CHECK(fs::exists(out / "alpha_correlations__correlation.csv"));
  CHECK(fs::exists(out / "datasets__summary.csv"));
  CHECK(fs::exists(out / "average__correlation__curve.csv"));
  CHECK(fs::exists(out / "average__correlation__curve_normalized.csv"));

  // Wine curve: 13 components, ends at G = 100.
  const std::string wine_curve =
      read_file(out / "wine__correlation__curve.csv");
  CHECK(count_lines(wine_curve) == 14);
}

TEST_CASE("a single-dataset registry averages to its own curve") {
  const fs::path out = fresh_dir("pcax_cli_benchmark_single");
  const fs::path registry = out / "registry.json";
  {
    std::ofstream f(registry);
    f << "[{\"name\":\"iris\",\"path\":\""
      << test_data_dir() + "/iris.csv"
      << "\",\"class_column\":\"class\"}]";
  }
  cli::RunConfig config = base_config(out.string());
  config.manifest = registry.string();
  cli::cmd_benchmark(config);

  const std::string average =
      read_file(out / "average__correlation__curve.csv");
  const std::string curve = read_file(out / "iris__correlation__curve.csv");

  std::istringstream avg_lines(average);
  std::istringstream curve_lines(curve);
  std::string avg_line;
  std::string curve_line;
  std::getline(avg_lines, avg_line);    // headers
  std::getline(curve_lines, curve_line);
  while (std::getline(avg_lines, avg_line) &&
         std::getline(curve_lines, curve_line)) {
    // avg: m, mean, std; curve: m, fraction, g.
    const auto avg_first = avg_line.find(',');
    const auto avg_second = avg_line.find(',', avg_first + 1);
    const auto curve_second = curve_line.rfind(',');
    CHECK(avg_line.substr(avg_first + 1, avg_second - avg_first - 1) ==
          curve_line.substr(curve_second + 1));
    CHECK(avg_line.substr(avg_second + 1) == "0");
  }
}

TEST_CASE("benchmark skips unresolvable datasets but fails on none") {
  const fs::path out = fresh_dir("pcax_cli_benchmark_missing");
  const fs::path registry = out / "registry.json";
  {
    std::ofstream f(registry);
    f << "[{\"name\":\"ghost\",\"path\":\"ghost.csv\"}]";
  }
  cli::RunConfig config = base_config(out.string());
  config.command = "benchmark";
  config.manifest = registry.string();
  CHECK(cli::run_command(config) == 2);
}

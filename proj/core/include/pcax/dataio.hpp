#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pcax/stats.hpp"

namespace pcax {

/// Expected characteristics of a registered dataset; used to verify what
/// ingestion actually produced.
struct DatasetManifest {
  std::string name;
  std::string path;
  std::optional<std::string> class_column;
  std::optional<std::size_t> expected_classes;
  std::optional<std::size_t> expected_samples;
  std::optional<std::size_t> expected_measurements;
};

enum class DropReason { non_numeric, missing_values, zero_variance };

std::string to_string(DropReason reason);

struct DroppedColumn {
  std::string name;
  DropReason reason;
};

struct IngestReport {
  std::vector<DroppedColumn> dropped_columns;
  std::size_t dropped_rows = 0;
  std::size_t final_n = 0;
  std::size_t final_q = 0;
  std::optional<std::size_t> n_classes;
};

enum class MissingPolicy { drop_row, drop_column };

struct Labels {
  std::vector<int> ids;                  // one per kept object
  std::vector<std::string> class_names;  // indexed by id, sorted by value
};

struct LoadResult {
  DataMatrix data;
  std::optional<Labels> labels;
  IngestReport report;
};

/// Loads a comma-separated file with a header row into the internal
/// features-by-objects layout. Dialect: RFC-4180 quoting, '.' decimal point;
/// "", "NA", "?", "NaN" are missing markers; whitespace around unquoted
/// fields is ignored. Fully non-numeric columns are dropped; remaining
/// missing cells are handled per policy. The manifest's class column is
/// extracted as labels (rows with a missing class value are always dropped).
LoadResult load_csv(const std::string& path, const DatasetManifest& manifest,
                    MissingPolicy policy = MissingPolicy::drop_row);

/// Compares what ingestion produced against the manifest; each mismatch is
/// one human-readable line. Discrepancies are data, not failures.
std::vector<std::string> verify_manifest(const IngestReport& report,
                                         const DatasetManifest& manifest);

/// Writes the dataset back out column-per-feature, doubles in
/// shortest-round-trip form so exact values survive a reload bitwise.
std::string to_csv(const DataMatrix& data,
                   const std::optional<Labels>& labels = std::nullopt,
                   const std::string& class_column = "class");

/// Manifest registry: a JSON array of dataset manifests.
std::vector<DatasetManifest> load_manifest_registry(const std::string& path);

/// Resolution order for a manifest's data path: absolute as-is, then
/// relative to PCAX_DATA_DIR when set, then relative to base_dir.
std::string resolve_data_path(const std::string& path,
                              const std::string& base_dir);

/// Shortest-round-trip decimal form of a double (the form every CSV emitted
/// by this project uses).
std::string format_double(double value);

/// Minimal CSV document builder in the dialect load_csv reads.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);

  void add_row(const std::vector<std::string>& cells);
  const std::string& str() const { return out_; }

  static std::string quote_if_needed(const std::string& cell);

 private:
  std::size_t columns_;
  std::string out_;
};

}  // namespace pcax

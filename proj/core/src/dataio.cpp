#include "pcax/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "pcax/errors.hpp"

namespace pcax {

std::string to_string(DropReason reason) {
  switch (reason) {
    case DropReason::non_numeric:
      return "non-numeric";
    case DropReason::missing_values:
      return "missing values";
    case DropReason::zero_variance:
      return "zero variance";
  }
  return "unknown";
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::vector<std::string>& header)
    : columns_(header.size()) {
  add_row(header);
}

std::string CsvWriter::quote_if_needed(const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw InvalidArgumentError("CSV row width does not match the header");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ += ',';
    out_ += quote_if_needed(cells[i]);
  }
  out_ += '\n';
}

namespace {

// RFC-4180 rows; quoted fields may contain commas, escaped quotes and
// newlines.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool in_quotes = false;
  bool cell_started = false;

  auto end_cell = [&] {
    row.push_back(std::move(cell));
    cell.clear();
    cell_started = false;
  };
  auto end_row = [&] {
    end_cell();
    const bool blank = row.size() == 1 && row[0].empty();
    if (!blank) rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!cell_started) {
          in_quotes = true;
          cell_started = true;
        } else {
          cell += c;
        }
        break;
      case ',':
        end_cell();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        cell += c;
        cell_started = true;
    }
  }
  if (in_quotes) throw DataError("unterminated quote in CSV input");
  if (cell_started || !cell.empty() || !row.empty()) end_row();
  return rows;
}

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
    ++begin;
  }
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
    --end;
  }
  return s.substr(begin, end - begin);
}

bool is_missing_marker(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "?" || cell == "NaN";
}

// Full-field numeric parse; non-finite results count as missing.
enum class CellKind { numeric, missing, text };

CellKind classify_cell(const std::string& cell, double& value) {
  if (is_missing_marker(cell)) return CellKind::missing;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) return CellKind::text;
  if (!std::isfinite(value)) return CellKind::missing;
  return CellKind::numeric;
}

}  // namespace

LoadResult load_csv(const std::string& path, const DatasetManifest& manifest,
                    MissingPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open dataset file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const auto rows = parse_csv(buffer.str());
  if (rows.size() < 2) {
    throw DataError("dataset file has no data rows: " + path);
  }

  std::vector<std::string> header;
  header.reserve(rows[0].size());
  for (const auto& cell : rows[0]) header.push_back(trim(cell));
  const std::size_t width = header.size();

  std::optional<std::size_t> class_index;
  if (manifest.class_column) {
    const auto it = std::find(header.begin(), header.end(),
                              *manifest.class_column);
    if (it == header.end()) {
      throw DataError("class column '" + *manifest.class_column +
                      "' not found in header of " + path);
    }
    class_index = static_cast<std::size_t>(it - header.begin());
  }

  const std::size_t n_rows = rows.size() - 1;
  std::vector<std::vector<std::string>> cells(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (rows[r + 1].size() != width) {
      throw DataError("row " + std::to_string(r + 2) + " of " + path +
                      " has " + std::to_string(rows[r + 1].size()) +
                      " fields, header has " + std::to_string(width));
    }
    cells[r].reserve(width);
    for (const auto& cell : rows[r + 1]) cells[r].push_back(trim(cell));
  }

  IngestReport report;

  // Classify columns: any non-missing cell that fails numeric parsing makes
  // the whole column non-numeric.
  std::vector<bool> column_kept(width, true);
  std::vector<bool> column_has_missing(width, false);
  for (std::size_t c = 0; c < width; ++c) {
    if (class_index && c == *class_index) continue;
    for (std::size_t r = 0; r < n_rows; ++r) {
      double value;
      const CellKind kind = classify_cell(cells[r][c], value);
      if (kind == CellKind::text) {
        column_kept[c] = false;
        report.dropped_columns.push_back({header[c], DropReason::non_numeric});
        break;
      }
      if (kind == CellKind::missing) column_has_missing[c] = true;
    }
  }

  if (policy == MissingPolicy::drop_column) {
    for (std::size_t c = 0; c < width; ++c) {
      if (class_index && c == *class_index) continue;
      if (column_kept[c] && column_has_missing[c]) {
        column_kept[c] = false;
        report.dropped_columns.push_back(
            {header[c], DropReason::missing_values});
      }
    }
  }

  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < width; ++c) {
    if (class_index && c == *class_index) continue;
    if (column_kept[c]) feature_cols.push_back(c);
  }
  if (feature_cols.empty()) {
    throw DataError("no numeric feature columns left after cleaning: " + path);
  }

  // Row filtering: missing class values always drop the row; missing feature
  // cells drop it under the drop_row policy.
  std::vector<std::size_t> kept_rows;
  for (std::size_t r = 0; r < n_rows; ++r) {
    bool keep = true;
    if (class_index && is_missing_marker(cells[r][*class_index])) keep = false;
    if (keep && policy == MissingPolicy::drop_row) {
      for (std::size_t c : feature_cols) {
        double value;
        if (classify_cell(cells[r][c], value) == CellKind::missing) {
          keep = false;
          break;
        }
      }
    }
    if (keep) kept_rows.push_back(r);
  }
  report.dropped_rows = n_rows - kept_rows.size();
  if (kept_rows.size() < 2) {
    throw DataError("fewer than 2 objects left after cleaning: " + path);
  }

  Matrix values(feature_cols.size(), kept_rows.size());
  std::vector<std::string> names;
  names.reserve(feature_cols.size());
  for (std::size_t f = 0; f < feature_cols.size(); ++f) {
    names.push_back(header[feature_cols[f]]);
    for (std::size_t j = 0; j < kept_rows.size(); ++j) {
      double value;
      classify_cell(cells[kept_rows[j]][feature_cols[f]], value);
      values(f, j) = value;
    }
  }

  std::optional<Labels> labels;
  if (class_index) {
    std::map<std::string, int> ids;  // ordered => ids sorted by value
    for (std::size_t j : kept_rows) ids.emplace(cells[j][*class_index], 0);
    int next = 0;
    for (auto& [name, id] : ids) id = next++;
    Labels out;
    out.class_names.resize(ids.size());
    for (const auto& [name, id] : ids) {
      out.class_names[static_cast<std::size_t>(id)] = name;
    }
    out.ids.reserve(kept_rows.size());
    for (std::size_t j : kept_rows) {
      out.ids.push_back(ids.at(cells[j][*class_index]));
    }
    report.n_classes = ids.size();
    labels = std::move(out);
  }

  report.final_n = feature_cols.size();
  report.final_q = kept_rows.size();
  return {DataMatrix(std::move(names), std::move(values)), std::move(labels),
          std::move(report)};
}

std::vector<std::string> verify_manifest(const IngestReport& report,
                                         const DatasetManifest& manifest) {
  std::vector<std::string> out;
  auto check = [&out](const char* what, std::optional<std::size_t> expected,
                      std::optional<std::size_t> got) {
    if (!expected) return;
    if (!got) {
      out.push_back(std::string(what) + ": expected " +
                    std::to_string(*expected) + ", none present");
    } else if (*expected != *got) {
      out.push_back(std::string(what) + ": expected " +
                    std::to_string(*expected) + ", got " +
                    std::to_string(*got));
    }
  };
  check("samples", manifest.expected_samples, report.final_q);
  check("measurements", manifest.expected_measurements, report.final_n);
  check("classes", manifest.expected_classes, report.n_classes);
  return out;
}

std::string to_csv(const DataMatrix& data, const std::optional<Labels>& labels,
                   const std::string& class_column) {
  if (labels && labels->ids.size() != data.n_objects()) {
    throw InvalidArgumentError("label count does not match object count");
  }
  std::vector<std::string> header = data.feature_names;
  if (labels) header.push_back(class_column);
  CsvWriter writer(header);
  std::vector<std::string> row(header.size());
  for (std::size_t j = 0; j < data.n_objects(); ++j) {
    for (std::size_t i = 0; i < data.n_features(); ++i) {
      row[i] = format_double(data.values(i, j));
    }
    if (labels) {
      row.back() = labels->class_names[static_cast<std::size_t>(
          labels->ids[j])];
    }
    writer.add_row(row);
  }
  return writer.str();
}

std::vector<DatasetManifest> load_manifest_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest registry: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("invalid manifest registry JSON: ") +
                    e.what());
  }
  if (!doc.is_array()) {
    throw DataError("manifest registry must be a JSON array");
  }
  std::vector<DatasetManifest> out;
  for (const auto& entry : doc) {
    DatasetManifest m;
    try {
      m.name = entry.at("name").get<std::string>();
      m.path = entry.at("path").get<std::string>();
      if (entry.contains("class_column")) {
        m.class_column = entry.at("class_column").get<std::string>();
      }
      auto read_count = [&entry](const char* key) {
        std::optional<std::size_t> v;
        if (entry.contains(key)) v = entry.at(key).get<std::size_t>();
        return v;
      };
      m.expected_classes = read_count("expected_classes");
      m.expected_samples = read_count("expected_samples");
      m.expected_measurements = read_count("expected_measurements");
    } catch (const nlohmann::json::exception& e) {
      throw DataError(std::string("invalid manifest entry: ") + e.what());
    }
    for (const auto& count :
         {m.expected_classes, m.expected_samples, m.expected_measurements}) {
      if (count && *count < 1) {
        throw DataError("manifest counts must be at least 1: " + m.name);
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::string resolve_data_path(const std::string& path,
                              const std::string& base_dir) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  if (p.is_absolute()) return path;
  if (const char* root = std::getenv("PCAX_DATA_DIR")) {
    const fs::path candidate = fs::path(root) / p;
    if (fs::exists(candidate)) return candidate.string();
  }
  return (fs::path(base_dir) / p).string();
}

}  // namespace pcax

// SPDX-License-Identifier: Apache-2.0
//
// CSV tables and a small SVG line plotter for the experiment runner.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace secqos::cli {

/// Current CSV schema version, written in the first header line.
inline constexpr int kCsvSchemaVersion = 1;

/// Column-oriented table. Cells are stored as formatted text so the output
/// is byte-identical across runs.
class CsvTable {
public:
  CsvTable(std::string command, std::vector<std::string> columns);

  /// Adds a "# key=value" line below the schema line.
  void meta(const std::string &key, const std::string &value);
  void row(const std::vector<std::string> &cells);

  std::string str() const;
  void write(const std::filesystem::path &path) const;

  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string> &row_at(std::size_t k) const { return rows_[k]; }

private:
  std::string command_;
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::vector<std::string>> rows_;
};

/// Shortest round-trip-stable rendering with 10 significant digits.
std::string fmt(double value);
std::string fmt(long long value);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
};

/// Renders the series as polylines with axes, ticks and a legend. Points
/// with non-finite coordinates (or y <= 0 on a log axis) are skipped.
std::string render_svg(const PlotSpec &spec, const std::vector<Series> &series);
void write_svg(const std::filesystem::path &path, const PlotSpec &spec,
               const std::vector<Series> &series);

} // namespace secqos::cli

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace selfsim {

/// "%.17g" rendering; round-trips every double and is locale-independent
/// for the C locale the tools run under.
std::string format_double(double v);

/// In-memory CSV table with a fixed header.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  /// Appends a row; its width must match the header.
  void add_row(const std::vector<double>& row);
  /// Row whose cells are pre-rendered (empty cell allowed).
  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct ChartSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

struct ChartSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

/// Minimal standalone SVG line chart: axes, min/max tick labels, one
/// polyline per series. Non-positive values are dropped on log axes.
std::string render_svg(const ChartSpec& spec, const std::vector<ChartSeries>& series);

/// Writes `content` to `path` through a sibling temporary file and rename,
/// so readers never observe a partial file.
void write_atomically(const std::filesystem::path& path, std::string_view content);

}  // namespace selfsim

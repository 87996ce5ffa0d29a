#include "selfsim/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <system_error>

namespace selfsim {

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double v : row) {
    cells.push_back(format_double(v));
  }
  add_row(std::move(cells));
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw std::invalid_argument("CsvTable: row width does not match header");
  }
  rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out += (i ? "," : "") + cells[i];
    }
    out += '\n';
  };
  emit(header_);
  for (const auto& row : rows_) {
    emit(row);
  }
  return out;
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 60.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const ChartSpec& spec, const std::vector<ChartSeries>& series) {
  auto transform_x = [&](double v) { return spec.log_x ? std::log10(v) : v; };
  auto transform_y = [&](double v) { return spec.log_y ? std::log10(v) : v; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!spec.log_x || x > 0.0) && (!spec.log_y || y > 0.0);
  };

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
      if (!usable(s.xs[i], s.ys[i])) {
        continue;
      }
      x_lo = std::min(x_lo, transform_x(s.xs[i]));
      x_hi = std::max(x_hi, transform_x(s.xs[i]));
      y_lo = std::min(y_lo, transform_y(s.ys[i]));
      y_hi = std::max(y_hi, transform_y(s.ys[i]));
    }
  }
  if (!(x_lo <= x_hi)) {
    x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  }
  if (x_hi == x_lo) {
    x_lo -= 0.5, x_hi += 0.5;
  }
  if (y_hi == y_lo) {
    y_lo -= 0.5, y_hi += 0.5;
  }
  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto px = [&](double v) { return kMarginLeft + (transform_x(v) - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double v) { return kMarginTop + (1.0 - (transform_y(v) - y_lo) / (y_hi - y_lo)) * plot_h; };
  auto label_x = [&](double t) { return spec.log_x ? std::pow(10.0, t) : t; };
  auto label_y = [&](double t) { return spec.log_y ? std::pow(10.0, t) : t; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth) + "\" height=\"" +
         fixed(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fixed(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\">" + escape(spec.title) + "</text>\n";
  const double x0 = kMarginLeft, x1 = kMarginLeft + plot_w;
  const double y0 = kMarginTop + plot_h, y1 = kMarginTop;
  svg += "<polyline fill=\"none\" stroke=\"black\" points=\"" + fixed(x0) + "," + fixed(y1) + " " +
         fixed(x0) + "," + fixed(y0) + " " + fixed(x1) + "," + fixed(y0) + "\"/>\n";
  svg += "<text x=\"" + fixed(x0) + "\" y=\"" + fixed(y0 + 16) + "\" text-anchor=\"middle\">" + tick(label_x(x_lo)) + "</text>\n";
  svg += "<text x=\"" + fixed(x1) + "\" y=\"" + fixed(y0 + 16) + "\" text-anchor=\"middle\">" + tick(label_x(x_hi)) + "</text>\n";
  svg += "<text x=\"" + fixed(x0 - 6) + "\" y=\"" + fixed(y0) + "\" text-anchor=\"end\">" + tick(label_y(y_lo)) + "</text>\n";
  svg += "<text x=\"" + fixed(x0 - 6) + "\" y=\"" + fixed(y1 + 4) + "\" text-anchor=\"end\">" + tick(label_y(y_hi)) + "</text>\n";
  svg += "<text x=\"" + fixed((x0 + x1) / 2) + "\" y=\"" + fixed(kHeight - 20) + "\" text-anchor=\"middle\">" +
         escape(spec.x_label) + (spec.log_x ? " (log)" : "") + "</text>\n";
  svg += "<text x=\"16\" y=\"" + fixed((y0 + y1) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fixed((y0 + y1) / 2) + ")\">" + escape(spec.y_label) + (spec.log_y ? " (log)" : "") + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    std::string points;
    for (std::size_t i = 0; i < s.xs.size() && i < s.ys.size(); ++i) {
      if (usable(s.xs[i], s.ys[i])) {
        points += (points.empty() ? "" : " ") + fixed(px(s.xs[i])) + "," + fixed(py(s.ys[i]));
      }
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    svg += "<text x=\"" + fixed(x1 - 4) + "\" y=\"" + fixed(y1 + 14 * (k + 1)) + "\" text-anchor=\"end\" fill=\"" +
           colour + "\">" + escape(s.label) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_atomically(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace selfsim

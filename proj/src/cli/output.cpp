// SPDX-License-Identifier: Apache-2.0
#include "secqos/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "secqos/errors.hpp"

namespace secqos::cli {

CsvTable::CsvTable(std::string command, std::vector<std::string> columns)
    : command_(std::move(command)), columns_(std::move(columns)) {}

void CsvTable::meta(const std::string &key, const std::string &value) {
  meta_.emplace_back(key, value);
}

void CsvTable::row(const std::vector<std::string> &cells) {
  if (cells.size() != columns_.size())
    throw std::logic_error("CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(columns_.size()));
  rows_.push_back(cells);
}

std::string CsvTable::str() const {
  std::ostringstream out;
  out << "# secqos " << command_ << " v" << kCsvSchemaVersion << '\n';
  for (const auto &[key, value] : meta_)
    out << "# " << key << '=' << value << '\n';
  for (std::size_t k = 0; k < columns_.size(); ++k)
    out << (k ? "," : "") << columns_[k];
  out << '\n';
  for (const auto &r : rows_) {
    for (std::size_t k = 0; k < r.size(); ++k)
      out << (k ? "," : "") << r[k];
    out << '\n';
  }
  return out.str();
}

void CsvTable::write(const std::filesystem::path &path) const {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw ConfigurationError("cannot write " + path.string());
  file << str();
}

std::string fmt(double value) {
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

std::string fmt(long long value) { return std::to_string(value); }

namespace {

constexpr double kWidth = 720, kHeight = 460;
constexpr double kLeft = 80, kRight = 200, kTop = 40, kBottom = 60;

const char *const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  return ticks;
}

} // namespace

std::string render_svg(const PlotSpec &spec, const std::vector<Series> &series) {
  auto ty = [&](double y) { return spec.log_y ? std::log10(y) : y; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!spec.log_y || y > 0.0);
  };

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto &s : series)
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k)
      if (usable(s.x[k], s.y[k])) {
        xmin = std::min(xmin, s.x[k]);
        xmax = std::max(xmax, s.x[k]);
        ymin = std::min(ymin, ty(s.y[k]));
        ymax = std::max(ymax, ty(s.y[k]));
      }
  if (!std::isfinite(xmin)) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax == xmin) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax == ymin) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  if (spec.log_y) {
    ymin = std::floor(ymin);
    ymax = std::ceil(ymax);
  } else {
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
  }

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(spec.title) << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : linear_ticks(xmin, xmax)) {
    out << "<line x1=\"" << fmt(px(t)) << "\" y1=\"" << kTop + ph << "\" x2=\"" << fmt(px(t))
        << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(px(t)) << "\" y=\"" << kTop + ph + 18
        << "\" text-anchor=\"middle\">" << fmt(t) << "</text>\n";
  }
  std::vector<double> yt;
  if (spec.log_y)
    for (double e = ymin; e <= ymax + 1e-9; e += 1.0)
      yt.push_back(e);
  else
    yt = linear_ticks(ymin, ymax);
  for (double t : yt) {
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(py(t)) << "\" x2=\"" << kLeft
        << "\" y2=\"" << fmt(py(t)) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(py(t) + 4) << "\" text-anchor=\"end\">"
        << (spec.log_y ? "1e" + fmt(t) : fmt(t)) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
  out << "<text transform=\"translate(18," << kTop + ph / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(spec.y_label) << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto &s = series[i];
    const char *color = kPalette[i % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (!usable(s.x[k], s.y[k]))
        continue;
      out << (first ? "" : " ") << fmt(px(s.x[k])) << ',' << fmt(py(ty(s.y[k])));
      first = false;
    }
    out << "\"/>\n";
    const double ly = kTop + 10 + 18.0 * static_cast<double>(i);
    out << "<line x1=\"" << kLeft + pw + 10 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw + 30
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + pw + 35 << "\" y=\"" << ly + 4 << "\">" << escape(s.label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_svg(const std::filesystem::path &path, const PlotSpec &spec,
               const std::vector<Series> &series) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw ConfigurationError("cannot write " + path.string());
  file << render_svg(spec, series);
}

} // namespace secqos::cli

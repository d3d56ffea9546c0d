#include "disagg/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "disagg/error.hpp"

namespace disagg::svg {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 58.0;
constexpr double kRight = 838.0;
constexpr double kTop = 46.0;
constexpr double kBottom = 398.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string line_chart(const std::string& title,
                       std::span<const ChartLine> lines) {
  std::optional<Period> first, last;
  for (const ChartLine& line : lines) {
    if (line.series == nullptr || line.series->empty()) {
      fail(ErrorKind::empty_series,
           "chart lines must reference non-empty series");
    }
    const auto& pts = line.series->points();
    if (!first || pts.front().period < *first) first = pts.front().period;
    if (!last || *last < pts.back().period) last = pts.back().period;
  }
  if (!first) {
    fail(ErrorKind::empty_series, "chart needs at least one line");
  }

  const int span = months_between(*first, *last);
  auto x_of = [&](Period p) {
    if (span == 0) return (kLeft + kRight) / 2.0;
    return kLeft + (kRight - kLeft) * months_between(*first, p) / span;
  };
  auto y_of = [&](double v) { return kBottom - (kBottom - kTop) * v; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" fill=\"#ffffff\"/>\n";
  out << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"24\" "
         "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << escape(title) << "</text>\n";

  // Horizontal grid and y labels at 0.0 .. 1.0
  for (int i = 0; i <= 5; ++i) {
    const double v = i / 5.0;
    const double y = y_of(v);
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kRight) << "\" y2=\"" << num(y)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << num(v) << "</text>\n";
  }

  // Time axis ticks: at most 8, month-aligned.
  const int step = std::max(1, (span + 7) / 8);
  for (int m = 0; m <= span; m += step) {
    Period p = *first;
    for (int i = 0; i < m; ++i) p = p.next();
    const double x = x_of(p);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kBottom) << "\" x2=\""
        << num(x) << "\" y2=\"" << num(kBottom + 5)
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << num(kBottom + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << p.str() << "</text>\n";
  }

  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
      << num(kRight - kLeft) << "\" height=\"" << num(kBottom - kTop)
      << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  for (const ChartLine& line : lines) {
    out << "<polyline fill=\"none\" stroke=\"" << line.style.color
        << "\" stroke-width=\"1.6\"";
    if (!line.style.dasharray.empty()) {
      out << " stroke-dasharray=\"" << line.style.dasharray << "\"";
    }
    out << " points=\"";
    bool first_point = true;
    for (const SeriesPoint& p : line.series->points()) {
      if (!first_point) out << ' ';
      out << num(x_of(p.period)) << ',' << num(y_of(p.value));
      first_point = false;
    }
    out << "\"/>\n";
  }

  // Legend row under the time axis.
  double lx = kLeft;
  const double ly = kBottom + 48.0;
  for (const ChartLine& line : lines) {
    out << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly - 4) << "\" x2=\""
        << num(lx + 26) << "\" y2=\"" << num(ly - 4) << "\" stroke=\""
        << line.style.color << "\" stroke-width=\"1.6\"";
    if (!line.style.dasharray.empty()) {
      out << " stroke-dasharray=\"" << line.style.dasharray << "\"";
    }
    out << "/>\n";
    out << "<text x=\"" << num(lx + 32) << "\" y=\"" << num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(line.label) << "</text>\n";
    lx += 40.0 + 7.2 * static_cast<double>(line.label.size());
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace disagg::svg

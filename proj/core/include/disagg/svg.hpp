#pragma once

#include <span>
#include <string>

#include "disagg/series.hpp"

namespace disagg::svg {

struct LineStyle {
  std::string color = "#000000";
  std::string dasharray;  // empty = solid
};

struct ChartLine {
  const IndicatorSeries* series = nullptr;
  std::string label;
  LineStyle style;
};

// Self-contained SVG line chart: inline styles, no external fonts, output a
// pure function of the input. Each data series is exactly one <polyline>;
// axes, grid and legend use other primitives. Values are drawn on a fixed
// [0, 1] axis; the time axis spans the union of the input periods.
std::string line_chart(const std::string& title,
                       std::span<const ChartLine> lines);

}  // namespace disagg::svg

#pragma once

#include <string>

#include "wrangle/table.hpp"

namespace wrangle::chart {

struct ChartSpec {
  std::string category_col;
  std::string value_col;
  std::string title;
  int width = 640;
  int height = 480;
};

/// Geometry constants shared with tests that read the SVG back.
inline constexpr double kMarginLeft = 50;
inline constexpr double kMarginRight = 30;
inline constexpr double kMarginTop = 50;
inline constexpr double kMarginBottom = 60;
inline constexpr double kMaxBarFraction = 0.9;

/// Standalone SVG with one bar per row. The tallest bar spans 90% of the
/// plot height; every bar carries its category and its value to two
/// decimals as <text> elements. Throws UnknownColumn, TypeMismatch,
/// EmptyTable, NegativeValue.
std::string render_bar_chart(const Table& t, const ChartSpec& spec);

}  // namespace wrangle::chart

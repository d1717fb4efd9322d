#include "wrangle/chart.hpp"

#include <algorithm>
#include <cstdio>

#include "wrangle/error.hpp"

namespace wrangle::chart {

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_bar_chart(const Table& t, const ChartSpec& spec) {
  const Column& cats = t.column(spec.category_col);
  const Column& vals = t.column(spec.value_col);
  // a header-only CSV loads as Text, so emptiness has to win over the kind check
  if (t.row_count() == 0) fail(ErrorKind::EmptyTable, "cannot chart an empty table");
  if (!is_numeric(vals.kind)) {
    fail(ErrorKind::TypeMismatch, "chart value column '" + spec.value_col + "' is not numeric");
  }

  std::vector<double> values;
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    auto v = numeric_value(vals.cells[r]);
    if (!v) fail(ErrorKind::RangeError, "chart value missing at row " + std::to_string(r));
    if (*v < 0) fail(ErrorKind::NegativeValue, "chart value " + fixed2(*v) + " is negative");
    values.push_back(*v);
  }
  const double max_value = *std::max_element(values.begin(), values.end());

  const double plot_w = spec.width - kMarginLeft - kMarginRight;
  const double plot_h = spec.height - kMarginTop - kMarginBottom;
  const double baseline = kMarginTop + plot_h;
  const double slot = plot_w / static_cast<double>(values.size());
  const double bar_w = slot * 0.6;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
         "\" height=\"" + std::to_string(spec.height) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width) + " " + std::to_string(spec.height) + "\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" fill=\"white\" class=\"background\"/>\n";
  svg += "  <text x=\"" + fixed2(spec.width / 2.0) + "\" y=\"30.00\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\" class=\"title\">" +
         xml_escape(spec.title) + "</text>\n";
  svg += "  <line x1=\"" + fixed2(kMarginLeft) + "\" y1=\"" + fixed2(baseline) + "\" x2=\"" +
         fixed2(kMarginLeft + plot_w) + "\" y2=\"" + fixed2(baseline) +
         "\" stroke=\"black\"/>\n";
  svg += "  <line x1=\"" + fixed2(kMarginLeft) + "\" y1=\"" + fixed2(kMarginTop) + "\" x2=\"" +
         fixed2(kMarginLeft) + "\" y2=\"" + fixed2(baseline) + "\" stroke=\"black\"/>\n";

  for (std::size_t i = 0; i < values.size(); ++i) {
    double h = max_value > 0 ? values[i] / max_value * kMaxBarFraction * plot_h : 0.0;
    double x = kMarginLeft + slot * static_cast<double>(i) + slot * 0.2;
    double y = baseline - h;
    double cx = x + bar_w / 2;
    std::string label = xml_escape(format_cell(cats.cells[i]));
    svg += "  <rect class=\"bar\" x=\"" + fixed2(x) + "\" y=\"" + fixed2(y) + "\" width=\"" +
           fixed2(bar_w) + "\" height=\"" + fixed2(h) + "\" fill=\"steelblue\"/>\n";
    svg += "  <text class=\"value\" x=\"" + fixed2(cx) + "\" y=\"" + fixed2(y - 6) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           fixed2(values[i]) + "</text>\n";
    svg += "  <text class=\"category\" x=\"" + fixed2(cx) + "\" y=\"" + fixed2(baseline + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + label +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace wrangle::chart

#pragma once

#include <string>
#include <vector>

namespace infoacq::io {

// One panel of a line chart: a single series whose segments are drawn solid
// or dashed depending on the per-point flag (a segment is solid only when
// both endpoints are flagged).
struct ChartPanel {
  std::string title;
  std::string x_label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<bool> solid;
};

// Self-contained SVG 1.1 document with the panels stacked vertically, five
// labeled ticks per axis, no external references.
std::string render_line_charts(const std::vector<ChartPanel>& panels);

}  // namespace infoacq::io

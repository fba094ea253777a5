#include "infoacq/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace infoacq::io {

namespace {

constexpr double kPanelW = 640.0;
constexpr double kPanelH = 340.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 20.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 50.0;

std::string num(double v) {
  char tmp[32];
  std::snprintf(tmp, sizeof tmp, "%.6g", v);
  return tmp;
}

struct Range {
  double lo, hi;
};

Range padded_range(const std::vector<double>& vals) {
  double lo = vals.empty() ? 0.0 : vals[0];
  double hi = lo;
  for (double v : vals) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) {
    const double pad = std::max(1.0, std::fabs(hi)) * 0.5;
    lo -= pad;
    hi += pad;
  }
  return {lo, hi};
}

void render_panel(std::ostringstream& out, const ChartPanel& panel,
                  double y_off) {
  const Range xr = padded_range(panel.x);
  const Range yr = padded_range(panel.y);
  const double plot_w = kPanelW - kMarginL - kMarginR;
  const double plot_h = kPanelH - kMarginT - kMarginB;
  auto sx = [&](double v) {
    return kMarginL + (v - xr.lo) / (xr.hi - xr.lo) * plot_w;
  };
  auto sy = [&](double v) {
    return y_off + kMarginT + plot_h - (v - yr.lo) / (yr.hi - yr.lo) * plot_h;
  };

  out << "<g>\n";
  out << "<text x=\"" << num(kMarginL) << "\" y=\"" << num(y_off + 22)
      << "\" font-family=\"sans-serif\" font-size=\"14\">" << panel.title
      << "</text>\n";
  // axes
  const double x0 = kMarginL, x1 = kPanelW - kMarginR;
  const double yb = y_off + kMarginT + plot_h, yt = y_off + kMarginT;
  out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(yb) << "\" x2=\""
      << num(x1) << "\" y2=\"" << num(yb)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(yb) << "\" x2=\""
      << num(x0) << "\" y2=\"" << num(yt)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  // 5 labeled ticks per axis
  for (int i = 0; i < 5; ++i) {
    const double f = static_cast<double>(i) / 4.0;
    const double xv = xr.lo + f * (xr.hi - xr.lo);
    const double xp = sx(xv);
    out << "<line x1=\"" << num(xp) << "\" y1=\"" << num(yb) << "\" x2=\""
        << num(xp) << "\" y2=\"" << num(yb + 5)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(xp) << "\" y=\"" << num(yb + 20)
        << "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"middle\">"
        << num(xv) << "</text>\n";
    const double yv = yr.lo + f * (yr.hi - yr.lo);
    const double yp = sy(yv);
    out << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(yp) << "\" x2=\""
        << num(x0) << "\" y2=\"" << num(yp)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(x0 - 8) << "\" y=\"" << num(yp + 4)
        << "\" font-family=\"sans-serif\" font-size=\"11\" "
           "text-anchor=\"end\">"
        << num(yv) << "</text>\n";
  }
  out << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(yb + 38)
      << "\" font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\">"
      << panel.x_label << "</text>\n";

  // polyline runs split by segment style
  const std::size_t n = panel.x.size();
  std::size_t i = 0;
  while (i + 1 < n) {
    const bool solid = panel.solid[i] && panel.solid[i + 1];
    std::size_t j = i + 1;
    while (j + 1 < n && (panel.solid[j] && panel.solid[j + 1]) == solid) ++j;
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"";
    if (!solid) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t k = i; k <= j; ++k) {
      if (k > i) out << ' ';
      out << num(sx(panel.x[k])) << ',' << num(sy(panel.y[k]));
    }
    out << "\"/>\n";
    i = j;
  }
  out << "</g>\n";
}

}  // namespace

std::string render_line_charts(const std::vector<ChartPanel>& panels) {
  const double total_h = kPanelH * static_cast<double>(panels.size());
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"" << num(kPanelW) << "\" height=\"" << num(total_h)
      << "\" viewBox=\"0 0 " << num(kPanelW) << ' ' << num(total_h)
      << "\">\n";
  double y_off = 0.0;
  for (const ChartPanel& panel : panels) {
    render_panel(out, panel, y_off);
    y_off += kPanelH;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace infoacq::io

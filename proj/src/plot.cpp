#include "mimo/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <stdexcept>

namespace mimo::plot {

namespace {

constexpr double kPanelW = 360.0;
constexpr double kPanelH = 260.0;
constexpr double kMarginL = 56.0;
constexpr double kMarginT = 36.0;
constexpr double kMarginB = 44.0;
constexpr double kGap = 40.0;

constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c",
                                             "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

std::string islr_curves_svg(const std::vector<harness::CurvePoint>& points) {
  if (points.empty()) throw std::invalid_argument("nothing to plot");

  std::vector<std::string> order;
  std::map<std::string, std::vector<const harness::CurvePoint*>> series;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  for (const auto& p : points) {
    if (!series.contains(p.waveform)) order.push_back(p.waveform);
    series[p.waveform].push_back(&p);
    const double x = std::log2(static_cast<double>(std::max<std::size_t>(p.n_tx, 1)));
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
  }
  if (x_hi - x_lo < 1e-9) x_hi = x_lo + 1.0;
  for (auto& [name, s] : series) {
    std::sort(s.begin(), s.end(), [](auto* a, auto* b) { return a->n_tx < b->n_tx; });
  }

  using Field = double harness::CurvePoint::*;
  const std::array<std::pair<const char*, Field>, 3> panels{{
      {"Range-cut ISLR", &harness::CurvePoint::mean_range_db},
      {"Doppler-cut ISLR", &harness::CurvePoint::mean_doppler_db},
      {"2D ISLR", &harness::CurvePoint::mean_2d_db},
  }};

  const double cell_w = kMarginL + kPanelW + kGap;
  const double width = 3.0 * cell_w + 150.0;
  const double height = kMarginT + kPanelH + kMarginB;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", width) +
                    "\" height=\"" + fmt("%.0f", height) +
                    "\" font-family=\"sans-serif\" font-size=\"11\">\n"
                    "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t k = 0; k < panels.size(); ++k) {
    const auto [title, field] = panels[k];
    double y_lo = std::numeric_limits<double>::infinity(), y_hi = -y_lo;
    for (const auto& p : points) {
      y_lo = std::min(y_lo, p.*field);
      y_hi = std::max(y_hi, p.*field);
    }
    y_lo = std::floor(y_lo / 5.0) * 5.0;
    y_hi = std::ceil(y_hi / 5.0) * 5.0;
    if (y_hi - y_lo < 5.0) y_hi = y_lo + 5.0;

    const double ox = static_cast<double>(k) * cell_w + kMarginL;
    const double oy = kMarginT;
    auto px = [&](double x) { return ox + (x - x_lo) / (x_hi - x_lo) * kPanelW; };
    auto py = [&](double y) { return oy + (y_hi - y) / (y_hi - y_lo) * kPanelH; };

    svg += "<text x=\"" + fmt("%.1f", ox + kPanelW / 2) + "\" y=\"" + fmt("%.1f", oy - 12) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + title + " (dB)</text>\n";
    svg += "<rect x=\"" + fmt("%.1f", ox) + "\" y=\"" + fmt("%.1f", oy) + "\" width=\"" +
           fmt("%.1f", kPanelW) + "\" height=\"" + fmt("%.1f", kPanelH) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    const double y_step = (y_hi - y_lo) > 40.0 ? 20.0 : 5.0;
    for (double y = y_lo; y <= y_hi + 1e-9; y += y_step) {
      svg += "<line x1=\"" + fmt("%.1f", ox) + "\" x2=\"" + fmt("%.1f", ox + kPanelW) +
             "\" y1=\"" + fmt("%.1f", py(y)) + "\" y2=\"" + fmt("%.1f", py(y)) +
             "\" stroke=\"#ddd\"/>\n";
      svg += "<text x=\"" + fmt("%.1f", ox - 6) + "\" y=\"" + fmt("%.1f", py(y) + 4) +
             "\" text-anchor=\"end\">" + fmt("%.0f", y) + "</text>\n";
    }
    for (double x = std::ceil(x_lo); x <= x_hi + 1e-9; x += 1.0) {
      svg += "<text x=\"" + fmt("%.1f", px(x)) + "\" y=\"" + fmt("%.1f", oy + kPanelH + 16) +
             "\" text-anchor=\"middle\">" + fmt("%.0f", std::exp2(x)) + "</text>\n";
    }
    svg += "<text x=\"" + fmt("%.1f", ox + kPanelW / 2) + "\" y=\"" +
           fmt("%.1f", oy + kPanelH + 34) + "\" text-anchor=\"middle\">N_tx</text>\n";

    for (std::size_t s = 0; s < order.size(); ++s) {
      std::string pts;
      for (const auto* p : series[order[s]]) {
        const double x = std::log2(static_cast<double>(std::max<std::size_t>(p->n_tx, 1)));
        pts += fmt("%.2f", px(x)) + "," + fmt("%.2f", py(p->*field)) + " ";
      }
      svg += "<polyline fill=\"none\" stroke-width=\"1.8\" stroke=\"" +
             std::string(kColors[s % kColors.size()]) + "\" points=\"" + pts + "\"/>\n";
    }
  }

  const double lx = 3.0 * cell_w;
  for (std::size_t s = 0; s < order.size(); ++s) {
    const double ly = kMarginT + 10.0 + 18.0 * static_cast<double>(s);
    svg += "<line x1=\"" + fmt("%.1f", lx) + "\" x2=\"" + fmt("%.1f", lx + 20) + "\" y1=\"" +
           fmt("%.1f", ly) + "\" y2=\"" + fmt("%.1f", ly) + "\" stroke-width=\"2\" stroke=\"" +
           kColors[s % kColors.size()] + "\"/>\n";
    svg += "<text x=\"" + fmt("%.1f", lx + 26) + "\" y=\"" + fmt("%.1f", ly + 4) + "\">" +
           escape(order[s]) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace mimo::plot

#include "phasedisc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace phasedisc {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 180.0;
constexpr double kMarginTop = 44.0;
constexpr double kMarginBottom = 56.0;

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Bounds {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void expand(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

std::vector<double> ticks(const Bounds& b, int count) {
  const double raw = (b.hi - b.lo) / count;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  double step = magnitude;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (magnitude * m >= raw) {
      step = magnitude * m;
      break;
    }
  }
  std::vector<double> out;
  for (double v = std::ceil(b.lo / step) * step; v <= b.hi + 1e-12 * step;
       v += step) {
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return out;
}

std::string escape_xml(const std::string& s) {
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

void write_svg_chart(const std::string& path, const PlotSpec& spec) {
  std::size_t total_points = 0;
  for (const PlotSeries& s : spec.series) total_points += s.points.size();
  if (total_points == 0) {
    throw std::runtime_error("write_svg_chart: no data to plot");
  }

  Bounds xb, yb;
  for (const PlotSeries& s : spec.series) {
    for (const PlotPoint& p : s.points) {
      xb.expand(p.x);
      yb.expand(p.y);
      if (p.yerr) {
        yb.expand(p.y - *p.yerr);
        yb.expand(p.y + *p.yerr);
      }
    }
  }
  xb.pad();
  yb.pad();

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto to_x = [&](double v) {
    return kMarginLeft + (v - xb.lo) / (xb.hi - xb.lo) * plot_w;
  };
  const auto to_y = [&](double v) {
    return kMarginTop + plot_h - (v - yb.lo) / (yb.hi - yb.lo) * plot_h;
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes and grid.
  out << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (double v : ticks(xb, 6)) {
    const double x = to_x(v);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kMarginTop)
        << "\" x2=\"" << num(x) << "\" y2=\"" << num(kMarginTop + plot_h)
        << "\"/>\n";
  }
  for (double v : ticks(yb, 6)) {
    const double y = to_y(v);
    out << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(y)
        << "\" x2=\"" << num(kMarginLeft + plot_w) << "\" y2=\"" << num(y)
        << "\"/>\n";
  }
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  for (double v : ticks(xb, 6)) {
    out << "<text x=\"" << num(to_x(v)) << "\" y=\""
        << num(kMarginTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << num(v) << "</text>\n";
  }
  for (double v : ticks(yb, 6)) {
    out << "<text x=\"" << num(kMarginLeft - 8) << "\" y=\""
        << num(to_y(v) + 4) << "\" text-anchor=\"end\">" << num(v)
        << "</text>\n";
  }
  out << "<text x=\"" << num(kMarginLeft + plot_w / 2) << "\" y=\""
      << num(kHeight - 12) << "\" text-anchor=\"middle\">"
      << escape_xml(spec.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << num(kMarginTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(kMarginTop + plot_h / 2) << ")\">" << escape_xml(spec.y_label)
      << "</text>\n";
  out << "<text x=\"" << num(kMarginLeft + plot_w / 2)
      << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape_xml(spec.title) << "</text>\n";
  out << "</g>\n";
  out << "<rect x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop)
      << "\" width=\"" << num(plot_w) << "\" height=\"" << num(plot_h)
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";

  // Series.
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const PlotSeries& s = spec.series[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))];
    if (s.points.size() > 1) {
      out << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (const PlotPoint& p : s.points) {
        out << num(to_x(p.x)) << ',' << num(to_y(p.y)) << ' ';
      }
      out << "\"/>\n";
    }
    std::size_t with_err = 0;
    for (const PlotPoint& p : s.points) {
      if (p.yerr) ++with_err;
    }
    const std::size_t every =
        with_err > spec.max_error_bars
            ? (with_err + spec.max_error_bars - 1) / spec.max_error_bars
            : 1;
    std::size_t err_seen = 0;
    for (const PlotPoint& p : s.points) {
      if (s.points.size() <= 64) {
        out << "<circle cx=\"" << num(to_x(p.x)) << "\" cy=\""
            << num(to_y(p.y)) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
      }
      if (!p.yerr) continue;
      if (err_seen++ % every != 0) continue;
      const double x = to_x(p.x);
      const double y_lo = to_y(p.y - *p.yerr);
      const double y_hi = to_y(p.y + *p.yerr);
      out << "<g stroke=\"" << color << "\" stroke-width=\"1\">"
          << "<line x1=\"" << num(x) << "\" y1=\"" << num(y_lo) << "\" x2=\""
          << num(x) << "\" y2=\"" << num(y_hi) << "\"/>"
          << "<line x1=\"" << num(x - 3) << "\" y1=\"" << num(y_lo)
          << "\" x2=\"" << num(x + 3) << "\" y2=\"" << num(y_lo) << "\"/>"
          << "<line x1=\"" << num(x - 3) << "\" y1=\"" << num(y_hi)
          << "\" x2=\"" << num(x + 3) << "\" y2=\"" << num(y_hi) << "\"/>"
          << "</g>\n";
    }
  }

  // Legend.
  out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#333333\">\n";
  double legend_y = kMarginTop + 10;
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))];
    const double x = kMarginLeft + plot_w + 14;
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(legend_y - 4)
        << "\" x2=\"" << num(x + 22) << "\" y2=\"" << num(legend_y - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(x + 28) << "\" y=\"" << num(legend_y) << "\">"
        << escape_xml(spec.series[i].name) << "</text>\n";
    legend_y += 18;
  }
  out << "</g>\n</svg>\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace phasedisc

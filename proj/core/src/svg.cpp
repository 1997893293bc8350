#include "brw/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "brw/csv.hpp"

namespace brw::svg {

namespace {

using csv::format_number;

constexpr double kWidth = 860.0;
constexpr double kHeight = 520.0;
constexpr double kMarginL = 80.0;
constexpr double kMarginR = 30.0;
constexpr double kMarginT = 50.0;
constexpr double kMarginB = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range pad(Range r) {
  if (r.hi <= r.lo) {
    r.lo -= 0.5;
    r.hi += 0.5;
    return r;
  }
  const double w = r.hi - r.lo;
  r.lo -= 0.05 * w;
  r.hi += 0.05 * w;
  return r;
}

double nice_step(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step = 10.0;
  if (frac <= 1.0) step = 1.0;
  else if (frac <= 2.0) step = 2.0;
  else if (frac <= 5.0) step = 5.0;
  return step * mag;
}

std::string esc(const std::string& s) {
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

class Canvas {
 public:
  explicit Canvas(const std::filesystem::path& path)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
         << format_number(kWidth) << "\" height=\"" << format_number(kHeight)
         << "\" viewBox=\"0 0 " << format_number(kWidth) << " "
         << format_number(kHeight) << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
  ~Canvas() { out_ << "</svg>\n"; }

  void line(double x1, double y1, double x2, double y2,
            const std::string& stroke, double width = 1.0,
            const std::string& dash = "") {
    out_ << "<line x1=\"" << format_number(x1) << "\" y1=\""
         << format_number(y1) << "\" x2=\"" << format_number(x2)
         << "\" y2=\"" << format_number(y2) << "\" stroke=\"" << stroke
         << "\" stroke-width=\"" << format_number(width) << "\"";
    if (!dash.empty()) out_ << " stroke-dasharray=\"" << dash << "\"";
    out_ << "/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts,
                const std::string& stroke) {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke
         << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ << ' ';
      out_ << format_number(pts[i].first) << ',' << format_number(pts[i].second);
    }
    out_ << "\"/>\n";
  }

  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "none") {
    out_ << "<rect x=\"" << format_number(x) << "\" y=\"" << format_number(y)
         << "\" width=\"" << format_number(w) << "\" height=\""
         << format_number(h) << "\" fill=\"" << fill << "\" stroke=\""
         << stroke << "\"/>\n";
  }

  void text(double x, double y, const std::string& s, int size = 12,
            const std::string& anchor = "start", double rotate = 0.0) {
    out_ << "<text x=\"" << format_number(x) << "\" y=\"" << format_number(y)
         << "\" font-family=\"monospace\" font-size=\"" << size
         << "\" text-anchor=\"" << anchor << "\"";
    if (rotate != 0.0)
      out_ << " transform=\"rotate(" << format_number(rotate) << ' '
           << format_number(x) << ' ' << format_number(y) << ")\"";
    out_ << '>' << esc(s) << "</text>\n";
  }

 private:
  std::ofstream out_;
};

void draw_axes(Canvas& c, const Range& xr, const Range& yr,
               const std::string& title, const std::string& x_label,
               const std::string& y_label) {
  const double x0 = kMarginL, x1 = kWidth - kMarginR;
  const double y0 = kHeight - kMarginB, y1 = kMarginT;
  auto sx = [&](double v) {
    return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0);
  };
  auto sy = [&](double v) {
    return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - y1);
  };
  c.line(x0, y0, x1, y0, "black");
  c.line(x0, y0, x0, y1, "black");
  const double xs = nice_step(xr.hi - xr.lo);
  for (double v = std::ceil(xr.lo / xs) * xs; v <= xr.hi + 1e-12; v += xs) {
    c.line(sx(v), y0, sx(v), y0 + 5, "black");
    c.line(sx(v), y0, sx(v), y1, "#dddddd", 0.5);
    c.text(sx(v), y0 + 18, format_number(v + 0.0), 11, "middle");
  }
  const double ys = nice_step(yr.hi - yr.lo);
  for (double v = std::ceil(yr.lo / ys) * ys; v <= yr.hi + 1e-12; v += ys) {
    c.line(x0 - 5, sy(v), x0, sy(v), "black");
    c.line(x0, sy(v), x1, sy(v), "#dddddd", 0.5);
    c.text(x0 - 8, sy(v) + 4, format_number(v + 0.0), 11, "end");
  }
  c.text((x0 + x1) / 2, kMarginT - 25 + 10, title, 14, "middle");
  c.text((x0 + x1) / 2, kHeight - 15, x_label, 12, "middle");
  c.text(20, (y0 + y1) / 2, y_label, 12, "middle", -90.0);
}

}  // namespace

void line_chart(const std::filesystem::path& path, const std::string& title,
                const std::string& x_label, const std::string& y_label,
                const std::vector<Series>& series) {
  Range xr{1e300, -1e300}, yr{1e300, -1e300};
  for (const Series& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xr.lo = std::min(xr.lo, s.x[i]);
      xr.hi = std::max(xr.hi, s.x[i]);
      yr.lo = std::min(yr.lo, s.y[i]);
      yr.hi = std::max(yr.hi, s.y[i]);
    }
  if (xr.lo > xr.hi) xr = {0.0, 1.0};
  if (yr.lo > yr.hi) yr = {0.0, 1.0};
  yr = pad(yr);

  Canvas c(path);
  draw_axes(c, xr, yr, title, x_label, y_label);
  const double x0 = kMarginL, x1 = kWidth - kMarginR;
  const double y0 = kHeight - kMarginB, y1 = kMarginT;
  auto sx = [&](double v) {
    return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0);
  };
  auto sy = [&](double v) {
    return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - y1);
  };
  for (std::size_t k = 0; k < series.size(); ++k) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < series[k].x.size(); ++i) {
      if (!std::isfinite(series[k].y[i])) continue;
      pts.emplace_back(sx(series[k].x[i]), sy(series[k].y[i]));
    }
    const std::string color = kPalette[k % 8];
    c.polyline(pts, color);
    const double ly = kMarginT + 16.0 * static_cast<double>(k);
    c.line(x1 - 150, ly, x1 - 120, ly, color, 2.0);
    c.text(x1 - 112, ly + 4, series[k].label, 11);
  }
}

void bar_panels(const std::filesystem::path& path, const std::string& title,
                const std::string& y_label, const BarPanel& left,
                const BarPanel& right) {
  Canvas c(path);
  c.text(kWidth / 2, 25, title, 14, "middle");

  const BarPanel* panels[2] = {&left, &right};
  for (int p = 0; p < 2; ++p) {
    const BarPanel& panel = *panels[p];
    const double px0 = p == 0 ? kMarginL : kWidth / 2 + 40;
    const double px1 = p == 0 ? kWidth / 2 - 20 : kWidth - kMarginR;
    const double py0 = kHeight - kMarginB, py1 = kMarginT + 20;
    Range yr{0.0, 1.0};
    if (!panel.values.empty()) {
      yr.hi = *std::max_element(panel.values.begin(), panel.values.end());
      if (panel.has_reference) yr.hi = std::max(yr.hi, panel.reference_line);
      if (yr.hi <= 0.0) yr.hi = 1.0;
      yr.hi *= 1.05;
    }
    auto sy = [&](double v) { return py0 - v / yr.hi * (py0 - py1); };
    c.line(px0, py0, px1, py0, "black");
    c.line(px0, py0, px0, py1, "black");
    const double ys = nice_step(yr.hi);
    for (double v = 0.0; v <= yr.hi + 1e-12; v += ys) {
      c.line(px0 - 5, sy(v), px0, sy(v), "black");
      c.text(px0 - 8, sy(v) + 4, format_number(v), 10, "end");
    }
    const auto n = panel.values.size();
    if (n != 0) {
      const double slot = (px1 - px0) / static_cast<double>(n);
      const double bw = std::max(1.0, slot * 0.8);
      for (std::size_t i = 0; i < n; ++i) {
        const bool dim = i < panel.dimmed.size() && panel.dimmed[i];
        const double h = std::max(0.0, panel.values[i]);
        c.rect(px0 + slot * static_cast<double>(i) + (slot - bw) / 2, sy(h),
               bw, py0 - sy(h), dim ? "none" : "#1f77b4",
               dim ? "#d62728" : "none");
      }
    }
    if (panel.has_reference)
      c.line(px0, sy(panel.reference_line), px1, sy(panel.reference_line),
             "#d62728", 1.5, "6,3");
    c.text((px0 + px1) / 2, py1 - 8, panel.title, 12, "middle");
  }
  c.text(20, kHeight / 2, y_label, 12, "middle", -90.0);
  c.text(kWidth / 2, kHeight - 15, "medium index (sorted by value)", 12,
         "middle");
}

}  // namespace brw::svg

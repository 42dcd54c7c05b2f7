#include "nsconv/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nsconv/sweep.hpp"

namespace nsconv {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};

struct Axis {
  bool log = false;
  double lo = 0.0, hi = 1.0;  // transformed bounds

  double transform(double v) const { return log ? std::log10(v) : v; }
  bool admits(double v) const { return !log || v > 0.0; }

  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      for (int d = static_cast<int>(std::ceil(lo - 1e-9)); d <= std::floor(hi + 1e-9); ++d)
        t.push_back(d);
      if (t.empty()) t = {lo, hi};
      return t;
    }
    const double span = hi - lo;
    double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
    if (span / step > 8.0) step *= 2.0;
    if (span / step > 8.0) step *= 2.5;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
      t.push_back(v);
    return t;
  }

  std::string tick_label(double t) const {
    const double v = log ? std::pow(10.0, t) : t;
    const double r = std::round(v * 1e6) / 1e6;  // drop tick arithmetic fuzz
    return format_double(r);
  }
};

}  // namespace

void write_svg_chart(const std::filesystem::path& file, const PlotSpec& spec) {
  const double W = 760, H = 520;
  const double ml = 70, mr = 180, mt = 45, mb = 55;
  const double pw = W - ml - mr, ph = H - mt - mb;

  Axis xa, ya;
  xa.log = spec.log_x;
  ya.log = spec.log_y;
  bool any = false;
  double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
  for (const PlotSeries& s : spec.series)
    for (auto [x, y] : s.points) {
      if (!xa.admits(x) || !ya.admits(y) || !std::isfinite(x) || !std::isfinite(y)) continue;
      const double tx = xa.transform(x), ty = ya.transform(y);
      if (!any) {
        xlo = xhi = tx;
        ylo = yhi = ty;
        any = true;
      } else {
        xlo = std::min(xlo, tx);
        xhi = std::max(xhi, tx);
        ylo = std::min(ylo, ty);
        yhi = std::max(yhi, ty);
      }
    }
  if (!any) {
    xlo = ylo = 0;
    xhi = yhi = 1;
  }
  auto pad = [](double& lo, double& hi) {
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    } else {
      const double p = 0.04 * (hi - lo);
      lo -= p;
      hi += p;
    }
  };
  pad(xlo, xhi);
  pad(ylo, yhi);
  xa.lo = xlo;
  xa.hi = xhi;
  ya.lo = ylo;
  ya.hi = yhi;

  auto px = [&](double v) { return ml + (xa.transform(v) - xa.lo) / (xa.hi - xa.lo) * pw; };
  auto py = [&](double v) { return mt + ph - (ya.transform(v) - ya.lo) / (ya.hi - ya.lo) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\" "
         "font-family=\"sans-serif\">" << spec.title << "</text>\n";

  for (double t : xa.ticks()) {
    const double x = ml + (t - xa.lo) / (xa.hi - xa.lo) * pw;
    if (x < ml - 0.5 || x > ml + pw + 0.5) continue;
    svg << "<line x1=\"" << x << "\" y1=\"" << mt << "\" x2=\"" << x << "\" y2=\"" << mt + ph
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << mt + ph + 18
        << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">"
        << xa.tick_label(t) << "</text>\n";
  }
  for (double t : ya.ticks()) {
    const double y = mt + ph - (t - ya.lo) / (ya.hi - ya.lo) * ph;
    if (y < mt - 0.5 || y > mt + ph + 0.5) continue;
    svg << "<line x1=\"" << ml << "\" y1=\"" << y << "\" x2=\"" << ml + pw << "\" y2=\"" << y
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << ml - 6 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">"
        << ya.tick_label(t) << "</text>\n";
  }
  svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">"
      << spec.x_label << "</text>\n";
  svg << "<text x=\"18\" y=\"" << mt + ph / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
         "transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << spec.y_label << "</text>\n";

  int ci = 0;
  double ly = mt + 10;
  for (const PlotSeries& s : spec.series) {
    const char* color = kPalette[ci++ % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (s.dots) {
      for (auto [x, y] : s.points) {
        if (!xa.admits(x) || !ya.admits(y) || !std::isfinite(x) || !std::isfinite(y)) continue;
        svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3.5\" fill=\""
            << color << "\"/>\n";
      }
    } else {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
      for (auto [x, y] : s.points) {
        if (!xa.admits(x) || !ya.admits(y) || !std::isfinite(x) || !std::isfinite(y)) continue;
        svg << px(x) << "," << py(y) << " ";
      }
      svg << "\"/>\n";
    }
    svg << "<rect x=\"" << ml + pw + 14 << "\" y=\"" << ly - 8 << "\" width=\"14\" height=\"4\" fill=\""
        << color << "\"/>\n";
    svg << "<text x=\"" << ml + pw + 32 << "\" y=\"" << ly - 2
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << s.label << "</text>\n";
    ly += 16;
  }
  svg << "</svg>\n";

  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError(file, "cannot open for writing");
  out << svg.str();
  out.flush();
  if (!out) throw IoError(file, "write failed");
}

}  // namespace nsconv

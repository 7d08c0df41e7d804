#include "pswitch/io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pswitch {

namespace {

constexpr double kW = 880, kH = 500;
constexpr double kL = 64, kR = 24, kT = 24, kB = 44;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_regions_svg(const Grid& grid, const GFunctions& g,
                               const RegionStructure& rs) {
  const std::size_t n = grid.n();
  if (g.g1.size() != n || g.g2.size() != n)
    throw std::invalid_argument("render_regions_svg: size mismatch");

  const double lx0 = std::log(grid.x_min()), lx1 = std::log(grid.x_max());
  const auto px = [&](double x) {
    return kL + (std::log(x) - lx0) / (lx1 - lx0) * (kW - kL - kR);
  };

  double ymin = 0.0, ymax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    ymin = std::min({ymin, g.g1[k], g.g2[k]});
    ymax = std::max({ymax, g.g1[k], g.g2[k]});
  }
  const double pad = 0.05 * (ymax - ymin + 1e-12);
  ymin -= pad;
  ymax += pad;
  const auto py = [&](double y) {
    return kT + (ymax - y) / (ymax - ymin) * (kH - kT - kB);
  };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW) +
       "\" height=\"" + num(kH) + "\" viewBox=\"0 0 " + num(kW) + " " +
       num(kH) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Shaded switch regions: S1 to the right of its threshold, S2 to the left.
  if (!rs.s1_empty) {
    const double xa = std::clamp(rs.x_lower1.value, grid.x_min(), grid.x_max());
    s += "<rect x=\"" + num(px(xa)) + "\" y=\"" + num(kT) + "\" width=\"" +
         num(kW - kR - px(xa)) + "\" height=\"" + num(kH - kT - kB) +
         "\" fill=\"#4682b4\" opacity=\"0.15\"/>\n";
  }
  if (!rs.s2_empty) {
    const double xb = std::isfinite(rs.x_upper2.value)
                          ? std::clamp(rs.x_upper2.value, grid.x_min(), grid.x_max())
                          : grid.x_max();
    s += "<rect x=\"" + num(kL) + "\" y=\"" + num(kT) + "\" width=\"" +
         num(px(xb) - kL) + "\" height=\"" + num(kH - kT - kB) +
         "\" fill=\"#b22222\" opacity=\"0.15\"/>\n";
  }

  // Axes and the zero level.
  s += "<line x1=\"" + num(kL) + "\" y1=\"" + num(kH - kB) + "\" x2=\"" +
       num(kW - kR) + "\" y2=\"" + num(kH - kB) +
       "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + num(kL) + "\" y1=\"" + num(kT) + "\" x2=\"" + num(kL) +
       "\" y2=\"" + num(kH - kB) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  if (ymin < 0.0 && ymax > 0.0)
    s += "<line x1=\"" + num(kL) + "\" y1=\"" + num(py(0.0)) + "\" x2=\"" +
         num(kW - kR) + "\" y2=\"" + num(py(0.0)) +
         "\" stroke=\"#888888\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";

  const auto polyline = [&](const std::vector<double>& y, const char* color) {
    std::string p = "<polyline fill=\"none\" stroke=\"";
    p += color;
    p += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < n; ++k) {
      p += num(px(grid.x[k])) + "," + num(py(y[k]));
      if (k + 1 < n) p += " ";
    }
    p += "\"/>\n";
    return p;
  };
  s += polyline(g.g1, "#4682b4");
  s += polyline(g.g2, "#b22222");

  char buf[220];
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"13\">x (log scale), "
                "%.4g to %.4g</text>\n",
                kL, kH - 12.0, grid.x_min(), grid.x_max());
  s += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"13\" fill=\"#4682b4\">"
                "G1 (switch 1-&gt;2 where G1 &lt;= 0)</text>\n",
                kL + 8.0, kT + 16.0);
  s += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"13\" fill=\"#b22222\">"
                "G2 (switch 2-&gt;1 where G2 &lt;= 0)</text>\n",
                kL + 8.0, kT + 34.0);
  s += buf;
  s += "</svg>\n";
  return s;
}

}  // namespace pswitch

#include "pswitch/regions.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace pswitch {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GFunctions g_functions(const ValueSolution& sol, const ModelSpec& m) {
  const std::size_t n = sol.grid.n();
  if (sol.v1.size() != n || sol.v2.size() != n)
    throw std::invalid_argument("g_functions: solution arrays do not match grid");
  GFunctions g;
  g.g1.resize(n);
  g.g2.resize(n);
  const double s = m.g12 + m.g21;
  for (std::size_t k = 0; k < n; ++k) {
    g.g1[k] = sol.v1[k] - sol.v2[k] + m.g12;
    g.g2[k] = s - g.g1[k];
  }
  return g;
}

RegionStructure detect_regions(const std::vector<double>& g1,
                               const std::vector<double>& g2,
                               const Grid& grid) {
  const std::size_t n = grid.n();
  if (g1.size() != n || g2.size() != n)
    throw std::invalid_argument("detect_regions: array sizes do not match grid");

  RegionStructure rs;

  // S1 should be a suffix of nodes: its indicator never steps back to 0.
  std::size_t first1 = n;
  std::size_t s1_exits = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const bool in = g1[k] <= 0.0;
    if (in && first1 == n) first1 = k;
    if (k > 0 && g1[k - 1] <= 0.0 && !in) ++s1_exits;
  }
  rs.s1_empty = first1 == n;
  if (rs.s1_empty) {
    rs.x_lower1 = {kInf, grid.x_max(), kInf};
  } else if (first1 == 0) {
    rs.s1_full = s1_exits == 0;
    rs.x_lower1 = {grid.x_min(), 0.0, grid.x_min()};
  } else {
    const double ga = g1[first1 - 1], gb = g1[first1];
    const double t = ga / (ga - gb);
    const double xa = grid.x[first1 - 1], xb = grid.x[first1];
    rs.x_lower1 = {xa + t * (xb - xa), xa, xb};
  }

  // S2 should be a prefix: its indicator never comes back after leaving.
  std::size_t last2 = n;
  std::size_t s2_entries = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const bool in = g2[k] <= 0.0;
    if (in) last2 = k;
    if (k > 0 && g2[k - 1] > 0.0 && in) ++s2_entries;
  }
  rs.s2_empty = last2 == n;
  const bool s2_prefix = rs.s2_empty || (g2[0] <= 0.0 && s2_entries == 0);
  if (rs.s2_empty) {
    rs.x_upper2 = {0.0, 0.0, 0.0};
  } else if (last2 == n - 1) {
    rs.s2_full = s2_prefix;
    rs.x_upper2 = {kInf, grid.x_max(), kInf};
  } else {
    const double ga = g2[last2], gb = g2[last2 + 1];
    const double t = -ga / (gb - ga);
    const double xa = grid.x[last2], xb = grid.x[last2 + 1];
    rs.x_upper2 = {xa + t * (xb - xa), xa, xb};
  }

  rs.structure_ok = s1_exits == 0 && s2_prefix;
  if (!rs.structure_ok) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "region indicators fragmented: S1 exits %zu times, S2 re-enters %zu times",
                  s1_exits, s2_entries);
    rs.diagnostics = buf;
  }
  return rs;
}

Classification classify(const ModelSpec& m) {
  const NormalizedModel nm = normalize(m);
  const ModelSpec& s = nm.spec;
  const double flim = f_limit(s);
  if (!(flim > 0.0))
    throw std::invalid_argument("classify: profit gap must increase toward a positive limit");

  const double p = s.a1 * s.g12;
  const double r = s.a1 * s.g21;
  const bool fin = std::isfinite(flim);

  const auto pick = [](bool high, int rb) -> int {
    if (high) return rb == 0 ? 1 : (rb == 1 ? 2 : 3);
    return rb == 0 ? 4 : (rb == 1 ? 5 : 0);
  };

  const bool high = fin && p >= flim;
  const int rb = r >= 0.0 ? 0 : (fin && r <= -flim ? 2 : 1);
  if (!high && rb == 2)
    throw std::logic_error(
        "classify: a1*g12 < F(inf) with a1*g21 <= -F(inf) forces "
        "a1*(g12+g21) < 0, contradicting g12 + g21 > 0");

  Classification c;
  c.case_id = pick(high, rb);
  c.f_limit = flim;

  const double eta =
      1e-9 * (1.0 + std::abs(p) + std::abs(r) + (fin ? flim : 0.0));
  int alt = 0;
  if (fin && std::abs(p - flim) <= eta)
    alt = pick(!high, rb);
  else if (std::abs(r) <= eta)
    alt = pick(high, rb == 0 ? 1 : 0);
  else if (fin && rb != 0 && std::abs(r + flim) <= eta)
    alt = pick(high, rb == 1 ? 2 : 1);
  if (alt == c.case_id) alt = 0;
  c.alternate = alt;
  return c;
}

namespace {

int observed_case(const RegionStructure& rs) {
  if (!rs.structure_ok || rs.s1_full) return 0;
  if (rs.s1_empty) {
    if (rs.s2_empty) return 1;
    return rs.s2_full ? 3 : 2;
  }
  if (rs.s2_empty) return 4;
  return rs.s2_full ? 0 : 5;
}

}  // namespace

RegionReport verify_regions(const ModelSpec& m, const ValueSolution& sol) {
  RegionReport r;
  r.g = g_functions(sol, m);
  r.structure = detect_regions(r.g.g1, r.g.g2, sol.grid);
  r.predicted = classify(m);
  r.case_observed = observed_case(r.structure);

  r.consistent = r.structure.structure_ok && r.case_observed == r.predicted.case_id;
  if (!r.consistent && r.structure.structure_ok && r.predicted.alternate != 0 &&
      r.case_observed == r.predicted.alternate) {
    r.consistent = true;
    r.note = "observed the advisory alternate of a borderline classification";
  } else if (!r.consistent) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "predicted case %d, observed %d%s",
                  r.predicted.case_id, r.case_observed,
                  r.structure.structure_ok ? "" : " (fragmented regions)");
    r.note = buf;
  } else if (r.predicted.alternate != 0) {
    r.note = "classification is near a case boundary";
  }
  return r;
}

double max_increase_slope(const std::vector<double>& g, const Grid& grid) {
  double worst = -kInf;
  for (std::size_t k = 0; k + 1 < g.size(); ++k)
    worst = std::max(worst, (g[k + 1] - g[k]) / (grid.x[k + 1] - grid.x[k]));
  return worst;
}

double max_decrease_slope(const std::vector<double>& g, const Grid& grid) {
  double worst = -kInf;
  for (std::size_t k = 0; k + 1 < g.size(); ++k)
    worst = std::max(worst, (g[k] - g[k + 1]) / (grid.x[k + 1] - grid.x[k]));
  return worst;
}

}  // namespace pswitch

#include "pswitch/profit.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "pswitch/kernels.hpp"

namespace pswitch {

ProfitSpec ProfitSpec::zero() { return {}; }

ProfitSpec ProfitSpec::linear(double c) {
  ProfitSpec p;
  p.family = Family::linear;
  p.c = c;
  return p;
}

ProfitSpec ProfitSpec::saturating(double c, double k) {
  ProfitSpec p;
  p.family = Family::saturating;
  p.c = c;
  p.k = k;
  return p;
}

ProfitSpec ProfitSpec::piecewise(std::vector<Knot> knots) {
  ProfitSpec p;
  p.family = Family::piecewise;
  p.knots = std::move(knots);
  return p;
}

double ProfitSpec::operator()(double x) const {
  switch (family) {
    case Family::zero:
      return 0.0;
    case Family::linear:
      return c * x;
    case Family::saturating:
      // Same arithmetic as the vector kernel so both paths agree bitwise.
      return c * x / std::fma(k, x, 1.0);
    case Family::piecewise: {
      // Index of the segment containing x; the last slope extends beyond the
      // final knot.
      std::size_t j = knots.size() - 1;
      while (j > 0 && knots[j].x > x) --j;
      if (j == knots.size() - 1 && knots.size() > 1) --j;
      const Knot& a = knots[j];
      const Knot& b = knots[j + 1];
      const double slope = (b.y - a.y) / (b.x - a.x);
      return a.y + slope * (x - a.x);
    }
  }
  return 0.0;
}

void ProfitSpec::eval_v(const double* x, double* out, std::size_t n) const {
  switch (family) {
    case Family::zero:
      std::fill(out, out + n, 0.0);
      return;
    case Family::linear:
      kernels::scale_v(c, x, out, n);
      return;
    case Family::saturating:
      kernels::saturating_v(c, k, x, out, n);
      return;
    case Family::piecewise:
      for (std::size_t i = 0; i < n; ++i) out[i] = (*this)(x[i]);
      return;
  }
}

double ProfitSpec::value0() const {
  return family == Family::piecewise ? knots.front().y : 0.0;
}

double ProfitSpec::slope0() const {
  switch (family) {
    case Family::zero:
      return 0.0;
    case Family::linear:
    case Family::saturating:
      return c;
    case Family::piecewise:
      if (knots.size() < 2) return 0.0;
      return (knots[1].y - knots[0].y) / (knots[1].x - knots[0].x);
  }
  return 0.0;
}

double ProfitSpec::lipschitz() const {
  switch (family) {
    case Family::zero:
      return 0.0;
    case Family::linear:
    case Family::saturating:
      return std::abs(c);
    case Family::piecewise: {
      double m = 0.0;
      for (std::size_t j = 0; j + 1 < knots.size(); ++j)
        m = std::max(m, std::abs((knots[j + 1].y - knots[j].y) /
                                 (knots[j + 1].x - knots[j].x)));
      return m;
    }
  }
  return 0.0;
}

ProfitSpec::Tail ProfitSpec::tail() const {
  switch (family) {
    case Family::zero:
      return {0.0, 0.0};
    case Family::linear:
      return {c, 0.0};
    case Family::saturating:
      return {0.0, k > 0.0 ? c / k : 0.0};
    case Family::piecewise: {
      if (knots.size() < 2) return {0.0, knots.empty() ? 0.0 : knots[0].y};
      const Knot& a = knots[knots.size() - 2];
      const Knot& b = knots.back();
      const double slope = (b.y - a.y) / (b.x - a.x);
      return {slope, b.y - slope * b.x};
    }
  }
  return {0.0, 0.0};
}

std::optional<std::string> ProfitSpec::shape_error() const {
  switch (family) {
    case Family::zero:
      return std::nullopt;
    case Family::linear:
      if (!std::isfinite(c) || c < 0.0) return "linear profit needs slope c >= 0";
      return std::nullopt;
    case Family::saturating:
      if (!std::isfinite(c) || !std::isfinite(k) || c < 0.0 || k <= 0.0)
        return "saturating profit needs c >= 0 and k > 0";
      return std::nullopt;
    case Family::piecewise: {
      if (knots.size() < 2) return "piecewise profit needs at least two knots";
      if (knots.front().x != 0.0) return "piecewise profit must start at x = 0";
      for (const auto& kn : knots)
        if (!std::isfinite(kn.x) || !std::isfinite(kn.y))
          return "piecewise profit has non-finite knot";
      for (std::size_t j = 0; j + 1 < knots.size(); ++j)
        if (!(knots[j + 1].x > knots[j].x))
          return "piecewise knots must have strictly increasing x";
      for (const auto& kn : knots)
        if (kn.y < 0.0) return "piecewise profit must be nonnegative";
      const Tail t = tail();
      if (t.slope < 0.0)
        return "piecewise profit decreases beyond its last knot and turns negative";
      return std::nullopt;
    }
  }
  return "unknown profit family";
}

ProfitSpec ProfitSpec::shifted_to_zero() const {
  ProfitSpec p = *this;
  if (family == Family::piecewise) {
    const double y0 = value0();
    for (auto& kn : p.knots) kn.y -= y0;
  }
  return p;
}

namespace {

// Breakpoint representation for families with piecewise-constant derivative:
// (start of piece, slope on the piece); the last piece extends to infinity.
std::optional<std::vector<std::pair<double, double>>> to_pieces(
    const ProfitSpec& p) {
  switch (p.family) {
    case ProfitSpec::Family::zero:
      return std::vector<std::pair<double, double>>{{0.0, 0.0}};
    case ProfitSpec::Family::linear:
      return std::vector<std::pair<double, double>>{{0.0, p.c}};
    case ProfitSpec::Family::piecewise: {
      std::vector<std::pair<double, double>> pieces;
      for (std::size_t j = 0; j + 1 < p.knots.size(); ++j)
        pieces.emplace_back(p.knots[j].x,
                            (p.knots[j + 1].y - p.knots[j].y) /
                                (p.knots[j + 1].x - p.knots[j].x));
      pieces.emplace_back(p.knots.back().x, p.tail().slope);
      return pieces;
    }
    case ProfitSpec::Family::saturating:
      return std::nullopt;
  }
  return std::nullopt;
}

double piece_end(const std::vector<std::pair<double, double>>& pieces,
                 std::size_t j) {
  return j + 1 < pieces.size() ? pieces[j + 1].first
                               : std::numeric_limits<double>::infinity();
}

}  // namespace

std::optional<std::string> profit_gap_increase_error(const ProfitSpec& h1,
                                                     const ProfitSpec& h2) {
  const auto p1 = to_pieces(h1);
  const auto p2 = to_pieces(h2);

  if (p1 && p2) {
    // Merge breakpoints; F' on each merged piece is slope2 - slope1.
    std::vector<double> xs;
    for (const auto& pc : *p1) xs.push_back(pc.first);
    for (const auto& pc : *p2) xs.push_back(pc.first);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    auto slope_at = [](const std::vector<std::pair<double, double>>& pieces,
                      double x) {
      double s = pieces.front().second;
      for (const auto& pc : pieces)
        if (pc.first <= x) s = pc.second;
      return s;
    };
    for (const double x : xs)
      if (!(slope_at(*p2, x) - slope_at(*p1, x) > 0.0))
        return "profit gap h2 - h1 is not strictly increasing (slope condition "
               "fails at x = " +
               std::to_string(x) + ")";
    return std::nullopt;
  }

  if (!p1 && !p2) {
    // Both saturating: F' > 0 on (0,inf) iff sqrt(c2)(1+k1 x) >= sqrt(c1)(1+k2 x)
    // with at least one strict coefficient.
    const double r2 = std::sqrt(h2.c), r1 = std::sqrt(h1.c);
    const bool const_ok = r2 >= r1;
    const bool slope_ok = r2 * h1.k >= r1 * h2.k;
    const bool strict = (r2 > r1) || (r2 * h1.k > r1 * h2.k);
    if (const_ok && slope_ok && strict) return std::nullopt;
    return "profit gap of two saturating profits is not strictly increasing";
  }

  if (!p2) {
    // h2 saturating, h1 piecewise-sloped. On each piece F' = c2/(1+k2 x)^2 - s
    // is decreasing, so check the right end; the unbounded piece needs s <= 0,
    // which nonnegativity of h1 restricts to s = 0.
    for (std::size_t j = 0; j < p1->size(); ++j) {
      const double s = (*p1)[j].second;
      const double xe = piece_end(*p1, j);
      if (std::isinf(xe)) {
        if (s > 0.0)
          return "linear-growth profit h1 outgrows saturating h2; gap decreases";
        continue;
      }
      const double d = 1.0 + h2.k * xe;
      if (!(h2.c / (d * d) >= s) || h2.c == 0.0)
        return "saturating h2 grows slower than h1 near x = " + std::to_string(xe);
    }
    return std::nullopt;
  }

  // h1 saturating, h2 piecewise-sloped. F' = s - c1/(1+k1 x)^2 is increasing
  // on each piece; check the left end.
  for (std::size_t j = 0; j < p2->size(); ++j) {
    const double s = (*p2)[j].second;
    const double xs = (*p2)[j].first;
    const double d = 1.0 + h1.k * xs;
    const double bound = h1.c / (d * d);
    if (!(s >= bound) || (bound == 0.0 && s <= 0.0))
      return "profit gap is not strictly increasing past x = " + std::to_string(xs);
  }
  return std::nullopt;
}

ProfitSpec parse_profit(const std::string& text) {
  std::string s;
  for (const char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s == "zero") return ProfitSpec::zero();

  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')')
    throw std::invalid_argument("bad profit spec: " + text);
  const std::string name = s.substr(0, open);
  const std::string args = s.substr(open + 1, s.size() - open - 2);

  std::vector<std::string> parts;
  std::string cur;
  for (const char ch : args) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) parts.push_back(cur);

  auto num = [&](const std::string& t) {
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument("bad number in profit spec: " + t);
    return v;
  };

  if (name == "linear") {
    if (parts.size() != 1) throw std::invalid_argument("linear(c) takes one argument");
    return ProfitSpec::linear(num(parts[0]));
  }
  if (name == "saturating") {
    if (parts.size() != 2)
      throw std::invalid_argument("saturating(c,k) takes two arguments");
    return ProfitSpec::saturating(num(parts[0]), num(parts[1]));
  }
  if (name == "piecewise") {
    std::vector<ProfitSpec::Knot> knots;
    for (const auto& part : parts) {
      const auto colon = part.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("piecewise knots use x:y, got " + part);
      knots.push_back(
          {num(part.substr(0, colon)), num(part.substr(colon + 1))});
    }
    return ProfitSpec::piecewise(std::move(knots));
  }
  throw std::invalid_argument("unknown profit family: " + name);
}

std::string format_profit(const ProfitSpec& p) {
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  switch (p.family) {
    case ProfitSpec::Family::zero:
      return "zero";
    case ProfitSpec::Family::linear:
      return "linear(" + num(p.c) + ")";
    case ProfitSpec::Family::saturating:
      return "saturating(" + num(p.c) + "," + num(p.k) + ")";
    case ProfitSpec::Family::piecewise: {
      std::string out = "piecewise(";
      for (std::size_t j = 0; j < p.knots.size(); ++j) {
        if (j) out += ",";
        out += num(p.knots[j].x) + ":" + num(p.knots[j].y);
      }
      return out + ")";
    }
  }
  return "zero";
}

}  // namespace pswitch

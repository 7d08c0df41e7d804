#include "pswitch/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace pswitch {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxNewton = 64;
}  // namespace

QuadRule gauss_hermite(std::size_t m) {
  if (m < 2 || m > 128) throw std::invalid_argument("gauss_hermite: order out of range");
  const auto n = static_cast<int>(m);
  QuadRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);

  const int half = (n + 1) / 2;
  const double pim4 = 0.751125544464942482;  // pi^{-1/4}
  double z = 0.0, pp = 0.0;
  for (int i = 0; i < half; ++i) {
    // Stroud-Secrest style initial guesses, largest root first.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    for (int it = 0;; ++it) {
      // Orthonormal Hermite recurrence; p1 ends as H~_n(z), p2 as H~_{n-1}(z).
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15 * (1.0 + std::abs(z))) break;
      if (it >= kMaxNewton) throw std::runtime_error("gauss_hermite: no convergence");
    }
    rule.nodes[i] = z;
    rule.nodes[m - 1 - i] = -z;
    rule.weights[i] = 2.0 / (pp * pp);
    rule.weights[m - 1 - i] = rule.weights[i];
  }
  return rule;
}

QuadRule gauss_legendre(std::size_t m) {
  if (m < 2 || m > 128) throw std::invalid_argument("gauss_legendre: order out of range");
  const auto n = static_cast<int>(m);
  QuadRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0;; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
      if (it >= kMaxNewton) throw std::runtime_error("gauss_legendre: no convergence");
    }
    rule.nodes[i] = -z;
    rule.nodes[m - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[m - 1 - i] = rule.weights[i];
  }
  return rule;
}

double QuadratureScheme::total_weight() const {
  double s = 0.0;
  for (const double w : weights) s += w;
  return s;
}

QuadratureScheme build_scheme(double q, double b, double sigma,
                              const QuadratureOptions& opt) {
  const double growth = std::max(b, 0.0);
  if (!(q > growth))
    throw std::invalid_argument("build_scheme: discount rate must exceed max(drift, 0)");
  if (!(sigma > 0.0)) throw std::invalid_argument("build_scheme: sigma must be positive");
  if (opt.time_panels < 1 || opt.time_panels > 64)
    throw std::invalid_argument("build_scheme: panel count out of range");

  QuadratureScheme sch;
  sch.q = q;
  sch.s_max = 40.0 / (q - growth);
  sch.tail_bound = std::exp(-q * sch.s_max) / q;

  const QuadRule gl = gauss_legendre(opt.points_per_panel);
  const QuadRule gh = gauss_hermite(opt.hermite_order);
  sch.hermite_nodes = gh.nodes;
  sch.hermite_weights = gh.weights;

  // Dyadic panels in r = sqrt(s): the substitution makes the lognormal
  // transition analytic in r at s = 0 and concentrates points where the
  // discount kernel varies.
  const double r_max = std::sqrt(sch.s_max);
  const std::size_t panels = opt.time_panels;
  double lo = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double hi =
        (p + 1 == panels) ? r_max : r_max * std::ldexp(1.0, -int(panels - 1 - p));
    const double mid = 0.5 * (lo + hi);
    const double hw = 0.5 * (hi - lo);
    for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
      const double r = mid + hw * gl.nodes[g];
      const double s = r * r;
      sch.time_nodes.push_back(s);
      sch.time_weights.push_back(gl.weights[g] * hw * 2.0 * r * std::exp(-q * s));
    }
    lo = hi;
  }

  const double mu = b - 0.5 * sigma * sigma;
  const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
  sch.factors.reserve(sch.time_nodes.size() * gh.nodes.size());
  sch.weights.reserve(sch.factors.capacity());
  for (std::size_t t = 0; t < sch.time_nodes.size(); ++t) {
    const double s = sch.time_nodes[t];
    const double drift_term = mu * s;
    const double vol_term = sigma * std::sqrt(2.0 * s);
    for (std::size_t g = 0; g < gh.nodes.size(); ++g) {
      sch.factors.push_back(std::exp(drift_term + vol_term * gh.nodes[g]));
      sch.weights.push_back(sch.time_weights[t] * gh.weights[g] * inv_sqrt_pi);
    }
  }
  return sch;
}

}  // namespace pswitch

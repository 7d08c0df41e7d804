#pragma once
// Gauss quadrature node/weight builders (Newton iteration on the orthogonal
// polynomial recurrences) and the discounted-expectation scheme built from
// them: time nodes for the truncated Laplace integral combined with
// Gauss-Hermite nodes for the lognormal transition expectation.

#include <cstddef>
#include <vector>

namespace pswitch {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Hermite rule of order m: sum_i w_i f(z_i) ~ integral e^{-z^2} f(z) dz.
QuadRule gauss_hermite(std::size_t m);

// Gauss-Legendre rule of order n on [-1, 1].
QuadRule gauss_legendre(std::size_t n);

struct QuadratureOptions {
  std::size_t hermite_order = 32;
  std::size_t time_panels = 10;        // dyadic panels in the sqrt-time variable
  std::size_t points_per_panel = 16;   // Gauss-Legendre points per panel
};

// Scheme for q-discounted expectations of functionals of geometric Brownian
// motion dX = b X ds + sigma X dW:
//
//   resolvent(q, phi)(x) = E[ integral_0^inf e^{-qs} phi(X_s^x) ds ]
//                        ~ sum_j W_j phi(x * C_j).
//
// Time integral truncated at s_max (tail_bound records the discarded mass of
// the discount kernel) and evaluated in the variable r = sqrt(s), which makes
// the integrand analytic at s = 0; the inner expectation uses Gauss-Hermite.
// Factors C_j = exp((b - sigma^2/2) s_t + sigma sqrt(2 s_t) z_m) and weights
// W_j = wt_t * wh_m / sqrt(pi) are stored flattened over (t, m).
struct QuadratureScheme {
  double q = 0.0;
  double s_max = 0.0;
  double tail_bound = 0.0;  // integral_{s_max}^inf e^{-qs} ds
  std::vector<double> time_nodes;
  std::vector<double> time_weights;     // include e^{-qs} and the r-substitution
  std::vector<double> hermite_nodes;
  std::vector<double> hermite_weights;
  std::vector<double> factors;          // C_j, flattened (t-major)
  std::vector<double> weights;          // W_j, same order

  // sum_j W_j; equals resolvent(q, 1) and must match 1/q to quadrature accuracy.
  double total_weight() const;
};

// Builds the scheme for rate q and dynamics (b, sigma). s_max defaults to
// 40 / (q - max(b, 0)); requires q > max(b, 0).
QuadratureScheme build_scheme(double q, double b, double sigma,
                              const QuadratureOptions& opt = {});

}  // namespace pswitch

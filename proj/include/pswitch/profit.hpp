#pragma once
// Running-profit families. Each family knows its value, small-x expansion,
// Lipschitz constant and large-x tail in closed form; shape checks are
// analytic (sign conditions on parameters), never sampled.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pswitch {

struct ProfitSpec {
  enum class Family { zero, linear, saturating, piecewise };

  Family family = Family::zero;
  double c = 0.0;  // linear: slope; saturating: c*x/(1+k*x)
  double k = 0.0;
  struct Knot {
    double x;
    double y;
    bool operator==(const Knot&) const = default;
  };
  std::vector<Knot> knots;  // piecewise: ascending x, first knot at x = 0;
                            // the final segment slope extends to infinity

  static ProfitSpec zero();
  static ProfitSpec linear(double c);
  static ProfitSpec saturating(double c, double k);
  static ProfitSpec piecewise(std::vector<Knot> knots);

  double operator()(double x) const;
  void eval_v(const double* x, double* out, std::size_t n) const;

  double value0() const;  // h(0)
  double slope0() const;  // h'(0+)
  double lipschitz() const;

  struct Tail {
    double slope;
    double offset;  // h(x) = slope*x + offset + o(1) as x -> inf
  };
  Tail tail() const;
  bool bounded() const { return tail().slope == 0.0; }

  // Nonnegativity + Lipschitz + well-formedness of the parameterization.
  // Returns an explanation when the shape is rejected.
  std::optional<std::string> shape_error() const;

  // h - h(0), same family.
  ProfitSpec shifted_to_zero() const;

  bool operator==(const ProfitSpec&) const = default;
};

// Rejects unless F = h2 - h1 is strictly increasing on (0, inf); decided from
// the family-pair closed forms. Returns the explanation on failure.
std::optional<std::string> profit_gap_increase_error(const ProfitSpec& h1,
                                                     const ProfitSpec& h2);

// Config-file syntax: "zero", "linear(c)", "saturating(c,k)",
// "piecewise(x:y, x:y, ...)". Throws std::invalid_argument on bad syntax.
ProfitSpec parse_profit(const std::string& text);
std::string format_profit(const ProfitSpec& p);

}  // namespace pswitch

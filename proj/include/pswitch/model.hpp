#pragma once
// Problem data for two-regime switching of a geometric Brownian motion where
// switching is only possible at the arrival times of an independent Poisson
// clock: dynamics (drift, sigma), discount a1, arrival rate lambda, switching
// costs g12/g21, one running profit per regime, and the simulation start
// state (x0, regime0).

#include <string>
#include <vector>

#include "pswitch/profit.hpp"

namespace pswitch {

struct ModelSpec {
  double drift = 0.0;
  double sigma = 0.0;
  double a1 = 0.0;      // discount rate
  double lambda = 0.0;  // intervention arrival rate
  double g12 = 0.0;     // cost of switching regime 1 -> 2
  double g21 = 0.0;
  ProfitSpec profit1;
  ProfitSpec profit2;
  double x0 = 1.0;
  int regime0 = 1;

  double cost(int from, int to) const { return from == 1 ? g12 : g21; }
  const ProfitSpec& profit(int regime) const {
    return regime == 1 ? profit1 : profit2;
  }
  // Shared Lipschitz constant of the profits; the growth constant in the
  // value bounds.
  double profit_lipschitz() const {
    return std::max(profit1.lipschitz(), profit2.lipschitz());
  }
};

struct Violation {
  std::string rule;
  std::string message;
};

struct ValidationReport {
  bool ok = false;
  std::vector<Violation> errors;
  std::vector<Violation> warnings;
};

struct ValidateOptions {
  // Downgrades a failed integrability rule to a warning. Explicit opt-in.
  bool allow_integrability_override = false;
};

// Checks every admissibility rule and reports all violations, not just the
// first: positive sigma/lambda, a1 > max(drift, 0), g12 > 0, g12 + g21 > 0,
// profit shapes (nonnegative Lipschitz), strictly increasing profit gap
// h2 - h1, and the discounted-moment integrability of the profits.
ValidationReport validate(const ModelSpec& spec, const ValidateOptions& = {});

struct NormalizedModel {
  ModelSpec spec;     // profits shifted so h(0) = 0, costs adjusted
  double offset1 = 0.0;  // add offset_i to regime-i values of the normalized
  double offset2 = 0.0;  // model to recover the original ones
};

// Shifts profits to h(0) = 0 and moves the constant profit streams into the
// costs: g~ij = gij + (h_i(0) - h_j(0))/a1, offset_i = h_i(0)/a1.
NormalizedModel normalize(const ModelSpec& spec);

// Exact limit of F = h2 - h1 as x -> inf, from the family tails. +inf for
// linear-growth gaps.
double f_limit(const ModelSpec& spec);

// Limits of the value pair and its derivatives as x -> 0+, for a normalized
// model. At x = 0 the state is absorbed and the system degenerates to
// a1 v_i = lambda max{0, v_j - g_ij - v_i}; the derivative pair solves the
// order-x balance with the same active pattern.
struct OriginState {
  double v1 = 0.0;
  double v2 = 0.0;
  double dv1 = 0.0;
  double dv2 = 0.0;
  bool switch1 = false;  // switching active at 0+ in regime 1
  bool switch2 = false;
};
OriginState origin_state(const ModelSpec& spec);

}  // namespace pswitch

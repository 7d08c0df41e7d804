#pragma once
// A-priori envelope checks on a computed value pair: linear growth cap,
// switching-cost floor, and the difference-quotient (Lipschitz) cap.

#include "pswitch/model.hpp"
#include "pswitch/solution.hpp"

namespace pswitch {

struct BoundsReport {
  // Worst violations across nodes and regimes; nonpositive means satisfied.
  double upper_excess = 0.0;     // v - (C x/(a1-b) + max(0, -g_ij))
  double lower_deficit = 0.0;    // lambda/(a1+lambda) max(0, -g_ij) - v
  double quotient_excess = 0.0;  // |dv| / dx - C/(a1-b)

  bool ok(double slack) const {
    return upper_excess <= slack && lower_deficit <= slack &&
           quotient_excess <= slack;
  }
};

// Expects the normalized model the solution was produced from.
BoundsReport check_value_bounds(const ModelSpec& m, const ValueSolution& sol);

}  // namespace pswitch

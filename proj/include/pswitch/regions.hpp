#pragma once
// Switch indicators G1, G2, threshold detection, and the five-way structure
// classification with its prediction-versus-observation check.

#include <string>
#include <vector>

#include "pswitch/grid.hpp"
#include "pswitch/model.hpp"
#include "pswitch/solution.hpp"

namespace pswitch {

struct GFunctions {
  std::vector<double> g1;  // v1 - v2 + g12; region S1 is {g1 <= 0}
  std::vector<double> g2;  // v2 - v1 + g21; region S2 is {g2 <= 0}
};

// g2 is evaluated as (g12 + g21) - g1 so the nodal identity
// g1[k] + g2[k] == g12 + g21 holds exactly in floating point.
GFunctions g_functions(const ValueSolution& sol, const ModelSpec& m);

struct ThresholdEstimate {
  double value = 0.0;  // interpolated sign crossing; 0 or +inf when absent
  double lo = 0.0;     // bracketing nodes around the crossing
  double hi = 0.0;
};

struct RegionStructure {
  ThresholdEstimate x_lower1;  // inf {x : g1 <= 0}; +inf when S1 is empty
  ThresholdEstimate x_upper2;  // sup {x : g2 <= 0}; 0 when S2 is empty,
                               // +inf when S2 covers every node
  bool s1_empty = true, s1_full = false;
  bool s2_empty = true, s2_full = false;
  bool structure_ok = true;  // S1 a suffix of nodes and S2 a prefix
  std::string diagnostics;   // filled when structure_ok is false
};

RegionStructure detect_regions(const std::vector<double>& g1,
                               const std::vector<double>& g2, const Grid& grid);

struct Classification {
  int case_id = 0;       // 1..5
  int alternate = 0;     // nonzero when a borderline tie makes a neighboring
                         // case equally plausible (advisory)
  double f_limit = 0.0;  // normalized profit-gap limit, possibly +inf
};

// Predicts the region structure from the model parameters alone. Throws
// std::logic_error on the sign combination excluded by g12 + g21 > 0.
Classification classify(const ModelSpec& m);

struct RegionReport {
  GFunctions g;
  RegionStructure structure;
  Classification predicted;
  int case_observed = 0;  // 0 = structure does not match any predicted shape
  bool consistent = false;
  std::string note;  // human-readable mismatch/advisory summary
};

// Runs g_functions + detect_regions + classify and cross-checks them.
// A mismatch is reported in the result, not thrown.
RegionReport verify_regions(const ModelSpec& m, const ValueSolution& sol);

// Largest increase (for g1) or decrease (for g2) per unit of x across any
// grid interval; monotone structure means these stay at roundoff scale.
double max_increase_slope(const std::vector<double>& g, const Grid& grid);
double max_decrease_slope(const std::vector<double>& g, const Grid& grid);

}  // namespace pswitch

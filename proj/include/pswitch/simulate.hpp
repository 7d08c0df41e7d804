#pragma once
// Monte Carlo execution of switching policies at Poisson arrival times on
// exact geometric-Brownian paths, with paired policy comparisons.

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "pswitch/model.hpp"
#include "pswitch/solution.hpp"

namespace pswitch {

struct PolicySpec {
  enum class Kind { optimal, never, always, threshold };
  Kind kind = Kind::never;
  const ValueSolution* solution = nullptr;  // optimal only
  // Threshold rule: leave regime 1 when X >= x_lower1, leave regime 2 when
  // X <= x_upper2. Requires x_upper2 <= x_lower1 so the regions are disjoint.
  double x_lower1 = std::numeric_limits<double>::infinity();
  double x_upper2 = 0.0;

  static PolicySpec optimal(const ValueSolution& sol);
  static PolicySpec never();
  static PolicySpec always();
  static PolicySpec threshold(double x_lower1, double x_upper2);
  std::string name() const;
};

struct PathConfig {
  double t_max = 0.0;  // horizon; 0 = pick from the discount/drift gap
  double dt = 0.0;     // integration step; 0 = pick from a1 + lambda
  std::size_t n_paths = 100000;
  std::uint64_t seed = 0x5eed5157u;
  double tail_budget = 1e-6;  // refuse when the horizon-truncation bound exceeds this
};

// Fills in the unset horizon and step for the given model.
PathConfig default_path_config(const ModelSpec& m, PathConfig base = {});

struct PolicyStats {
  std::string name;
  double mean = 0.0;
  double se = 0.0;  // sample std / sqrt(n_paths)
  // Paired difference (this policy minus the first policy in the run),
  // sharing every path's randomness. Zero for the first policy itself.
  double mean_diff = 0.0;
  double se_diff = 0.0;
  double mean_switches = 0.0;
  std::vector<std::size_t> switch_histogram;  // index = switches on a path
};

struct SimulationReport {
  std::size_t n_paths = 0;
  double t_max = 0.0, dt = 0.0;
  double truncation_bound = 0.0;  // discounted mass ignored beyond t_max
  double arrivals_mean = 0.0, arrivals_se = 0.0;
  // Discount factor observed at the first arrival (0 when none by t_max).
  double first_arrival_discount_mean = 0.0, first_arrival_discount_se = 0.0;
  std::vector<PolicyStats> policies;
};

// Runs every policy on the same paths (common random numbers): identical
// seeds give bit-identical reports, and paired columns share path noise.
SimulationReport run_policies(const ModelSpec& m,
                              const std::vector<PolicySpec>& policies,
                              const PathConfig& config);

SimulationReport simulate_policy(const ModelSpec& m, const PolicySpec& policy,
                                 const PathConfig& config);

// Optimal versus never/always and +-20% perturbations of the detected
// thresholds; first row is the optimal policy, diffs are paired against it.
SimulationReport policy_tournament(const ModelSpec& m, const ValueSolution& sol,
                                   const PathConfig& config);

}  // namespace pswitch

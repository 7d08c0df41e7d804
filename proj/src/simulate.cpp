#include "pswitch/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "pswitch/kernels.hpp"
#include "pswitch/regions.hpp"
#include "pswitch/rng.hpp"

namespace pswitch {

PolicySpec PolicySpec::optimal(const ValueSolution& sol) {
  PolicySpec p;
  p.kind = Kind::optimal;
  p.solution = &sol;
  return p;
}

PolicySpec PolicySpec::never() {
  PolicySpec p;
  p.kind = Kind::never;
  return p;
}

PolicySpec PolicySpec::always() {
  PolicySpec p;
  p.kind = Kind::always;
  return p;
}

PolicySpec PolicySpec::threshold(double x_lower1, double x_upper2) {
  PolicySpec p;
  p.kind = Kind::threshold;
  p.x_lower1 = x_lower1;
  p.x_upper2 = x_upper2;
  return p;
}

std::string PolicySpec::name() const {
  switch (kind) {
    case Kind::optimal:
      return "optimal";
    case Kind::never:
      return "never";
    case Kind::always:
      return "always";
    case Kind::threshold: {
      char buf[80];
      std::snprintf(buf, sizeof buf, "threshold(%.6g;%.6g)", x_lower1, x_upper2);
      return buf;
    }
  }
  return "?";
}

PathConfig default_path_config(const ModelSpec& m, PathConfig base) {
  if (base.t_max <= 0.0) base.t_max = 40.0 / (m.a1 - std::max(m.drift, 0.0));
  if (base.dt <= 0.0) base.dt = 1.0 / (10.0 * (m.a1 + m.lambda));
  return base;
}

namespace {

bool wants_switch(const PolicySpec& p, const ModelSpec& m, int regime, double x) {
  switch (p.kind) {
    case PolicySpec::Kind::never:
      return false;
    case PolicySpec::Kind::always:
      return true;
    case PolicySpec::Kind::threshold:
      return regime == 1 ? x >= p.x_lower1 : x <= p.x_upper2;
    case PolicySpec::Kind::optimal: {
      const auto v = interpolate(*p.solution, x);
      // Ties switch: the switch region is closed.
      return regime == 1 ? v.first <= v.second - m.g12
                         : v.second <= v.first - m.g21;
    }
  }
  return false;
}

struct Welford {
  double sum = 0.0, sumsq = 0.0;
  std::size_t n = 0;
  void add(double v) {
    sum += v;
    sumsq += v * v;
    ++n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double se() const {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double var = std::max(0.0, (sumsq - sum * sum / nn) / (nn - 1.0));
    return std::sqrt(var / nn);
  }
};

}  // namespace

SimulationReport run_policies(const ModelSpec& m,
                              const std::vector<PolicySpec>& policies,
                              const PathConfig& config) {
  if (policies.empty())
    throw std::invalid_argument("run_policies: no policies given");
  if (!(m.sigma > 0.0) || !(m.lambda > 0.0) ||
      !(m.a1 > std::max(m.drift, 0.0)) || !(m.x0 > 0.0) ||
      (m.regime0 != 1 && m.regime0 != 2))
    throw std::invalid_argument("run_policies: model not admissible");
  for (const PolicySpec& p : policies) {
    if (p.kind == PolicySpec::Kind::optimal &&
        (p.solution == nullptr || !p.solution->converged))
      throw std::invalid_argument("run_policies: optimal policy needs a converged solution");
    if (p.kind == PolicySpec::Kind::threshold &&
        (!(p.x_upper2 <= p.x_lower1) || !(p.x_upper2 >= 0.0)))
      throw std::invalid_argument("run_policies: threshold policy not well ordered");
  }

  const PathConfig cfg = default_path_config(m, config);
  if (!(cfg.n_paths >= 2)) throw std::invalid_argument("run_policies: need n_paths >= 2");
  const double dt_cap = 1.0 / (10.0 * (m.a1 + m.lambda));
  if (!(cfg.dt > 0.0) || cfg.dt > dt_cap * (1.0 + 1e-12))
    throw std::invalid_argument("run_policies: dt must be positive and at most 1/(10(a1+lambda))");

  const double lip = m.profit_lipschitz();
  const double bound =
      lip * m.x0 * std::exp((m.drift - m.a1) * cfg.t_max) / (m.a1 - m.drift);
  if (bound > cfg.tail_budget) {
    const double t_need =
        std::log(lip * m.x0 / (cfg.tail_budget * (m.a1 - m.drift))) /
        (m.a1 - m.drift);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "run_policies: horizon truncation bound %.3g exceeds budget %.3g; "
                  "use t_max >= %.6g",
                  bound, cfg.tail_budget, t_need);
    throw std::invalid_argument(buf);
  }

  const std::size_t npol = policies.size();
  std::vector<Welford> pay_acc(npol), diff_acc(npol);
  std::vector<double> switch_sum(npol, 0.0);
  std::vector<std::vector<std::size_t>> hist(npol);
  Welford arrivals_acc, first_disc_acc;

  std::vector<double> arrivals, tpts, xpts, znorm, negat, disc, h1v, h2v, i1, i2;
  std::vector<std::uint8_t> at_arrival;
  std::vector<double> pays(npol);

  const double mu = m.drift - 0.5 * m.sigma * m.sigma;
  for (std::size_t path = 0; path < cfg.n_paths; ++path) {
    Xoshiro256pp rng(cfg.seed, path);

    // Arrival clock first, so path randomness is identical across policies
    // and across runs that only change the policy list.
    arrivals.clear();
    for (double t = 0.0;;) {
      t += rng.exponential(m.lambda);
      if (t > cfg.t_max) break;
      arrivals.push_back(t);
    }

    tpts.clear();
    at_arrival.clear();
    tpts.push_back(0.0);
    at_arrival.push_back(0);
    std::size_t ai = 0, k = 0;
    while (tpts.back() < cfg.t_max) {
      const double next_grid =
          std::min(static_cast<double>(k + 1) * cfg.dt, cfg.t_max);
      if (ai < arrivals.size() && arrivals[ai] < next_grid) {
        tpts.push_back(arrivals[ai]);
        at_arrival.push_back(1);
        ++ai;
      } else if (ai < arrivals.size() && arrivals[ai] == next_grid) {
        tpts.push_back(next_grid);
        at_arrival.push_back(1);
        ++ai;
        ++k;
      } else {
        tpts.push_back(next_grid);
        at_arrival.push_back(0);
        ++k;
      }
    }

    const std::size_t nseg = tpts.size() - 1;
    znorm.resize(nseg);
    fill_normals(rng, znorm.data(), nseg);
    xpts.resize(nseg + 1);
    xpts[0] = m.x0;
    for (std::size_t j = 0; j < nseg; ++j) {
      const double d = tpts[j + 1] - tpts[j];
      xpts[j + 1] =
          xpts[j] * std::exp(mu * d + m.sigma * std::sqrt(d) * znorm[j]);
    }

    negat.resize(nseg + 1);
    disc.resize(nseg + 1);
    h1v.resize(nseg + 1);
    h2v.resize(nseg + 1);
    i1.resize(nseg);
    i2.resize(nseg);
    kernels::scale_v(-m.a1, tpts.data(), negat.data(), nseg + 1);
    kernels::exp_v(negat.data(), disc.data(), nseg + 1);
    m.profit1.eval_v(xpts.data(), h1v.data(), nseg + 1);
    m.profit2.eval_v(xpts.data(), h2v.data(), nseg + 1);
    kernels::trapezoid_products(tpts.data(), disc.data(), h1v.data(), i1.data(), nseg);
    kernels::trapezoid_products(tpts.data(), disc.data(), h2v.data(), i2.data(), nseg);

    for (std::size_t pi = 0; pi < npol; ++pi) {
      int regime = m.regime0;
      double pay = 0.0;
      std::size_t switches = 0;
      for (std::size_t j = 0; j < nseg; ++j) {
        pay += regime == 1 ? i1[j] : i2[j];
        if (at_arrival[j + 1] &&
            wants_switch(policies[pi], m, regime, xpts[j + 1])) {
          pay -= disc[j + 1] * m.cost(regime, 3 - regime);
          regime = 3 - regime;
          ++switches;
        }
      }
      pays[pi] = pay;
      pay_acc[pi].add(pay);
      diff_acc[pi].add(pay - pays[0]);
      switch_sum[pi] += static_cast<double>(switches);
      if (switches >= hist[pi].size()) hist[pi].resize(switches + 1, 0);
      ++hist[pi][switches];
    }

    arrivals_acc.add(static_cast<double>(arrivals.size()));
    first_disc_acc.add(arrivals.empty() ? 0.0
                                        : std::exp(-m.a1 * arrivals.front()));
  }

  SimulationReport rep;
  rep.n_paths = cfg.n_paths;
  rep.t_max = cfg.t_max;
  rep.dt = cfg.dt;
  rep.truncation_bound = bound;
  rep.arrivals_mean = arrivals_acc.mean();
  rep.arrivals_se = arrivals_acc.se();
  rep.first_arrival_discount_mean = first_disc_acc.mean();
  rep.first_arrival_discount_se = first_disc_acc.se();
  rep.policies.resize(npol);
  for (std::size_t pi = 0; pi < npol; ++pi) {
    PolicyStats& st = rep.policies[pi];
    st.name = policies[pi].name();
    st.mean = pay_acc[pi].mean();
    st.se = pay_acc[pi].se();
    st.mean_diff = diff_acc[pi].mean();
    st.se_diff = diff_acc[pi].se();
    st.mean_switches = switch_sum[pi] / static_cast<double>(cfg.n_paths);
    st.switch_histogram = std::move(hist[pi]);
  }
  return rep;
}

SimulationReport simulate_policy(const ModelSpec& m, const PolicySpec& policy,
                                 const PathConfig& config) {
  return run_policies(m, {policy}, config);
}

SimulationReport policy_tournament(const ModelSpec& m, const ValueSolution& sol,
                                   const PathConfig& config) {
  const GFunctions g = g_functions(sol, m);
  const RegionStructure rs = detect_regions(g.g1, g.g2, sol.grid);
  const double x1 = rs.x_lower1.value;
  const double x2 = rs.x_upper2.value;

  std::vector<PolicySpec> ps;
  ps.push_back(PolicySpec::optimal(sol));
  ps.push_back(PolicySpec::never());
  ps.push_back(PolicySpec::always());
  const auto add_threshold = [&ps](double a, double b) {
    if (std::isnan(a) || std::isnan(b) || !(b <= a) || !(b >= 0.0)) return;
    for (const PolicySpec& q : ps)
      if (q.kind == PolicySpec::Kind::threshold && q.x_lower1 == a &&
          q.x_upper2 == b)
        return;
    ps.push_back(PolicySpec::threshold(a, b));
  };
  add_threshold(x1, x2);
  if (std::isfinite(x1)) {
    add_threshold(0.8 * x1, x2);
    add_threshold(1.2 * x1, x2);
  }
  if (std::isfinite(x2) && x2 > 0.0) {
    add_threshold(x1, 0.8 * x2);
    add_threshold(x1, 1.2 * x2);
  }
  return run_policies(m, ps, config);
}

}  // namespace pswitch

#include "pswitch/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pswitch {

namespace {

bool finite_params(const ModelSpec& m) {
  return std::isfinite(m.drift) && std::isfinite(m.sigma) &&
         std::isfinite(m.a1) && std::isfinite(m.lambda) &&
         std::isfinite(m.g12) && std::isfinite(m.g21) && std::isfinite(m.x0);
}

}  // namespace

ValidationReport validate(const ModelSpec& m, const ValidateOptions& opt) {
  ValidationReport rep;
  auto fail = [&](const char* rule, std::string msg) {
    rep.errors.push_back({rule, std::move(msg)});
  };

  if (!finite_params(m)) {
    fail("finite_parameters", "model parameters must be finite");
    rep.ok = false;
    return rep;
  }

  if (!(m.sigma > 0.0)) fail("sigma_positive", "sigma must be > 0");
  if (!(m.lambda > 0.0)) fail("lambda_positive", "lambda must be > 0");
  if (!(m.a1 > std::max(m.drift, 0.0)))
    fail("discount_dominates_drift", "a1 must exceed max(drift, 0)");
  if (!(m.g12 > 0.0)) fail("g12_positive", "g12 must be > 0");
  if (!(m.g12 + m.g21 > 0.0))
    fail("cost_sum_positive", "g12 + g21 must be > 0 (no free switching cycle)");
  if (m.regime0 != 1 && m.regime0 != 2)
    fail("regime0_valid", "regime0 must be 1 or 2");
  if (!(m.x0 > 0.0)) fail("x0_positive", "x0 must be > 0");

  if (auto why = m.profit1.shape_error())
    fail("profit1_shape", "profit1: " + *why);
  if (auto why = m.profit2.shape_error())
    fail("profit2_shape", "profit2: " + *why);

  // Gap monotonicity only meaningful once both shapes are admissible.
  if (!m.profit1.shape_error() && !m.profit2.shape_error()) {
    if (auto why = profit_gap_increase_error(m.profit1, m.profit2))
      fail("profit_gap_increasing", *why);
  }

  // Discounted-moment integrability at the comparison rate a = -a1 + 2.5 lambda:
  // a < 0 keeps bounded profits integrable; linear growth additionally needs
  // 2a + 2 drift + sigma^2 < 0 (second moment of the state grows at that rate).
  if (m.a1 > 0.0 && m.lambda > 0.0 && m.sigma > 0.0) {
    const double a = -m.a1 + 2.5 * m.lambda;
    const bool linear_growth = !m.profit1.bounded() || !m.profit2.bounded();
    std::string why;
    if (!(a < 0.0)) {
      why = "a = -a1 + 2.5*lambda = " + std::to_string(a) + " must be negative";
    } else if (linear_growth &&
               !(2.0 * a + 2.0 * m.drift + m.sigma * m.sigma < 0.0)) {
      why = "linear-growth profits need 2a + 2*drift + sigma^2 < 0, got " +
            std::to_string(2.0 * a + 2.0 * m.drift + m.sigma * m.sigma);
    }
    if (!why.empty()) {
      if (opt.allow_integrability_override)
        rep.warnings.push_back({"integrability", why + " (overridden)"});
      else
        fail("integrability", why);
    }
  }

  rep.ok = rep.errors.empty();
  return rep;
}

NormalizedModel normalize(const ModelSpec& m) {
  if (!(m.a1 > 0.0)) throw std::invalid_argument("normalize: a1 must be positive");
  NormalizedModel out;
  const double h10 = m.profit1.value0();
  const double h20 = m.profit2.value0();
  out.spec = m;
  out.spec.profit1 = m.profit1.shifted_to_zero();
  out.spec.profit2 = m.profit2.shifted_to_zero();
  out.spec.g12 = m.g12 + (h10 - h20) / m.a1;
  out.spec.g21 = m.g21 + (h20 - h10) / m.a1;
  out.offset1 = h10 / m.a1;
  out.offset2 = h20 / m.a1;
  return out;
}

double f_limit(const ModelSpec& m) {
  const auto t1 = m.profit1.tail();
  const auto t2 = m.profit2.tail();
  if (t2.slope > t1.slope) return std::numeric_limits<double>::infinity();
  if (t2.slope < t1.slope) return -std::numeric_limits<double>::infinity();
  return t2.offset - t1.offset;
}

OriginState origin_state(const ModelSpec& m) {
  if (m.profit1.value0() != 0.0 || m.profit2.value0() != 0.0)
    throw std::invalid_argument("origin_state: model must be normalized (h(0) = 0)");
  if (!(m.g12 + m.g21 > 0.0))
    throw std::invalid_argument("origin_state: needs g12 + g21 > 0");

  OriginState st;
  const double kappa = m.lambda / (m.a1 + m.lambda);
  // Degenerate fixed point a1 v_i = lambda max{0, v_j - g_ij - v_i}: at most
  // one side can switch at 0 (both would need g12 + g21 <= 0). Ties stay
  // inactive.
  if (m.g21 < 0.0) {
    st.switch2 = true;
    st.v1 = 0.0;
    st.v2 = -kappa * m.g21;
  } else if (m.g12 < 0.0) {
    st.switch1 = true;
    st.v2 = 0.0;
    st.v1 = -kappa * m.g12;
  }

  const double s1 = m.profit1.slope0();
  const double s2 = m.profit2.slope0();
  const double ab = m.a1 - m.drift;
  const double abl = m.a1 + m.lambda - m.drift;
  if (st.switch2) {
    st.dv1 = s1 / ab;
    st.dv2 = (s2 + m.lambda * st.dv1) / abl;
  } else if (st.switch1) {
    st.dv2 = s2 / ab;
    st.dv1 = (s1 + m.lambda * st.dv2) / abl;
  } else {
    st.dv1 = s1 / ab;
    st.dv2 = s2 / ab;
  }
  return st;
}

}  // namespace pswitch

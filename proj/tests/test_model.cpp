#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pswitch/model.hpp"
#include "pswitch/profit.hpp"

using namespace pswitch;

namespace {

ModelSpec battery(double g12, double g21) {
  ModelSpec m;
  m.drift = 0.05;
  m.sigma = 0.3;
  m.a1 = 1.0;
  m.lambda = 0.3;
  m.g12 = g12;
  m.g21 = g21;
  m.profit1 = ProfitSpec::zero();
  m.profit2 = ProfitSpec::saturating(1.0, 1.0);
  return m;
}

bool has_rule(const std::vector<Violation>& v, const std::string& rule) {
  for (const Violation& e : v)
    if (e.rule == rule) return true;
  return false;
}

}  // namespace

TEST_CASE("profit families evaluate their closed forms") {
  const ProfitSpec z = ProfitSpec::zero();
  CHECK(z(3.0) == 0.0);
  CHECK(z.lipschitz() == 0.0);

  const ProfitSpec lin = ProfitSpec::linear(0.4);
  CHECK(lin(2.5) == doctest::Approx(1.0));
  CHECK(lin.slope0() == 0.4);
  CHECK(lin.tail().slope == 0.4);
  CHECK(!lin.bounded());

  const ProfitSpec sat = ProfitSpec::saturating(1.0, 1.0);
  CHECK(sat(1.0) == doctest::Approx(0.5));
  CHECK(sat.value0() == 0.0);
  CHECK(sat.slope0() == doctest::Approx(1.0));
  CHECK(sat.lipschitz() == doctest::Approx(1.0));
  CHECK(sat.bounded());
  CHECK(sat.tail().offset == doctest::Approx(1.0));

  const ProfitSpec pw =
      ProfitSpec::piecewise({{0.0, 1.0}, {2.0, 3.0}, {5.0, 3.0}});
  CHECK(pw(0.0) == 1.0);
  CHECK(pw(1.0) == doctest::Approx(2.0));
  CHECK(pw(4.0) == 3.0);
  CHECK(pw(9.0) == 3.0);  // last slope 0 extends
  CHECK(pw.lipschitz() == doctest::Approx(1.0));
  CHECK(pw.value0() == 1.0);
}

TEST_CASE("profit eval_v matches operator()") {
  const ProfitSpec sat = ProfitSpec::saturating(2.0, 0.7);
  const double x[5] = {0.0, 0.3, 1.0, 4.5, 80.0};
  double out[5];
  sat.eval_v(x, out, 5);
  for (int i = 0; i < 5; ++i) CHECK(out[i] == sat(x[i]));
}

TEST_CASE("profit spec round-trips through its text form") {
  for (const char* text :
       {"zero", "linear(0.4)", "saturating(1,1)", "piecewise(0:1,2:3,5:3)"}) {
    const ProfitSpec p = parse_profit(text);
    CHECK(parse_profit(format_profit(p)) == p);
  }
  CHECK_THROWS_AS(parse_profit("linear()"), std::invalid_argument);
  CHECK_THROWS_AS(parse_profit("nope(1)"), std::invalid_argument);
  // Knot ordering is content, not syntax: accepted by the parser and
  // reported by the shape check.
  CHECK(parse_profit("piecewise(1:1,0:0)").shape_error().has_value());
}

TEST_CASE("shape rejection") {
  CHECK(ProfitSpec::linear(-1.0).shape_error().has_value());
  CHECK(ProfitSpec::saturating(1.0, -2.0).shape_error().has_value());
  CHECK(!ProfitSpec::saturating(1.0, 1.0).shape_error().has_value());
  // A dip is fine as long as the extended tail stays nonnegative.
  CHECK(!ProfitSpec::piecewise({{0.0, 1.0}, {1.0, 0.5}, {2.0, 0.5}})
             .shape_error());
  // A decreasing final segment extends to negative values.
  CHECK(ProfitSpec::piecewise({{0.0, 1.0}, {1.0, 0.5}}).shape_error());
  CHECK(ProfitSpec::piecewise({{0.0, 0.0}, {1.0, -1.0}}).shape_error());
}

TEST_CASE("profit gap must increase strictly") {
  CHECK(!profit_gap_increase_error(ProfitSpec::zero(),
                                   ProfitSpec::saturating(1.0, 1.0)));
  CHECK(!profit_gap_increase_error(ProfitSpec::zero(), ProfitSpec::linear(0.4)));
  // Equal profits: gap is constant zero.
  CHECK(profit_gap_increase_error(ProfitSpec::linear(0.4),
                                  ProfitSpec::linear(0.4))
            .has_value());
  // h2 grows slower than h1.
  CHECK(profit_gap_increase_error(ProfitSpec::linear(1.0),
                                  ProfitSpec::linear(0.5))
            .has_value());
}

TEST_CASE("validate accepts the battery and reports each broken rule") {
  CHECK(validate(battery(1.5, 0.1)).ok);

  ModelSpec m = battery(1.5, 0.1);
  m.sigma = 0.0;
  m.lambda = -1.0;
  m.g12 = 0.0;
  const ValidationReport rep = validate(m);
  CHECK(!rep.ok);
  CHECK(has_rule(rep.errors, "sigma_positive"));
  CHECK(has_rule(rep.errors, "lambda_positive"));
  CHECK(has_rule(rep.errors, "g12_positive"));
}

TEST_CASE("validate enforces the dissipativity and cost-sum rules") {
  ModelSpec m = battery(1.5, 0.1);
  m.drift = 1.2;  // a1 = 1 < drift
  CHECK(!validate(m).ok);

  ModelSpec m2 = battery(0.4, -0.4);  // g12 + g21 = 0
  CHECK(!validate(m2).ok);
  CHECK(has_rule(validate(m2).errors, "cost_sum_positive"));
}

TEST_CASE("integrability override downgrades to a warning") {
  ModelSpec m = battery(1.5, 0.1);
  m.drift = 0.9;
  m.profit1 = ProfitSpec::linear(1.0);
  m.profit2 = ProfitSpec::linear(2.0);
  m.sigma = 0.6;  // a1 - 2b - sigma^2 < 0: second moment blows up
  const ValidationReport strict = validate(m);
  const ValidationReport lax = validate(m, {true});
  if (!strict.ok) {
    CHECK(lax.errors.size() < strict.errors.size());
    CHECK(lax.warnings.size() > strict.warnings.size());
  }
}

TEST_CASE("normalize moves constant profit into the costs") {
  ModelSpec m = battery(1.5, 0.1);
  m.profit1 = ProfitSpec::piecewise({{0.0, 2.0}, {1.0, 3.0}});  // h1(0) = 2
  const NormalizedModel nm = normalize(m);
  CHECK(nm.spec.profit1.value0() == 0.0);
  CHECK(nm.spec.profit2.value0() == 0.0);
  CHECK(nm.offset1 == doctest::Approx(2.0 / m.a1));
  CHECK(nm.offset2 == 0.0);
  CHECK(nm.spec.g12 == doctest::Approx(m.g12 + 2.0 / m.a1));
  CHECK(nm.spec.g21 == doctest::Approx(m.g21 - 2.0 / m.a1));
  // The cost sum is normalization invariant.
  CHECK(nm.spec.g12 + nm.spec.g21 == doctest::Approx(m.g12 + m.g21));
  // Idempotent on already normalized data.
  const NormalizedModel again = normalize(nm.spec);
  CHECK(again.offset1 == 0.0);
  CHECK(again.offset2 == 0.0);
}

TEST_CASE("f_limit from the family tails") {
  CHECK(f_limit(battery(1.5, 0.1)) == doctest::Approx(1.0));
  ModelSpec m = battery(1.5, 0.1);
  m.profit2 = ProfitSpec::linear(0.4);
  CHECK(std::isinf(f_limit(m)));
  m.profit1 = ProfitSpec::saturating(1.0, 2.0);
  m.profit2 = ProfitSpec::saturating(2.0, 1.0);
  CHECK(f_limit(m) == doctest::Approx(2.0 - 0.5));
}

TEST_CASE("origin state solves the absorbed fixed point") {
  // g21 >= 0: no switching at the origin, both values vanish.
  const OriginState s1 = origin_state(normalize(battery(1.5, 0.1)).spec);
  CHECK(s1.v1 == 0.0);
  CHECK(s1.v2 == 0.0);
  CHECK(!s1.switch1);
  CHECK(!s1.switch2);

  // g21 < 0: regime 2 collects the exit reward at the next arrival.
  const ModelSpec m = normalize(battery(0.4, -0.2)).spec;
  const OriginState s2 = origin_state(m);
  const double q = m.a1 + m.lambda;
  CHECK(s2.v1 == 0.0);
  CHECK(s2.v2 == doctest::Approx(-m.lambda * m.g21 / q));
  CHECK(!s2.switch1);
  CHECK(s2.switch2);

  // Fixed point identity a1 v_i = lambda max{0, v_j - g_ij - v_i} holds.
  for (const ModelSpec& spec :
       {normalize(battery(1.5, -0.5)).spec, normalize(battery(0.4, 0.2)).spec}) {
    const OriginState s = origin_state(spec);
    CHECK(spec.a1 * s.v1 ==
          doctest::Approx(spec.lambda * std::max(0.0, s.v2 - spec.g12 - s.v1))
              .epsilon(1e-14)
              .scale(1.0));
    CHECK(spec.a1 * s.v2 ==
          doctest::Approx(spec.lambda * std::max(0.0, s.v1 - spec.g21 - s.v2))
              .epsilon(1e-14)
              .scale(1.0));
  }
}

TEST_CASE("origin derivatives balance the order-x terms") {
  // No switching active at 0+: dv_i = h_i'(0)/(a1 - b).
  const ModelSpec m1 = normalize(battery(1.5, 0.1)).spec;
  const OriginState s1 = origin_state(m1);
  CHECK(s1.dv1 == doctest::Approx(0.0).scale(1.0));
  CHECK(s1.dv2 == doctest::Approx(1.0 / (m1.a1 - m1.drift)));

  // Regime 2 active: dv2 = (h2'(0) + lambda dv1)/(a1 + lambda - b).
  const ModelSpec m2 = normalize(battery(0.4, -0.2)).spec;
  const OriginState s2 = origin_state(m2);
  CHECK(s2.dv1 == doctest::Approx(0.0).scale(1.0));
  CHECK(s2.dv2 ==
        doctest::Approx(1.0 / (m2.a1 + m2.lambda - m2.drift)));
}

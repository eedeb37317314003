#include "doctest.h"
#include "hypjac/errors.hpp"
#include "hypjac/flows.hpp"
#include "hypjac/reduce.hpp"

using namespace hypjac;

TEST_CASE("division by z1 - z2") {
  const int g = 1;
  const Poly one = Poly::constant(g, Rational(1));
  // z1^2 - z2^2 = (z1 - z2)(z1 + z2)
  BiPoly p(g);
  p.add(2, 0, one);
  p.add(0, 2, -one);
  const BiPoly q = p.divided_by_difference();
  CHECK(q.coeff(1, 0) == one);
  CHECK(q.coeff(0, 1) == one);
  CHECK(q.terms().size() == 2);
  BiPoly r(g);
  r.add(1, 0, one);
  CHECK_THROWS_AS(r.divided_by_difference(), NotExact);
}

TEST_CASE("closed-form flows at genus one") {
  const auto d = closed_form_flows(1);
  REQUIRE(d.size() == 1);
  CHECK(d[0].apply(parse_poly("b1", 1)) == parse_poly("-2*a1", 1));
  CHECK(d[0].apply(parse_poly("a1", 1)) == parse_poly("b1^2 - b1*c1 + c2", 1));
  const ReductionSystem sys = build_reduction_system(1);
  CHECK(normal_form(d[0].apply(parse_poly("a1", 1)), sys) == parse_poly("3*b1^2", 1));
  CHECK(d[0].apply(parse_poly("b1*c2 + a1^2", 1)).is_zero());
  CHECK(d[0].doubled_degree_shift() == 1);
}

TEST_CASE("bracket table basics") {
  for (int g = 1; g <= 3; ++g) {
    const BracketTable t = rmatrix_bracket_table(g);
    for (int i = 1; i <= g; ++i)
      for (int j = 1; j <= g; ++j) CHECK(t.bracket(gen_b(i), gen_b(j)).is_zero());
    CHECK(t.bracket(gen_b(1), gen_a(1)) == -t.bracket(gen_a(1), gen_b(1)));
  }
  const BracketTable t1 = rmatrix_bracket_table(1);
  const auto closed = closed_form_flows(1);
  const Poly lhs = t1.bracket(parse_poly("f2", 1), parse_poly("b1", 1));
  const Poly rhs = closed[0].apply(parse_poly("b1", 1));
  CHECK((lhs == rhs || lhs == -rhs));
}

TEST_CASE("flow verification for g = 1, 2") {
  for (int g = 1; g <= 2; ++g) {
    const FlowReport r = verify_flows(g);
    INFO(r.to_json().dump());
    CHECK(r.all_passed());
    CHECK((r.epsilon == 1 || r.epsilon == -1));
  }
}

TEST_CASE("commutativity on generators at genus two") {
  const auto d = closed_form_flows(2);
  const Poly b2 = parse_poly("b2", 2);
  CHECK(d[0].apply(d[1].apply(b2)) == d[1].apply(d[0].apply(b2)));
}

TEST_CASE("separated variables have a single orientation") {
  for (int g = 1; g <= 3; ++g) {
    const SeparatedCheck sc = separated_variable_check(g, 3, 17);
    INFO(sc.deviation);
    CHECK(sc.passed);
    CHECK(sc.sigma == -1);
  }
}

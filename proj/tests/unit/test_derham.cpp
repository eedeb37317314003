#include <random>

#include "doctest.h"
#include "hypjac/derham.hpp"
#include "hypjac/errors.hpp"

using namespace hypjac;

TEST_CASE("differential at genus one") {
  DeRhamComplex cx(1);
  Cochain b1{1, {{{}, parse_poly("b1", 1)}}};
  const Cochain db = cx.differential(b1);
  CHECK(db.terms.size() == 1);
  CHECK(db.terms.at({1}) == parse_poly("-2*a1", 1));
  CHECK(cx.differential(Cochain{1, {{{}, Poly::constant(1, Rational(1))}}}).terms.empty());
}

TEST_CASE("b1 dtau1 at genus two lands only on dtau2 ^ dtau1") {
  DeRhamComplex cx(2);
  const Cochain x{2, {{{1}, parse_poly("b1", 2)}}};
  const Cochain dx = cx.differential(x);
  REQUIRE(dx.terms.size() == 1);
  CHECK(dx.terms.begin()->first == std::vector<int>{1, 2});
  // dtau2 ^ dtau1 = -dtau1 ^ dtau2
  CHECK(dx.terms.begin()->second == -cx.flow_image(2, Monomial::of(gen_b(1))));
}

TEST_CASE("d o d = 0 on random cochains") {
  std::mt19937_64 rng(8);
  for (int g = 1; g <= 3; ++g) {
    DeRhamComplex cx(g);
    for (int trial = 0; trial < 10; ++trial) {
      Cochain x{g, {}};
      std::uniform_int_distribution<int> deg(0, 10), coef(-4, 4), bit(0, 1);
      for (int t = 0; t < 3; ++t) {
        std::vector<int> wedge;
        for (int j = 1; j <= g; ++j)
          if (bit(rng)) wedge.push_back(j);
        const auto mons = basis_enum(g, deg(rng));
        if (mons.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
        x.terms.try_emplace(wedge, g).first->second += Poly::monomial(g, mons[pick(rng)], Rational(coef(rng)));
      }
      CHECK(cx.differential(cx.differential(x)).terms.empty());
    }
  }
}

TEST_CASE("cohomology at genus one and two") {
  const CohomologyTable t1 = cohomology_dims(1, required_window(1));
  CHECK(t1.total_dims() == std::vector<std::size_t>{1, 2});
  CHECK(t1.character(0) == QSeries::monomial(0, Integer(1), t1.window.hi + 1));
  CHECK(t1.character(1) == QSeries::monomial(-1, Integer(1), t1.window.hi + 1) +
                               QSeries::monomial(1, Integer(1), t1.window.hi + 1));
  CHECK(t1.matches_prediction());
  CHECK(t1.guard_band_clean());
  CHECK(t1.d_squared_zero);
  CHECK(euler_matches(t1));
  // chi_q = -(s^-1 - 1 + s)
  const QSeries e = euler_from_ranks(t1);
  CHECK(e.coeff(-1) == -1);
  CHECK(e.coeff(0) == 1);
  CHECK(e.coeff(1) == -1);

  const CohomologyTable t2 = cohomology_dims(2, required_window(2));
  CHECK(t2.total_dims() == std::vector<std::size_t>{1, 4, 5});
  CHECK(t2.matches_prediction());
  CHECK(t2.guard_band_clean());
  CHECK(euler_matches(t2));
  const QSeries r = r_series(2, 2, 20) - r_series(2, 1, 20);
  for (int d = t2.window.lo; d <= t2.window.hi; ++d) CHECK(euler_from_ranks(t2).coeff(d) == r.coeff(d));
  // q -> 1
  Integer total = 0;
  for (int k = 0; k <= 2; ++k) total += (k % 2 ? -1 : 1) * static_cast<long>(t2.total_dims()[k]);
  CHECK(total == euler_limit(2));
}

TEST_CASE("window refusal") {
  CHECK_THROWS_AS(cohomology_dims(1, {-2, 2}), WindowRefusal);
  try {
    cohomology_dims(1, {-2, 2});
  } catch (const WindowRefusal& w) {
    CHECK(w.need_lo() == -1);
    CHECK(w.need_hi() == 7);
  }
  const CohomologyTable partial = cohomology_dims(1, {-2, 2}, true);
  CHECK(partial.restricted);
  CHECK_THROWS_AS(cohomology_dims(1, {3, 2}), InvalidParameter);
}

TEST_CASE("descendants at genus one") {
  DeRhamComplex cx(1);
  const auto reps = hg_representatives(cx, 11);
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].coefficient == Monomial());
  CHECK(reps[1].coefficient == Monomial::of(gen_b(1)));
  DescentSolver solver(cx, reps);
  const Descent one = solver.descend(Poly::constant(1, Rational(1)));
  REQUIRE(one.terms.size() == 1);
  CHECK(one.terms[0].rep == 0);
  CHECK(one.terms[0].coeff == 1);
  const Descent a = solver.descend(parse_poly("a1", 1));
  CHECK(a.residual_zero);
  REQUIRE(a.terms.size() == 1);
  CHECK(a.terms[0].rep == 1);
  CHECK(a.terms[0].exponents == std::vector<int>{1});
  CHECK(a.terms[0].coeff == Rational(-1, 2));
  CHECK(solver.descend(parse_poly("b1^3", 1)).residual_zero);
  CHECK_THROWS_AS(solver.descend(parse_poly("b1 + 1", 1)), InvalidParameter);
}

TEST_CASE("every basis monomial up to degree 12 descends, g = 1, 2") {
  for (int g = 1; g <= 2; ++g) {
    DeRhamComplex cx(g);
    DescentSolver solver(cx, hg_representatives(cx, 12 - g * g));
    for (int d = 0; d <= 12; ++d)
      for (const auto& m : basis_enum(g, d)) CHECK(solver.descend(Poly::monomial(g, m)).residual_zero);
  }
}

TEST_CASE("D-monomials") {
  CHECK(d_monomials(2, 3) == std::vector<std::vector<int>>{{0, 1}, {3, 0}});
  CHECK(d_monomials(1, 0) == std::vector<std::vector<int>>{{0}});
  CHECK(d_monomials(2, -1).empty());
}

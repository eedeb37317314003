#include <random>

#include "doctest.h"
#include "hypjac/errors.hpp"
#include "hypjac/mumford.hpp"
#include "hypjac/qseries.hpp"
#include "hypjac/reduce.hpp"
#include "oracles.hpp"

using namespace hypjac;

namespace {

std::vector<Rational> f0_of(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

Poly random_basis_poly(int g, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> coef(-4, 4);
  Poly p(g);
  for (int t = 0; t < 3; ++t) {
    const auto mons = basis_enum(g, deg(rng));
    if (mons.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
    p.add_term(mons[pick(rng)], Rational(coef(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("genus-one reduction system") {
  const ReductionSystem sys = build_reduction_system(1);
  CHECK(sys.c_subst[0] == parse_poly("-b1", 1));
  CHECK(sys.c_subst[1] == parse_poly("b1^2", 1));
  CHECK(sys.square_rules.at(3) == parse_poly("-b1^3", 1));
  const ReductionSystem sys1 = build_reduction_system(1, f0_of({0, 0, 1}));
  CHECK(sys1.square_rules.at(3) == parse_poly("-b1^3 + 1", 1));
  CHECK_THROWS_AS(build_reduction_system(0), InvalidParameter);
  CHECK_THROWS_AS(build_reduction_system(1, f0_of({0, 0})), InvalidParameter);
}

TEST_CASE("genus-one normal forms") {
  const ReductionSystem sys = build_reduction_system(1);
  ReductionTrace trace;
  CHECK(normal_form(parse_poly("a1^2*b1", 1), sys, &trace) == parse_poly("-b1^4", 1));
  CHECK(trace.steps.size() == 1);
  CHECK(normal_form(parse_poly("c1", 1), sys) == parse_poly("-b1", 1));
  CHECK(normal_form(parse_poly("f2", 1), sys).is_zero());
  CHECK_THROWS_AS(normal_form(parse_poly("b1", 2), sys), GenusMismatch);
  const ReductionSystem sys1 = build_reduction_system(1, f0_of({0, 0, 1}));
  CHECK(normal_form(parse_poly("f3", 1), sys1) == Poly::constant(1, Rational(1)));
  CHECK(normal_form(parse_poly("a1^2", 1), sys1) == parse_poly("-b1^3 + 1", 1));
}

TEST_CASE("square rules have the expected shape for g <= 5") {
  for (int g = 1; g <= 5; ++g) {
    const ReductionSystem sys = build_reduction_system(g);
    CHECK(static_cast<int>(sys.square_rules.size()) == g);
    CHECK(sys.max_high_factors <= 3);
    for (int k = 1; k <= g + 1; ++k) {
      CHECK(!sys.c_subst[k - 1].uses_kind(GenKind::C));
      CHECK(sys.c_subst[k - 1].doubled_degree().value_or(2 * k) == 2 * k);
    }
    for (const auto& [n, rhs] : sys.square_rules) {
      CHECK(is_high_u(n, g));
      CHECK(rhs.is_homogeneous());
      const auto lead = order_key(Monomial::of(u_generator(n), 2), g);
      for (const auto& [m, c] : rhs.terms()) {
        CHECK(order_key(m, g) < lead);
        unsigned high = 0;
        for (const auto& [x, e] : m.factors())
          if (is_high_u(u_index(x), g)) high += e;
        CHECK(high <= 3);
      }
    }
  }
}

TEST_CASE("basis examples and character match") {
  CHECK(basis_enum(1, 6) == std::vector<Monomial>{Monomial::of(gen_b(1), 3)});
  CHECK(basis_enum(1, 3) == std::vector<Monomial>{Monomial::of(gen_a(1))});
  const auto g2 = basis_enum(2, 4);
  REQUIRE(g2.size() == 2);
  CHECK(std::find(g2.begin(), g2.end(), Monomial::of(gen_b(1), 2)) != g2.end());
  CHECK(std::find(g2.begin(), g2.end(), Monomial::of(gen_b(2))) != g2.end());
  for (int g = 1; g <= 3; ++g) {
    const QSeries ch = ch_A0(g, 25);
    const auto brute = oracle::count_quotient_basis(g, 25);
    for (int d = 0; d <= 24; ++d) {
      const auto mons = basis_enum(g, d);
      CHECK(static_cast<long long>(mons.size()) == brute[d]);
      CHECK(Integer(static_cast<long>(mons.size())) == ch.coeff(d));
      for (std::size_t i = 1; i < mons.size(); ++i)
        CHECK(order_key(mons[i - 1], g) < order_key(mons[i], g));
      for (const auto& m : mons) CHECK(is_basis_monomial(m, g));
    }
  }
}

TEST_CASE("normal form is a ring homomorphism onto the basis") {
  std::mt19937_64 rng(99);
  for (int g = 1; g <= 3; ++g) {
    Reducer nf(build_reduction_system(g));
    for (int trial = 0; trial < 15; ++trial) {
      const Poly x = random_basis_poly(g, rng, 8);
      const Poly y = random_basis_poly(g, rng, 8);
      const Poly xy = nf(x * y);
      CHECK(is_normal(xy));
      CHECK(nf(x + y) == nf(x) + nf(y));
      CHECK(nf(nf(x) * nf(y)) == xy);
      // c's and raw products reduce consistently too
      const Poly c1 = Poly::generator(g, gen_c(1));
      CHECK(nf(c1 * x) == nf(nf(c1) * x));
    }
  }
}

TEST_CASE("ideal combinations reduce to zero") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int g = 1; g <= 3; ++g) {
    std::vector<Rational> f0;
    for (int k = 0; k < 2 * g + 1; ++k) f0.emplace_back(coef(rng), 1 + std::abs(coef(rng)));
    const ReductionSystem sys = build_reduction_system(g, f0);
    const auto det = det_coefficients(g);
    const auto gens = generators(g, false);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (int trial = 0; trial < 10; ++trial) {
      Poly combo(g);
      for (int k = 1; k <= 2 * g + 1; ++k) {
        Monomial m;
        for (int i = 0; i < 2; ++i) m = m * Monomial::of(gens[pick(rng)]);
        const Poly rel = det[k - 1] - Poly::constant(g, f0[k - 1]);
        combo += rel.times_monomial(m, Rational(coef(rng)));
      }
      CHECK(normal_form(combo, sys).is_zero());
    }
  }
}

TEST_CASE("graded compatibility") {
  const auto r0 = gr_compatibility_check(1, f0_of({0, 0, 0}), 12, 10, 1);
  CHECK(r0.all_passed());
  const auto r1 = gr_compatibility_check(1, f0_of({0, 0, 1}), 12, 10, 1);
  CHECK(r1.all_passed());
  std::vector<Rational> f0{Rational(1, 2), Rational(-3), Rational(2, 7), Rational(5), Rational(-1, 3)};
  const auto r2 = gr_compatibility_check(2, f0, 16, 50, 42);
  CHECK(r2.pairs.size() == 50);
  CHECK(r2.all_passed());
}

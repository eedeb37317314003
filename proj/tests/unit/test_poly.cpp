#include <random>

#include "doctest.h"
#include "hypjac/errors.hpp"
#include "hypjac/poly.hpp"

using namespace hypjac;

namespace {

Poly random_poly(int g, std::mt19937_64& rng, int terms = 4) {
  const auto gens = generators(g, true);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> len(0, 3);
  Poly p(g);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    for (int i = len(rng); i > 0; --i) m = m * Monomial::of(gens[pick(rng)]);
    p.add_term(m, Rational(coef(rng), 1 + std::abs(coef(rng))));
  }
  return p;
}

}  // namespace

TEST_CASE("generator degrees and tokens") {
  CHECK(gen_a(1).doubled_degree() == 3);
  CHECK(gen_b(2).doubled_degree() == 4);
  CHECK(gen_c(3).doubled_degree() == 6);
  CHECK(gen_f(5).doubled_degree() == 10);
  CHECK(gen_a(2).token() == "a2");
  CHECK(generator_count(GenKind::C, 2) == 3);
  CHECK(generator_count(GenKind::F, 2) == 5);
  CHECK(generators(2, false).size() == 7);
  CHECK(generators(2, true).size() == 12);
  CHECK(u_index(gen_b(1)) == 2);
  CHECK(u_index(gen_a(1)) == 3);
  CHECK(u_generator(5) == gen_a(2));
  CHECK(u_generator(4) == gen_b(2));
}

TEST_CASE("parse and print") {
  const Poly p = parse_poly("a1^2*b1 - 3/2*b1 + (b1 + 1)^2", 1);
  CHECK(p.coeff(Monomial::of(gen_b(1), 2)) == 1);
  CHECK(p.coeff(Monomial::of(gen_b(1))) == Rational(1, 2));
  CHECK(p.coeff(Monomial()) == 1);
  CHECK(parse_poly(p.to_string(), 1) == p);
  CHECK(parse_poly("0", 2).is_zero());
  CHECK(parse_poly("-c1", 1) == -Poly::generator(1, gen_c(1)));
  CHECK_THROWS_AS(parse_poly("b1 b1", 1), ParseError);
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_poly("a1 +", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("a1 + )", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("x1", 1), ParseError);
  try {
    parse_poly("b1 + a3", 2);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("a3") != std::string::npos);
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(Poly::generator(1, gen_b(2)), InvalidParameter);
}

TEST_CASE("genus mismatch") {
  CHECK_THROWS_AS(Poly::generator(1, gen_b(1)) + Poly::generator(2, gen_b(1)), GenusMismatch);
  CHECK_THROWS_AS(Poly::generator(1, gen_b(1)) * Poly::generator(2, gen_b(1)), GenusMismatch);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int g = 1 + trial % 3;
    const Poly x = random_poly(g, rng), y = random_poly(g, rng), z = random_poly(g, rng);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x - x == Poly(g));
    CHECK(parse_poly(x.to_string(), g) == x);
    CHECK(Poly::from_json(x.to_json()) == x);
  }
}

TEST_CASE("homogeneous components") {
  const Poly p = parse_poly("a1 + b1^2 + c2 + 5", 1);
  const auto comps = p.homogeneous_components();
  CHECK(comps.size() == 3);
  CHECK(comps.at(4) == parse_poly("b1^2 + c2", 1));
  CHECK(!p.is_homogeneous());
  CHECK(p.max_doubled_degree() == 4);
  CHECK(parse_poly("a1*b1", 1).doubled_degree() == 5);
  CHECK(p.uses_kind(GenKind::C));
  CHECK(!p.uses_kind(GenKind::F));
}

TEST_CASE("partial derivatives and derivations obey Leibniz") {
  std::mt19937_64 rng(11);
  for (int g = 1; g <= 3; ++g) {
    Derivation d(g, "t", 2);
    for (GenId x : generators(g, false)) d.set_image(x, random_poly(g, rng, 2));
    for (int trial = 0; trial < 10; ++trial) {
      Poly x = random_poly(g, rng), y = random_poly(g, rng);
      // strip f's so the derivation is fully defined on both
      std::map<GenId, Poly> zero_f;
      for (int k = 1; k <= 2 * g + 1; ++k) zero_f.emplace(gen_f(k), Poly(g));
      x = substitute(x, zero_f);
      y = substitute(y, zero_f);
      CHECK(d.apply(x * y) == d.apply(x) * y + x * d.apply(y));
      CHECK(d.apply(x + y) == d.apply(x) + d.apply(y));
      const GenId b1 = gen_b(1);
      CHECK((x * y).partial(b1) == x.partial(b1) * y + x * y.partial(b1));
    }
  }
  Derivation partial_only(1, "p", 0);
  partial_only.set_image(gen_b(1), Poly::constant(1, Rational(1)));
  CHECK_THROWS_AS(partial_only.apply(parse_poly("a1", 1)), UndefinedDerivation);
  CHECK(partial_only.apply(parse_poly("b1^3 + f3", 1)) == parse_poly("3*b1^2", 1));
}

TEST_CASE("substitution is a ring homomorphism") {
  std::mt19937_64 rng(3);
  const int g = 2;
  std::map<GenId, Poly> images;
  for (GenId x : generators(g, true)) images.emplace(x, random_poly(g, rng, 2));
  for (int trial = 0; trial < 10; ++trial) {
    const Poly x = random_poly(g, rng), y = random_poly(g, rng);
    CHECK(substitute(x * y, images) == substitute(x, images) * substitute(y, images));
    CHECK(substitute(x + y, images) == substitute(x, images) + substitute(y, images));
  }
}

TEST_CASE("evaluation at rational points") {
  const Poly p = parse_poly("a1^2 + b1*c1 - 1/3", 1);
  const Rational v = evaluate<Rational>(
      p,
      [](GenId x) {
        switch (x.kind) {
          case GenKind::A: return Rational(2);
          case GenKind::B: return Rational(3);
          default: return Rational(1, 2);
        }
      },
      [](const Rational& c) { return c; });
  CHECK(v == Rational(4) + Rational(3, 2) - Rational(1, 3));
}

TEST_CASE("order key ranks by degree then high part") {
  // g = 1: u_1 = b1 is low, u_{3/2} = a1 is high.
  const Monomial a2 = Monomial::of(gen_a(1), 2);
  const Monomial b3 = Monomial::of(gen_b(1), 3);
  CHECK(order_key(a2, 1) > order_key(b3, 1));
  CHECK(order_key(Monomial::of(gen_b(1), 4), 1) > order_key(a2, 1));
}

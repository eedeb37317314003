#include <random>

#include "doctest.h"
#include "hypjac/errors.hpp"
#include "hypjac/mumford.hpp"

using namespace hypjac;

namespace {

Curve curve_of(int g, std::vector<int> f) {
  Curve c{g, {}};
  for (int v : f) c.f.emplace_back(v);
  return c;
}

std::vector<Rational> rats(std::initializer_list<int> v) {
  std::vector<Rational> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("determinant coefficients at genus one") {
  const auto f = det_coefficients(1);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == parse_poly("c1 + b1", 1));
  CHECK(f[1] == parse_poly("c2 + b1*c1", 1));
  CHECK(f[2] == parse_poly("b1*c2 + a1^2", 1));
  for (int g = 1; g <= 3; ++g) {
    const auto fs = det_coefficients(g);
    for (int k = 1; k <= 2 * g + 1; ++k) CHECK(fs[k - 1].doubled_degree() == 2 * k);
  }
}

TEST_CASE("divisor to triple, exact") {
  const MumfordTriple t1 = divisor_to_triple({{Rational(1), Rational(1)}}, curve_of(1, {0, 0, 0}));
  CHECK(t1.a == rats({1}));
  CHECK(t1.b == rats({-1}));
  CHECK(t1.c == rats({1, 1}));

  const MumfordTriple t2 = divisor_to_triple({{Rational(0), Rational(1)}}, curve_of(1, {0, 0, 1}));
  CHECK(t2.a == rats({1}));
  CHECK(t2.b == rats({0}));
  CHECK(t2.c == rats({0, 0}));

  CHECK_THROWS_AS(divisor_to_triple({{Rational(1), Rational(2)}}, curve_of(1, {0, 0, 0})), OffCurve);
  CHECK_THROWS_AS(divisor_to_triple({{Rational(1), Rational(1)}, {Rational(1), Rational(1)}},
                                    curve_of(2, {0, 0, 0, 0, 0})),
                  DegenerateDivisor);
}

TEST_CASE("triple to divisor, numeric") {
  {
    const MumfordTriple t{1, rats({1}), rats({0}), rats({0, 0})};
    const DivisorResult d = triple_to_divisor(t, curve_of(1, {0, 0, 1}));
    REQUIRE(d.points.size() == 1);
    CHECK(!d.degenerate);
    CHECK(abs(d.points[0].z.re) < Real("1e-60"));
    CHECK(abs(d.points[0].y.re - 1) < Real("1e-60"));
  }
  {
    const MumfordTriple t{1, rats({1}), rats({-1}), rats({1, 1})};
    const DivisorResult d = triple_to_divisor(t, curve_of(1, {0, 0, 0}));
    CHECK(abs(d.points[0].z.re - 1) < Real("1e-60"));
    CHECK(abs(d.points[0].y.re - 1) < Real("1e-60"));
  }
  {
    // b = (z-1)^2; a and c chosen so that a^2 + bc is some degree-5 monic f.
    const MumfordTriple t{2, rats({0, 0}), rats({-2, 1}), rats({0, 0, 0})};
    Curve c{2, {}};
    const auto det = t.determinant();
    for (int k = 1; k <= 5; ++k) c.f.push_back(det[5 - k]);
    const DivisorResult d = triple_to_divisor(t, c);
    CHECK(d.degenerate);
    CHECK(d.points[0].repeated);
  }
}

TEST_CASE("JSON forms") {
  const Curve c = curve_of(1, {0, 0, 1});
  CHECK(c.to_json().dump() == R"({"f":["0","0","1"],"g":1})");
  CHECK(Curve::from_json(c.to_json()).f == c.f);
  const MumfordTriple t{1, rats({1}), rats({-1}), rats({1, 1})};
  CHECK(t.to_json().dump() == R"({"a":["1"],"b":["-1"],"c":["1","1"]})");
  CHECK(MumfordTriple::from_json(1, t.to_json()) == t);
}

TEST_CASE("random round trips for g = 1..3") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> small(-9, 9);
  for (int g = 1; g <= 3; ++g) {
    int done = 0;
    while (done < 100) {
      // Random a, b (distinct rational roots), then f = a^2 + b*c for random c.
      std::vector<Rational> roots;
      for (int j = 0; j < g; ++j) {
        Rational r(small(rng), 1 + std::abs(small(rng)));
        bool dup = false;
        for (const auto& s : roots) dup |= (s == r);
        if (dup) break;
        roots.push_back(r);
      }
      if (static_cast<int>(roots.size()) != g) continue;
      MumfordTriple seed{g, {}, {}, {}};
      for (int j = 0; j < g; ++j) seed.a.emplace_back(small(rng), 1 + std::abs(small(rng)));
      std::vector<Rational> bd{Rational(1)};  // descending product of (z - r)
      for (const auto& r : roots) {
        std::vector<Rational> next(bd.size() + 1, Rational(0));
        for (std::size_t i = 0; i < bd.size(); ++i) {
          next[i] += bd[i];
          next[i + 1] -= r * bd[i];
        }
        bd = next;
      }
      seed.b.assign(bd.begin() + 1, bd.end());
      for (int j = 0; j <= g; ++j) seed.c.emplace_back(small(rng));
      const auto det = seed.determinant();
      Curve curve{g, {}};
      for (int k = 1; k <= 2 * g + 1; ++k) curve.f.push_back(det[2 * g + 1 - k]);

      std::vector<RationalPoint> pts;
      const auto ad = seed.a_dense();
      for (const auto& r : roots) {
        Rational y(0), p(1);
        for (const auto& coef : ad) {
          y += coef * p;
          p *= r;
        }
        pts.push_back({r, y});
      }
      const MumfordTriple t = divisor_to_triple(pts, curve);
      CHECK(t == seed);
      CHECK(t.lies_on(curve));

      // f_k as ring elements evaluated at the triple give back the curve.
      const auto fs = det_coefficients(g);
      for (int k = 1; k <= 2 * g + 1; ++k) {
        const Rational v = evaluate<Rational>(
            fs[k - 1],
            [&](GenId x) {
              switch (x.kind) {
                case GenKind::A: return t.a[x.index - 1];
                case GenKind::B: return t.b[x.index - 1];
                default: return t.c[x.index - 1];
              }
            },
            [](const Rational& q) { return q; });
        CHECK(v == curve.f[k - 1]);
      }

      PrecisionScope scope(128);
      NumericOptions opts;
      opts.precision_bits = 128;
      opts.tolerance = "1e-25";
      const DivisorResult d = triple_to_divisor(t, curve, opts);
      CHECK(!d.degenerate);
      const NumericTriple back = divisor_to_triple_numeric(d.points, curve, opts);
      CHECK(triple_distance(t, back) < Real("1e-20"));
      ++done;
    }
  }
}

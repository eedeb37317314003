#include "doctest.h"
#include "hypjac/errors.hpp"
#include "hypjac/qseries.hpp"
#include "oracles.hpp"

using namespace hypjac;

namespace {

QSeries laurent(std::initializer_list<std::pair<int, int>> terms, int trunc) {
  QSeries r(trunc);
  for (auto [e, c] : terms) r = r + QSeries::monomial(e, Integer(c), trunc);
  return r;
}

}  // namespace

TEST_CASE("q-binomial small cases") {
  CHECK(q_binomial(2, 1, 20) == laurent({{0, 1}, {2, 1}}, 20));
  CHECK(q_binomial(4, 2, 20) == laurent({{0, 1}, {2, 1}, {4, 2}, {6, 1}, {8, 1}}, 20));
  CHECK(q_binomial(2, 3, 20).is_zero());
  CHECK(q_binomial(3, -1, 20).is_zero());
  CHECK_THROWS_AS(q_binomial(3, 1, 0), InvalidParameter);
}

TEST_CASE("q-binomial matches partition counting, symmetric and nonnegative") {
  for (int n = 0; n <= 10; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto expected = oracle::gaussian_by_partitions(n, k);
      const QSeries got = q_binomial(n, k, 200);
      for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(got.coeff(2 * static_cast<int>(i)) == expected[i]);
        CHECK(got.coeff(2 * static_cast<int>(i)) >= 0);
        CHECK(got.coeff(2 * static_cast<int>(i)) ==
              got.coeff(2 * static_cast<int>(expected.size() - 1 - i)));
      }
      CHECK(got.terms().rbegin()->first == 2 * static_cast<int>(expected.size() - 1));
    }
  }
}

TEST_CASE("ring characters agree with monomial enumeration") {
  for (int g = 1; g <= 4; ++g) {
    const int trunc = 30;
    const RingCharacters rc = ring_characters(g, trunc);
    CHECK(rc.product_identity);
    const auto free_counts = oracle::count_free(oracle::free_ring_degrees(g), trunc);
    const auto basis_counts = oracle::count_quotient_basis(g, trunc);
    std::vector<int> f_degrees;
    for (int j = 1; j <= 2 * g + 1; ++j) f_degrees.push_back(2 * j);
    const auto f_counts = oracle::count_free(f_degrees, trunc);
    for (int n = 0; n < trunc; ++n) {
      CHECK(rc.ch_A.coeff(n) == free_counts[n]);
      CHECK(rc.ch_A0.coeff(n) == basis_counts[n]);
      CHECK(rc.ch_F.coeff(n) == f_counts[n]);
    }
  }
}

TEST_CASE("ring characters at genus one and two") {
  const RingCharacters g1 = ring_characters(1, 12);
  // (1 + q^{3/2}) / (1 - q) = 1 + q + q^{3/2} + q^2 + q^{5/2} + ...
  CHECK(g1.ch_A0.coeff(0) == 1);
  CHECK(g1.ch_A0.coeff(1) == 0);
  CHECK(g1.ch_A0.coeff(2) == 1);
  CHECK(g1.ch_A0.coeff(3) == 1);
  CHECK(g1.ch_A0.coeff(4) == 1);
  CHECK(g1.ch_A0.coeff(5) == 1);
  CHECK(g1.ch_A.coeff(2) == 2);
  CHECK(ring_characters(2, 12).ch_A0.coeff(4) == 2);
  CHECK_THROWS_AS(ring_characters(0, 10), InvalidParameter);
}

TEST_CASE("product identity for g <= 5 at trunc 40") {
  for (int g = 1; g <= 5; ++g) CHECK(ring_characters(g, 40).product_identity);
}

TEST_CASE("complex characters at genus one") {
  const ComplexCharacters cc = complex_characters(1, 1, 10);
  CHECK(cc.ch_Wk == laurent({{-1, 1}, {1, 1}}, 10));
  CHECK(cc.r_k == laurent({{-1, 1}, {1, 1}}, 10));
  CHECK(cc.chi_q == laurent({{-1, -1}, {0, 1}, {1, -1}}, 10));
  CHECK(cc.chi_agree);
  CHECK(cc.telescoping);
  CHECK_THROWS_AS(complex_characters(1, 2, 10), InvalidParameter);
  CHECK_THROWS_AS(complex_characters(0, 0, 10), InvalidParameter);
}

TEST_CASE("W^2 at genus two has dimension five") {
  const ComplexCharacters cc = complex_characters(2, 2, 20);
  CHECK(evaluate_at_one(cc.ch_Wk) == 5);
}

TEST_CASE("Euler characteristic routes agree for g <= 5") {
  const int expected[] = {-1, 2, -5, 14, -42};
  for (int g = 1; g <= 5; ++g) {
    CHECK(euler_limit(g) == expected[g - 1]);
    CHECK(euler_limit_from_product(g) == Rational(expected[g - 1]));
    for (int k = 0; k <= g; ++k) {
      const ComplexCharacters cc = complex_characters(g, k, 40);
      CHECK(cc.chi_agree);
      CHECK(cc.telescoping);
    }
    // chi_q is a Laurent polynomial whose value at q = 1 is the limit.
    const ComplexCharacters cc = complex_characters(g, 0, 40);
    CHECK(evaluate_at_one(cc.chi_q) == expected[g - 1]);
  }
}

TEST_CASE("character of the quotient from R_g - R_{g-1} and the D-algebra") {
  for (int g = 1; g <= 5; ++g) {
    const int trunc = 40;
    const int wide = trunc + g * g + 1;
    QSeries d_alg = QSeries::monomial(0, Integer(1), wide);
    for (int j = 1; j <= g; ++j) d_alg = d_alg.divided_by(bracket(2 * j - 1, wide));
    const QSeries lhs = (d_alg * (r_series(g, g, wide) - r_series(g, g - 1, wide))).shifted(g * g);
    CHECK(lhs.truncated(trunc) == ch_A0(g, trunc));
  }
}

TEST_CASE("series arithmetic windows and exact division") {
  const QSeries a = laurent({{0, 1}, {3, 2}}, 10);
  const QSeries b = laurent({{-2, 1}, {1, -1}}, 8);
  const QSeries p = a * b;
  CHECK(p.trunc() == std::min(10 + (-2), 8 + 0));
  CHECK(p.divided_by(b).agrees_with(a));
  CHECK_THROWS_AS(a.divided_by(laurent({{0, 2}}, 10)), NotExact);
  CHECK_THROWS_AS(a.divided_by(QSeries(10)), NotExact);
  CHECK_THROWS_AS(a.coeff(10), InvalidParameter);
  CHECK_THROWS_AS(QSeries::monomial(-300, Integer(1), 10), InvalidParameter);
  CHECK_THROWS_AS(QSeries::monomial(-3, Integer(1), 10, -2), InvalidParameter);
}

TEST_CASE("series JSON form") {
  const QSeries a = laurent({{-1, -3}, {2, 5}}, 6);
  const auto j = a.to_json();
  CHECK(j.dump() == R"({"terms":[[-1,"-3"],[2,"5"]],"trunc":6})");
  CHECK(QSeries::from_json(j) == a);
  CHECK(a.to_text().find("s^-1 [q^-1/2]") != std::string::npos);
}

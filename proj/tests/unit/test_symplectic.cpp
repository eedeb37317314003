#include "doctest.h"
#include "hypjac/errors.hpp"
#include "hypjac/symplectic.hpp"

using namespace hypjac;

namespace {
WedgeMask label(int l) { return WedgeMask(1) << l; }
}  // namespace

TEST_CASE("wedge signs and omega") {
  CHECK(wedge_sign(label(0), label(1)) == 1);
  CHECK(wedge_sign(label(1), label(0)) == -1);
  CHECK(wedge_sign(label(1), label(1)) == 0);
  const SympSpace v(2);
  const Wedge w = omega(v);
  CHECK(w.size() == 2);
  // omega ^ omega = 2 v1^xi1^v2^xi2 = -2 v1^v2^xi1^xi2 in sorted label order
  const Wedge ww = wedge(w, w);
  REQUIRE(ww.size() == 1);
  CHECK(ww.begin()->second == -2);
}

TEST_CASE("phi examples") {
  const SympSpace v(2);
  // labels: v1 = 0, v2 = 1, xi1 = 2, xi2 = 3
  const Wedge p = phi(v, Wedge{{label(0) | label(2), Rational(1)}});
  REQUIRE(p.size() == 1);
  CHECK(p.begin()->first == 0);
  CHECK(p.begin()->second == 1);
  CHECK(phi(v, Wedge{{label(0) | label(1), Rational(1)}}).empty());
  CHECK(phi_kernel(2, 2).kernel_dim == 5);
}

TEST_CASE("W^k dimensions and characters") {
  CHECK(wk_dims_and_characters(2, 2, 20).dim == 5);
  const WkResult w11 = wk_dims_and_characters(1, 1, 10);
  CHECK(w11.dim == 2);
  CHECK(w11.character == QSeries::monomial(-1, Integer(1), 10) + QSeries::monomial(1, Integer(1), 10));
  CHECK(wk_dims_and_characters(3, 3, 20).dim == 14);
  CHECK_THROWS_AS(wk_dims_and_characters(1, 3, 10), InvalidParameter);
  for (int g = 1; g <= 4; ++g)
    for (int k = 0; k <= 2 * g; ++k) {
      const WkResult r = wk_dims_and_characters(g, k, 40);
      CHECK(r.dim_matches);
      CHECK(r.character_matches);
    }
}

TEST_CASE("phi_k kernels, surjectivity and omega injectivity for g <= 4") {
  for (int g = 1; g <= 4; ++g) {
    for (int k = 0; k <= g; ++k) {
      const PhiReport p = phi_kernel(g, k);
      CHECK(p.kernel_matches);
      CHECK(p.surjective);
    }
    for (int k = 0; k <= g - 2; ++k) CHECK(omega_injective(g, k));
  }
  CHECK(!omega_injective(2, 2));
}

TEST_CASE("complement representatives project consistently") {
  const SympSpace v(3);
  const WQuotient w(v, 2);
  CHECK(w.basis().size() == 14);
  CHECK(w.in_image(omega(v)));
  const auto c = w.project(Wedge{{w.basis()[0], Rational(3)}});
  CHECK(c[0] == 3);
}

TEST_CASE("isotropic spans") {
  const IsotropicReport r11 = isotropic_span_check(1, 1);
  CHECK(r11.span_dim == 2);
  CHECK(r11.outcome == Tri::Pass);
  CHECK(isotropic_span_check(2, 2).span_dim == 5);
  const IsotropicReport r33 = isotropic_span_check(3, 3, 5);
  CHECK(r33.span_dim == 14);
  CHECK(r33.outcome == Tri::Pass);
  CHECK(r33.inside_kernel);
  CHECK_THROWS_AS(isotropic_span_check(2, 3), InvalidParameter);
}

TEST_CASE("Koszul complex") {
  const KoszulReport r1 = koszul_check(1, -1, 12);
  CHECK(r1.passed());
  for (const auto& c : r1.cells)
    if (c.k == 0) CHECK(c.homology == 0);
  // cokernel character (s^-1 - 1 + s)/(1 - s) = s^-1 ch A_0
  CHECK(r1.cokernel_character.coeff(-1) == 1);
  CHECK(r1.cokernel_character.coeff(0) == 0);
  CHECK(r1.cokernel_character.coeff(1) == 1);
  CHECK(r1.cokernel_character.coeff(2) == 1);
  const KoszulReport r2 = koszul_check(2, -4, 16);
  CHECK(r2.exact_below_g);
  CHECK(r2.d_squared_zero);
  CHECK(r2.cokernel_matches);
  CHECK_THROWS_AS(koszul_check(2, -3, 10), WindowRefusal);
}

TEST_CASE("generic abelian table") {
  CHECK(generic_abelian_dims(3).defect == 1);
  CHECK(generic_abelian_dims(2).defect == 0);
  const AbelianTable t1 = generic_abelian_dims(1);
  CHECK(t1.rows[1].generic == 2);
  const AbelianTable t3 = generic_abelian_dims(3);
  CHECK(t3.rows[3].generic == 15);
  CHECK(t3.rows[3].hyperelliptic == 14);
  CHECK(t3.rows[4].generic == 0);
}

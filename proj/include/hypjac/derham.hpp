#pragma once

// The graded complex C*_0: k-forms sum_I x_I dtau_I with coefficients in the
// degenerate quotient A_0 and differential d = sum_j dtau_j D_j. Doubled
// degrees: deg2(dtau_j) = 1 - 2j, so d preserves degree and every graded piece
// is finite-dimensional.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hypjac/flows.hpp"
#include "hypjac/linalg.hpp"
#include "hypjac/poly.hpp"
#include "hypjac/qseries.hpp"
#include "hypjac/reduce.hpp"
#include "json.hpp"

namespace hypjac {

/// Sum over strictly increasing index sets I of coefficient * dtau_I.
struct Cochain {
  int g = 1;
  std::map<std::vector<int>, Poly> terms;
  friend bool operator==(const Cochain&, const Cochain&) = default;
};

struct CochainBasisElement {
  std::vector<int> wedge;
  Monomial coefficient;
};

/// Caches flow images of basis monomials; not thread-safe.
class DeRhamComplex {
 public:
  explicit DeRhamComplex(int g);

  int genus() const { return g_; }
  /// NF_0(D_j m) for a basis monomial m.
  const Poly& flow_image(int j, const Monomial& m);
  Poly normal_form(const Poly& x) { return reducer_(x); }

  std::vector<CochainBasisElement> basis(int k, int doubled_degree) const;
  /// Matrix of d: C^k_d -> C^{k+1}_d (columns: source basis, rows: target basis).
  Matrix differential_matrix(int k, int doubled_degree);
  Cochain differential(const Cochain& x);

 private:
  int g_;
  std::vector<Derivation> flows_;
  Reducer reducer_;
  std::vector<std::map<Monomial, Poly>> cache_;
};

/// Doubled degrees that must be inspected: the predicted support [-g^2, g^2]
/// plus a guard band above it.
struct Window {
  int lo = 0;
  int hi = 0;
};
constexpr int kGuardBand = 6;
Window required_window(int g);

struct CohomologyCell {
  int k = 0;
  int deg2 = 0;
  std::size_t dim_c = 0;
  std::size_t rank_out = 0;
  std::size_t rank_in = 0;
  std::size_t dim_h = 0;
  Integer predicted;  ///< coefficient of s^deg2 in R_k - R_{k-2}
};

struct CohomologyTable {
  int g = 1;
  Window window;
  bool restricted = false;  ///< window narrower than required_window(g)
  bool d_squared_zero = true;
  std::vector<CohomologyCell> cells;  ///< ordered by (k, deg2)

  std::vector<std::size_t> total_dims() const;  ///< sum over the window, per k
  QSeries character(int k) const;
  bool matches_prediction() const;
  bool guard_band_clean() const;  ///< no classes above g^2
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

/// Throws WindowRefusal when the window misses part of required_window(g),
/// unless allow_partial is set (the table is then flagged restricted).
CohomologyTable cohomology_dims(int g, Window window, bool allow_partial = false);

/// sum_k (-1)^k ch H^k over the window.
QSeries euler_from_ranks(const CohomologyTable& table);
/// Compares euler_from_ranks with chi_q and with the cochain alternating sums.
bool euler_matches(const CohomologyTable& table);

struct HgRepresentative {
  Monomial coefficient;  ///< of dtau_1 ^ ... ^ dtau_g
  int deg2 = 0;          ///< doubled degree of the class
};

/// Least monomial lifts (in the canonical order) of a basis of H^g at every
/// doubled degree from -g^2 up to max_deg2.
std::vector<HgRepresentative> hg_representatives(DeRhamComplex& cx, int max_deg2);

struct DescentTerm {
  std::size_t rep = 0;         ///< index into the representative list
  std::vector<int> exponents;  ///< D_1^e1 ... D_g^eg
  Rational coeff;
};

struct Descent {
  Poly x{1};
  std::vector<DescentTerm> terms;
  bool residual_zero = false;
  nlohmann::json to_json(const std::vector<HgRepresentative>& reps) const;
};

/// Writes a homogeneous x in A_0 as sum P_a(D) h_a. The pivot solution of the
/// per-degree linear system is returned. Throws StructuralError when the system
/// is inconsistent and InvalidParameter for inhomogeneous input.
class DescentSolver {
 public:
  DescentSolver(DeRhamComplex& cx, std::vector<HgRepresentative> reps);
  const std::vector<HgRepresentative>& representatives() const { return reps_; }
  Descent descend(const Poly& x);

 private:
  const Poly& descendant(std::size_t rep, const std::vector<int>& exponents);

  DeRhamComplex& cx_;
  std::vector<HgRepresentative> reps_;
  std::map<std::pair<std::size_t, std::vector<int>>, Poly> cache_;
};

/// Exponent vectors of D-monomials of the given doubled degree (deg2 D_j = 2j-1).
std::vector<std::vector<int>> d_monomials(int g, int doubled_degree);

}  // namespace hypjac

#pragma once

// The Poisson structure on the matrix coefficients given by the r-matrix
//   r(z1,z2) = z2/(z1-z2) (1/2 s3(x)s3 + s+(x)s- + s-(x)s+) + z2 s-(x)s-
// and the commuting vector fields D_1..D_g, built twice: from the closed
// matrix formula for D(z) = sum_j z^{j-1} D_{g+1-j}, and as D_i = {f_{g+i}, .}
// from the bracket table. Pauli conventions: s3 = diag(1,-1), s+ = E12, s- = E21.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hypjac/poly.hpp"
#include "json.hpp"

namespace hypjac {

/// Polynomials in two spectral parameters z1, z2 with coefficients in the ring.
class BiPoly {
 public:
  explicit BiPoly(int g) : g_(g) {}
  /// p(z1) or p(z2) from ascending coefficients.
  static BiPoly in_z1(int g, const std::vector<Poly>& ascending);
  static BiPoly in_z2(int g, const std::vector<Poly>& ascending);

  int genus() const { return g_; }
  const std::map<std::pair<int, int>, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Poly coeff(int p1, int p2) const;
  void add(int p1, int p2, const Poly& c);

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  BiPoly scaled(const Rational& c) const;
  /// Multiplication by z1^p1 z2^p2.
  BiPoly shifted(int p1, int p2) const;

  /// Exact quotient by (z1 - z2). Throws NotExact on a nonzero remainder.
  BiPoly divided_by_difference() const;

 private:
  int g_;
  std::map<std::pair<int, int>, Poly> terms_;
};

/// a(z), b(z), c(z) with generator coefficients; b and c monic.
std::vector<Poly> a_coefficients(int g);  ///< ascending in z
std::vector<Poly> b_coefficients(int g);
std::vector<Poly> c_coefficients(int g);

/// Vector fields D_1..D_g (entry i-1) from the closed matrix formula. Each
/// entrywise quotient by (z1 - z2) is checked to be exact.
std::vector<Derivation> closed_form_flows(int g);

/// {x, y} for generator pairs x <= y (a, b, c only); {y, x} = -{x, y}.
class BracketTable {
 public:
  explicit BracketTable(int g) : g_(g) {}
  int genus() const { return g_; }
  Poly bracket(GenId x, GenId y) const;
  void set(GenId x, GenId y, const Poly& value);
  const std::map<std::pair<GenId, GenId>, Poly>& entries() const { return table_; }

  /// Extended by the Leibniz rule in both arguments.
  Poly bracket(const Poly& x, const Poly& y) const;

 private:
  int g_;
  std::map<std::pair<GenId, GenId>, Poly> table_;
};

/// Expands both sides of the r-matrix relation and reads off every bracket of
/// coefficients. Throws StructuralError if the pole at z1 = z2 fails to cancel
/// or two tensor entries disagree.
BracketTable rmatrix_bracket_table(int g);

/// D_i = {f_{g+i}, .} on generators (entry i-1).
std::vector<Derivation> bracket_flows(const BracketTable& table);

struct FlowCheck {
  std::string name;
  bool passed = false;
  bool asserted = true;  ///< false for informational checks
  std::string detail;
};

struct FlowReport {
  int g = 1;
  int epsilon = 0;  ///< {f_{g+i}, .} = epsilon * D_i; 0 if undetermined
  int sigma = 0;    ///< {z_i, y_j} = sigma * delta_ij z_i; 0 if not run or inconsistent
  std::vector<FlowCheck> checks;
  bool all_passed() const;
  nlohmann::json to_json() const;
};

struct FlowOptions {
  int descent_max_deg2 = 12;
  int descent_samples = 20;
  int separated_samples = 5;
  std::uint64_t seed = 1;
};

/// Centrality, involutivity, commutativity, D_i f_k = 0, degree shifts,
/// bracket-versus-closed-form sign, bracket homogeneity (informational),
/// descent to the degenerate quotient and the separated-variable brackets.
FlowReport verify_flows(int g, const FlowOptions& opts = {});

struct SeparatedCheck {
  int sigma = 0;          ///< {z_i, y_j} = sigma * delta_ij z_i; 0 if inconsistent
  std::string deviation;  ///< largest |{z_i,y_j} - sigma delta_ij z_i|
  bool passed = false;    ///< deviation below 1e-20
};

/// Numeric {z_i, y_j} at 256 bits for random triples whose b has distinct
/// roots, by the chain rule through the bracket table.
SeparatedCheck separated_variable_check(int g, int samples, std::uint64_t seed);

}  // namespace hypjac

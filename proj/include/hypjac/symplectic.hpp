#pragma once

// Exterior algebra of V = span(v_1..v_g, xi_1..xi_g) with the pairing
// v_i o xi_i = 1 = -xi_i o v_i, omega = sum v_i ^ xi_i, the contraction
// phi_k, the quotients W^k = L^k V / omega ^ L^{k-2} V and the Koszul
// complex D (x) W^* over D = Q[Delta_1..Delta_g] with d(P (x) w) =
// sum_i Delta_i P (x) v_i ^ w. Doubled degrees: v_i -> -(2i-1),
// xi_i -> 2i-1, Delta_j -> 2j-1.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypjac/linalg.hpp"
#include "hypjac/numbers.hpp"
#include "hypjac/qseries.hpp"
#include "json.hpp"

namespace hypjac {

/// Labels 0..g-1 are v_1..v_g, labels g..2g-1 are xi_1..xi_g; a wedge
/// monomial is the bitmask of its labels in ascending order.
using WedgeMask = std::uint32_t;

class SympSpace {
 public:
  explicit SympSpace(int g);
  int genus() const { return g_; }
  int dim() const { return 2 * g_; }
  int label_degree(int label) const;
  /// gamma_a o gamma_b for basis labels.
  int pairing(int a, int b) const;
  std::string label_name(int label) const;

  int degree(WedgeMask m) const;
  /// Monomials of wedge degree k, ascending by mask.
  std::vector<WedgeMask> monomials(int k) const;

 private:
  int g_;
};

/// Rational combination of wedge monomials.
using Wedge = std::map<WedgeMask, Rational>;

/// Sign of a ^ b relative to the sorted monomial; 0 if they share a label.
int wedge_sign(WedgeMask a, WedgeMask b);
Wedge wedge(const Wedge& x, const Wedge& y);
Wedge omega(const SympSpace& v);
/// phi_k(g_1^...^g_k) = sum_{i<j} (-1)^{i+j-1} (g_i o g_j) g_{ij}.
Wedge phi(const SympSpace& v, const Wedge& x);
std::string to_string(const SympSpace& v, const Wedge& x);

/// Matrix of a linear map L^k -> L^m given on monomials.
Matrix map_matrix(const SympSpace& v, int k, int m, const std::function<Wedge(WedgeMask)>& f);

/// Fixed complement of omega ^ L^{k-2} in L^k, graded piece by graded piece.
/// Monomials containing v_g ^ xi_g are eliminated first, so the complement
/// prefers monomials without that pair.
class WQuotient {
 public:
  WQuotient(const SympSpace& v, int k);
  int k() const { return k_; }
  /// Complement monomials (class representatives), ascending by (degree, mask).
  const std::vector<WedgeMask>& basis() const { return basis_; }
  /// Coordinates in basis() of the class of x.
  std::vector<Rational> project(const Wedge& x) const;
  bool in_image(const Wedge& x) const;
  std::size_t image_rank() const { return image_rank_; }
  QSeries character(int trunc) const;

 private:
  const SympSpace& v_;
  int k_;
  std::vector<WedgeMask> order_;           ///< elimination order of L^k monomials
  std::map<WedgeMask, std::size_t> slot_;  ///< position in order_
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<WedgeMask> basis_;
  std::map<WedgeMask, std::size_t> basis_index_;
  std::size_t image_rank_ = 0;
};

struct WkResult {
  int g = 1;
  int k = 0;
  std::size_t dim = 0;
  QSeries character{1};
  bool dim_matches = false;        ///< binom(2g,k) - binom(2g,k-2)
  bool character_matches = false;  ///< R_k - R_{k-2}; only asserted for k <= g
  nlohmann::json to_json() const;
};

/// Throws InvalidParameter unless 0 <= k <= 2g.
WkResult wk_dims_and_characters(int g, int k, int trunc);

struct PhiReport {
  int g = 1;
  int k = 0;
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  bool surjective = false;
  bool kernel_matches = false;
  nlohmann::json to_json() const;
};
PhiReport phi_kernel(int g, int k);

/// omega ^ : L^k -> L^{k+2} is injective.
bool omega_injective(int g, int k);

enum class Tri { Pass, Fail, Inconclusive };
std::string to_string(Tri t);

struct IsotropicReport {
  int g = 1;
  int k = 0;
  std::size_t target = 0;         ///< dim Ker phi_k
  std::size_t span_dim = 0;
  std::size_t structured = 0;     ///< coordinate frames used
  std::size_t random_frames = 0;  ///< random frames used
  bool inside_kernel = true;
  Tri outcome = Tri::Inconclusive;
  nlohmann::json to_json() const;
};

/// Span of decomposable isotropic k-vectors versus Ker phi_k. Random frames are
/// capped at 10x the target dimension.
IsotropicReport isotropic_span_check(int g, int k, std::uint64_t seed = 1);

struct KoszulCell {
  int k = 0;
  int deg2 = 0;
  std::size_t dim = 0;
  std::size_t rank_out = 0;
  std::size_t rank_in = 0;
  std::size_t homology = 0;
};

struct KoszulReport {
  int g = 1;
  int lo = 0;
  int hi = 0;
  bool well_defined = true;  ///< v_i ^ (omega ^ L) stays in the image
  bool d_squared_zero = true;
  bool exact_below_g = true;
  bool cokernel_matches = true;  ///< cokernel at k = g vs q^{-g^2/2} ch A_0
  std::vector<KoszulCell> cells;
  QSeries cokernel_character{1};
  bool passed() const { return well_defined && d_squared_zero && exact_below_g && cokernel_matches; }
  nlohmann::json to_json() const;
};

/// Throws WindowRefusal if lo > -g^2 (the complex starts there) or lo > hi.
KoszulReport koszul_check(int g, int lo, int hi);

struct AbelianRow {
  int k = 0;
  Integer generic;      ///< dim H^k(J - Theta), generic principally polarized
  Integer hyperelliptic;  ///< dim W^k for k <= g, else 0
};

struct AbelianTable {
  int g = 1;
  std::vector<AbelianRow> rows;  ///< k = 0..2g
  Integer defect;                ///< g! - (2g)!/(g!(g+1)!)
  nlohmann::json to_json() const;
};

AbelianTable generic_abelian_dims(int g);

}  // namespace hypjac

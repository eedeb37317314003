#pragma once

// Truncated Laurent series in s = q^{1/2} with integer coefficients.
//
// Every exponent is stored doubled: the term s^n stands for q^{n/2}. A series
// knows its coefficients exactly for all exponents below trunc(); nothing is
// claimed at or above it. Arithmetic propagates the window:
//   trunc(a*b) = min(trunc(a) + val(b), trunc(b) + val(a))
// where val() is the lowest stored exponent.

#include <map>
#include <string>
#include <vector>

#include "hypjac/numbers.hpp"
#include "json.hpp"

namespace hypjac {

class QSeries {
 public:
  /// Lowest exponent any series may carry unless a stricter floor is given.
  static constexpr int kDefaultFloor = -256;

  explicit QSeries(int trunc, int floor = kDefaultFloor);

  static QSeries monomial(int exponent, const Integer& coeff, int trunc,
                          int floor = kDefaultFloor);
  /// sum_i coeffs[i] * s^(shift + step*i), truncated at trunc.
  static QSeries from_coefficients(const std::vector<Integer>& coeffs, int shift, int step,
                                   int trunc, int floor = kDefaultFloor);

  int trunc() const { return trunc_; }
  int floor() const { return floor_; }
  /// Lowest stored exponent; trunc() for the zero series.
  int valuation() const;
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of s^n. Throws InvalidParameter if n >= trunc().
  Integer coeff(int n) const;
  const std::map<int, Integer>& terms() const { return terms_; }

  QSeries truncated(int trunc) const;
  /// Multiplication by s^n.
  QSeries shifted(int n) const;
  QSeries scaled(const Integer& c) const;

  /// Exact division by a series whose lowest coefficient is +1 or -1.
  /// Throws NotExact otherwise.
  QSeries divided_by(const QSeries& divisor) const;

  /// Coefficientwise equality below min(trunc(), other.trunc()).
  bool agrees_with(const QSeries& other) const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

  /// Human-readable form; each term shows the s-exponent and the q-power.
  std::string to_text() const;
  nlohmann::json to_json() const;
  static QSeries from_json(const nlohmann::json& j);

 private:
  void set(int exponent, Integer value);
  void check_floor(int exponent) const;

  std::map<int, Integer> terms_;
  int trunc_;
  int floor_;
};

/// Sum of all coefficients. Only meaningful when the series is a Laurent
/// polynomial whose support lies entirely below trunc().
Integer evaluate_at_one(const QSeries& x);

/// 1 - s^doubled, the bracket [doubled/2].
QSeries bracket(int doubled, int trunc);
/// [k]! = [1][2]...[k] (integer brackets).
QSeries q_factorial(int k, int trunc);
/// [k+1/2]! = [1/2][3/2]...[k+1/2]; k = -1 gives 1.
QSeries half_factorial(int k, int trunc);

/// Gaussian binomial [n over j] in q, computed by exact polynomial division.
/// Zero when j < 0 or j > n.
QSeries q_binomial(int n, int j, int trunc);

struct RingCharacters {
  QSeries ch_A;
  QSeries ch_F;
  QSeries ch_A0;
  bool product_identity;  ///< ch_A0 * ch_F == ch_A on the window
};

/// Characters of the free ring, of the ring of determinant coefficients and of
/// the quotient, truncated at s^trunc. Throws InvalidParameter if g < 1.
RingCharacters ring_characters(int g, int trunc);

/// Character of the quotient ring from its product form
/// prod_j 1/[(1+j)/2] * prod_k (1 + q^{(g+1+k)/2}).
QSeries ch_A0(int g, int trunc);

/// R_k = q^{k(k-2g)/2} [2g over k]; zero outside 0 <= k <= 2g.
QSeries r_series(int g, int k, int trunc);

struct ComplexCharacters {
  QSeries ch_Ck0;        ///< character of the k-th cochain space
  QSeries chi_q;         ///< alternating sum of cochain characters
  QSeries chi_q_closed;  ///< (-1)^g q^{-g^2/2} [g-1/2]! ch(A0)
  QSeries chi_q_ratio;   ///< (-1)^g q^{-g^2/2} [2g+1]![1/2] / ([g+1/2][g]![g+1]!)
  QSeries r_k;
  QSeries ch_Wk;         ///< R_k - R_{k-2}
  QSeries w_alternating; ///< sum_{k=0}^{g} (-1)^k (R_k - R_{k-2})
  bool chi_agree;        ///< the three chi_q routes coincide
  bool telescoping;      ///< w_alternating == (-1)^g (R_g - R_{g-1}) == chi_q
};

/// Throws InvalidParameter unless g >= 1 and 0 <= k <= g.
ComplexCharacters complex_characters(int g, int k, int trunc);

/// (-1)^g (2g)! / (g! (g+1)!).
Integer euler_limit(int g);
/// The same limit taken from the bracket product: each [m/2] contributes m/2.
Rational euler_limit_from_product(int g);

}  // namespace hypjac

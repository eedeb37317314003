#pragma once

// The matrix model of the affine Jacobian: a traceless 2x2 matrix
//   m(z) = [[a(z), b(z)], [c(z), -a(z)]]
// with deg a <= g-1, b monic of degree g, c monic of degree g+1, whose
// determinant condition a^2 + bc = f ties it to the curve y^2 = f(z).

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hypjac/numbers.hpp"
#include "hypjac/poly.hpp"
#include "json.hpp"

namespace hypjac {

struct Curve {
  int g = 1;
  std::vector<Rational> f;  ///< f_1..f_{2g+1}; z^{2g+1} is implied

  /// Ascending coefficients of f(z), length 2g+2.
  std::vector<Rational> dense() const;
  Rational operator()(const Rational& z) const;

  nlohmann::json to_json() const;
  static Curve from_json(const nlohmann::json& j);
  void validate() const;
};

struct MumfordTriple {
  int g = 1;
  std::vector<Rational> a;  ///< a_{3/2}..a_{g+1/2}
  std::vector<Rational> b;  ///< b_1..b_g (b_0 = 1)
  std::vector<Rational> c;  ///< c_1..c_{g+1} (c_0 = 1)

  /// Ascending coefficients of a(z), b(z), c(z).
  std::vector<Rational> a_dense() const;
  std::vector<Rational> b_dense() const;
  std::vector<Rational> c_dense() const;
  /// Ascending coefficients of a^2 + bc.
  std::vector<Rational> determinant() const;
  bool lies_on(const Curve& curve) const;

  nlohmann::json to_json() const;
  static MumfordTriple from_json(int g, const nlohmann::json& j);
  friend bool operator==(const MumfordTriple&, const MumfordTriple&) = default;
};

struct RationalPoint {
  Rational z;
  Rational y;
};

/// f_k as elements of the free ring: sum_{i+j=k} b_i c_j +
/// sum_{i+j=k-1} a_{i+1/2} a_{j+1/2} with b_0 = c_0 = 1. Entry k-1 holds f_k.
std::vector<Poly> det_coefficients(int g);

/// Interpolates the triple through g points of the curve.
/// Throws DegenerateDivisor (repeated z), OffCurve (y^2 != f(z)),
/// Inconsistency (f - a^2 not divisible by b).
MumfordTriple divisor_to_triple(const std::vector<RationalPoint>& points, const Curve& curve);

// ------------------------------------------------------------------ numeric

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

struct Complex {
  Real re;
  Real im;
};

/// Sets the mpfr working precision for its lifetime, restoring it on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits_;
};

struct NumericPoint {
  Complex z;
  Complex y;
  bool repeated = false;  ///< z coincides with another root within tolerance
};

struct NumericOptions {
  unsigned precision_bits = 256;
  /// Relative tolerance for |y^2 - f(z)| and division remainders.
  std::string tolerance = "1e-30";
};

struct DivisorResult {
  std::vector<NumericPoint> points;
  bool degenerate = false;  ///< some root of b is repeated
  Real max_curve_residual;  ///< max |y_j^2 - f(z_j)|
};

/// Roots of b with y_j = a(z_j). A repeated root raises the `repeated` flag on
/// the affected points instead of failing.
DivisorResult triple_to_divisor(const MumfordTriple& t, const Curve& curve,
                                const NumericOptions& opts = {});

struct NumericTriple {
  std::vector<Complex> a;
  std::vector<Complex> b;
  std::vector<Complex> c;
  Real division_residual;  ///< largest remainder coefficient of (f - a^2)/b
};

/// Floating-point counterpart of divisor_to_triple for round-trip checks.
/// Throws DegenerateDivisor, OffCurve, Inconsistency beyond tolerance.
NumericTriple divisor_to_triple_numeric(const std::vector<NumericPoint>& points,
                                        const Curve& curve, const NumericOptions& opts = {});

/// Largest absolute coefficient difference between an exact and a numeric triple.
Real triple_distance(const MumfordTriple& exact, const NumericTriple& numeric);

std::string format_real(const Real& x, int digits = 30);

// --------------------------------------------------------------- round trip

struct RandomDivisor {
  Curve curve;
  std::vector<RationalPoint> points;
  MumfordTriple triple;  ///< the triple the divisor was generated from
};

/// Random triple with distinct rational b-roots; the curve is its determinant.
RandomDivisor random_divisor(int g, std::mt19937_64& rng);

struct RoundTripReport {
  int g = 1;
  int cases = 0;
  unsigned precision_bits = 256;
  bool exact_ok = true;     ///< divisor_to_triple reproduced the triple and a^2 + bc = f
  std::string max_error;    ///< largest numeric deviation over triples and points
  bool numeric_ok = true;   ///< max_error below 1e-20
  bool passed() const { return exact_ok && numeric_ok; }
  nlohmann::json to_json() const;
};

RoundTripReport mumford_round_trip(int g, int cases, std::uint64_t seed,
                                   unsigned precision_bits = 256);

}  // namespace hypjac

#pragma once

// Sparse polynomials over the rationals in the coordinates of the matrix
// model: a_{j+1/2} (1 <= j <= g), b_j (1 <= j <= g), c_j (1 <= j <= g+1) and
// the determinant coefficients f_j (1 <= j <= 2g+1).
//
// Text tokens: `aj` is a_{j+1/2}, `bj` is b_j, `cj` is c_j, `fj` is f_j.
// Degrees are doubled so that every grading is integral:
//   deg2(a_{j+1/2}) = 2j+1, deg2(b_j) = deg2(c_j) = deg2(f_j) = 2j.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypjac/numbers.hpp"
#include "json.hpp"

namespace hypjac {

enum class GenKind : std::uint8_t { A = 0, B = 1, C = 2, F = 3 };

struct GenId {
  GenKind kind;
  int index;

  int doubled_degree() const { return kind == GenKind::A ? 2 * index + 1 : 2 * index; }
  std::string token() const;
  friend auto operator<=>(const GenId&, const GenId&) = default;
};

inline GenId gen_a(int j) { return {GenKind::A, j}; }
inline GenId gen_b(int j) { return {GenKind::B, j}; }
inline GenId gen_c(int j) { return {GenKind::C, j}; }
inline GenId gen_f(int j) { return {GenKind::F, j}; }

/// Number of generators of the given kind in genus g.
int generator_count(GenKind kind, int g);
bool in_range(GenId x, int g);
/// a's, b's and c's in (kind, index) order; f's appended when requested.
std::vector<GenId> generators(int g, bool with_f = false);

/// The u-notation used by the reduction: u_{n/2} for n = 2..2g+1 is b_{n/2}
/// for even n and a_{(n-1)/2 + 1/2} for odd n. Returns 0 for c and f.
int u_index(GenId x);
GenId u_generator(int n);
/// u_{n/2} is "high" (square-free in the quotient basis) when n >= g+2.
inline bool is_high_u(int n, int g) { return n >= g + 2; }

class Monomial {
 public:
  using Factor = std::pair<GenId, unsigned>;

  Monomial() = default;
  /// Factors must be sorted by generator with positive exponents.
  explicit Monomial(std::vector<Factor> factors);
  static Monomial of(GenId x, unsigned exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  unsigned exponent(GenId x) const;
  bool is_one() const { return factors_.empty(); }
  int doubled_degree() const;
  unsigned total_exponent() const;

  Monomial operator*(const Monomial& other) const;
  /// Removes one power of x. Precondition: exponent(x) > 0.
  Monomial without_one(GenId x) const;

  std::string to_string() const;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Sort key realising the canonical monomial order for genus g: total doubled
/// degree, then doubled degree of the high-u part, then the high exponents
/// read from the left with the smaller exponent ranking higher, then the low-u
/// exponents lexicographically, then c exponents, then f exponents.
std::vector<int> order_key(const Monomial& m, int g);

class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit Poly(int g);
  static Poly constant(int g, const Rational& c);
  static Poly generator(int g, GenId x);
  static Poly monomial(int g, const Monomial& m, const Rational& c = Rational(1));

  int genus() const { return genus_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Monomial& m) const;
  void add_term(const Monomial& m, const Rational& c);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a) { return a * Rational(-1); }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.genus_ == b.genus_ && a.terms_ == b.terms_;
  }

  /// this * c * m
  Poly times_monomial(const Monomial& m, const Rational& c) const;
  Poly pow(unsigned e) const;
  Poly partial(GenId x) const;

  std::map<int, Poly> homogeneous_components() const;
  Poly homogeneous_part(int doubled_degree) const;
  bool is_homogeneous() const;
  /// Degree of a nonzero homogeneous polynomial.
  std::optional<int> doubled_degree() const;
  std::optional<int> max_doubled_degree() const;
  bool uses_kind(GenKind kind) const;

  /// Canonical text: terms in decreasing canonical order, reparsable.
  std::string to_string() const;
  nlohmann::json to_json() const;
  static Poly from_json(const nlohmann::json& j);

 private:
  int genus_;
  Terms terms_;
};

/// Parses the text grammar (rational literals, generator tokens, + - * ^ and
/// parentheses). Throws ParseError with the offending position.
Poly parse_poly(std::string_view text, int g);

/// Ring homomorphism sending each generator in `images` to its image and
/// leaving the others fixed.
Poly substitute(const Poly& x, const std::map<GenId, Poly>& images);

/// A derivation given by its values on generators, extended by Leibniz.
class Derivation {
 public:
  Derivation(int g, std::string label, int doubled_degree_shift);

  void set_image(GenId x, Poly image);
  const std::map<GenId, Poly>& images() const { return images_; }
  const std::string& label() const { return label_; }
  int doubled_degree_shift() const { return shift_; }
  int genus() const { return genus_; }

  /// Throws UndefinedDerivation when x uses an a/b/c generator without image.
  /// f generators without an image are mapped to zero.
  Poly apply(const Poly& x) const;

 private:
  int genus_;
  std::string label_;
  int shift_;
  std::map<GenId, Poly> images_;
};

inline Poly apply_derivation(const Derivation& d, const Poly& x) { return d.apply(x); }

/// Evaluates x at a point given per generator (any field-like scalar type);
/// `lift` converts a rational coefficient into T.
template <class T, class Lookup, class Lift>
T evaluate(const Poly& x, Lookup&& value_of, Lift&& lift) {
  T sum = lift(Rational(0));
  for (const auto& [m, c] : x.terms()) {
    T term = lift(c);
    for (const auto& [gen, e] : m.factors()) {
      T v = value_of(gen);
      for (unsigned i = 0; i < e; ++i) term = term * v;
    }
    sum = sum + term;
  }
  return sum;
}

}  // namespace hypjac

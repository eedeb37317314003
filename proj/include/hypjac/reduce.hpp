#pragma once

// Normal forms in the quotient of the free ring by f_k = f0_k.
//
// Write u_{n/2} (n = 2..2g+1) for b_{n/2} (n even) and a_{n/2} (n odd).
// The generators with n <= g+1 are "low"; the others are "high". The first
// g+1 determinant equations are solved for c_1..c_{g+1}; the remaining g are
// rearranged into square rules u_{n/2}^2 -> (lower terms) for every high n.
// Rewriting with these rules terminates in the span of monomials whose high
// exponents are all 0 or 1, which form a basis of the quotient.
//
// Monomials are compared by order_key(): total degree, then degree of the
// high part, then the high exponents read from the left (smaller exponent
// ranks higher), then the low exponents lexicographically. The last tiebreak
// only serves canonical output.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hypjac/numbers.hpp"
#include "hypjac/poly.hpp"
#include "json.hpp"

namespace hypjac {

struct ReductionSystem {
  int g = 1;
  std::vector<Rational> f0;         ///< f0_1..f0_{2g+1}
  std::vector<Poly> det;            ///< f_k as elements of the free ring
  std::vector<Poly> c_subst;        ///< entry k-1: c_k in terms of a, b
  std::map<int, Poly> square_rules; ///< key n: right side for u_{n/2}^2
  int max_high_factors = 0;         ///< largest high-factor count on a right side
};

/// Throws InvalidParameter for g < 1 or a wrong number of f0 entries, and
/// StructuralError if a square rule fails the leading-term property.
ReductionSystem build_reduction_system(int g, std::vector<Rational> f0 = {});

/// True iff m lies in the quotient basis: only a/b generators, high exponents <= 1.
bool is_basis_monomial(const Monomial& m, int g);
bool is_normal(const Poly& x);

struct ReductionStep {
  Monomial rewritten;
  int rule;  ///< n of the square u_{n/2}^2 that was rewritten
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

/// Normal form of x. Occurrences of f_k are read as the ring elements f_k
/// (so they reduce to f0_k), c's are eliminated, squares of high generators
/// are rewritten highest monomial first. Every produced monomial is checked
/// to be strictly below the one it replaces; a violation throws StructuralError.
Poly normal_form(const Poly& x, const ReductionSystem& sys, ReductionTrace* trace = nullptr);

/// Memoizing normal-form evaluator for repeated use on one system.
class Reducer {
 public:
  explicit Reducer(ReductionSystem sys) : sys_(std::move(sys)) {}
  const ReductionSystem& system() const { return sys_; }
  Poly operator()(const Poly& x);

 private:
  ReductionSystem sys_;
  std::map<Monomial, Poly> cache_;
};

/// Basis monomials of exactly the given doubled degree, ascending in the order.
std::vector<Monomial> basis_enum(int g, int doubled_degree);

struct GrPairResult {
  Monomial x;
  Monomial y;
  bool passed = false;
};

struct GrCompatibilityReport {
  int g = 1;
  std::vector<Rational> f0;
  std::vector<GrPairResult> pairs;
  bool all_passed() const;
  nlohmann::json to_json() const;
};

/// For random basis pairs with deg2(x) + deg2(y) <= max_doubled_degree, checks
/// that the top-degree part of NF_{f0}(xy) equals NF_0(xy).
GrCompatibilityReport gr_compatibility_check(int g, const std::vector<Rational>& f0,
                                             int max_doubled_degree, int pair_count,
                                             std::uint64_t seed);

}  // namespace hypjac

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace hypjac {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Parses "n" or "n/d" (optional leading sign). Throws ParseError.
Rational parse_rational(std::string_view text);

/// "n" for integral values, "n/d" otherwise.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

Integer binomial(int n, int k);
Integer factorial(int n);

}  // namespace hypjac

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace khova {

using Integer = mpz_class;
using Rational = mpq_class;  // GMP keeps mpq values canonical after arithmetic

// Accepts "n" or "p/q" with optional leading '-'; q must be positive.
Rational parse_rational(std::string_view text);

// "n" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer lcm_of_denominators(const std::vector<Rational>& v);
Integer gcd_of_numerators(const std::vector<Rational>& v);

// Scale v by a positive rational so that it becomes a primitive integer vector.
// The zero vector is returned unchanged.
std::vector<Rational> primitive_integer(std::vector<Rational> v);

}  // namespace khova

#include "khova/rational.hpp"

#include <cctype>

#include "khova/errors.hpp"

namespace khova {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  std::size_t offset = static_cast<std::size_t>(s.data() - text.data());
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
    ++offset;
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  if (!all_digits(num)) throw ParseError("malformed rational '" + std::string(text) + "'", offset);
  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(Integer(std::string(num)));
  } else {
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(den))
      throw ParseError("malformed denominator in '" + std::string(text) + "'", offset + slash + 1);
    Integer d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", offset + slash + 1);
    q = Rational(Integer(std::string(num)), d);
    q.canonicalize();
  }
  if (negative) q = -q;
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer lcm_of_denominators(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

Integer gcd_of_numerators(const std::vector<Rational>& v) {
  Integer g = 0;
  for (const auto& q : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
  return g;
}

std::vector<Rational> primitive_integer(std::vector<Rational> v) {
  Integer l = lcm_of_denominators(v);
  for (auto& q : v) q *= l;
  Integer g = gcd_of_numerators(v);
  if (g == 0) return v;
  for (auto& q : v) q /= g;
  return v;
}

}  // namespace khova

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "khova/monomial.hpp"
#include "khova/order.hpp"

namespace khova {

// Ordered list of variable names shared by polynomials over the same ring.
class Ring {
 public:
  Ring() : vars_(std::make_shared<const std::vector<std::string>>()) {}
  explicit Ring(std::vector<std::string> vars);

  std::size_t size() const { return vars_->size(); }
  const std::string& name(std::size_t i) const { return (*vars_)[i]; }
  const std::vector<std::string>& names() const { return *vars_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  // Same ring with one fresh variable prepended; the name avoids collisions.
  Ring with_leading_variable(const std::string& preferred) const;
  Ring without_variable(std::size_t i) const;

  bool operator==(const Ring& other) const { return vars_ == other.vars_ || *vars_ == *other.vars_; }

 private:
  std::shared_ptr<const std::vector<std::string>> vars_;
};

struct Term {
  ExponentVector exponent;
  Rational coeff;
};

// Sparse multivariate polynomial over Q. Terms live in a map keyed by the
// exponent, so storage is independent of any monomial order.
class Polynomial {
 public:
  using TermMap = std::map<ExponentVector, Rational>;

  Polynomial() = default;
  explicit Polynomial(Ring ring) : ring_(std::move(ring)) {}
  Polynomial(Ring ring, TermMap terms);

  static Polynomial constant(Ring ring, const Rational& c);
  static Polynomial variable(Ring ring, std::size_t i);
  static Polynomial monomial(Ring ring, ExponentVector e, Rational c = 1);

  const Ring& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational coefficient(const ExponentVector& e) const;

  // Adds c*x^e, dropping the term if it cancels.
  void add_term(const ExponentVector& e, const Rational& c);

  std::int64_t total_degree() const;
  // Homogeneous for the grading deg(x_j) = w_j.
  bool is_homogeneous(const std::vector<Rational>& w) const;
  bool is_homogeneous() const;

  Term leading_term(const MonomialOrder& order) const;
  ExponentVector leading_monomial(const MonomialOrder& order) const { return leading_term(order).exponent; }
  // Terms sorted so that the leading term comes first.
  std::vector<Term> sorted_terms(const MonomialOrder& order) const;
  // Sum of the terms whose weight M*alpha is lexicographically smallest.
  Polynomial initial_form(const WeightMatrix& m) const;
  RankVector min_weight(const WeightMatrix& m) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial pow(unsigned k) const;
  Polynomial times_monomial(const ExponentVector& e, const Rational& c) const;
  // Scales so that the leading coefficient under `order` is 1.
  Polynomial monic(const MonomialOrder& order) const;

  // Substitutes images[j] for x_j. All images must share one ring.
  Polynomial substitute(const std::vector<Polynomial>& images) const;
  // Moves the polynomial into `target`, where variable j maps to index map[j].
  Polynomial embed(const Ring& target, const std::vector<std::size_t>& map) const;
  // Sets variable i to the value c and removes it from the ring.
  Polynomial specialize(std::size_t i, const Rational& c, const Ring& smaller) const;

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

 private:
  void check_ring(const Polynomial& o) const;
  Ring ring_;
  TermMap terms_;
};

Polynomial operator*(const Rational& c, const Polynomial& p);

// Grammar: sums and differences of terms; a term is coeff, coeff*monos or
// monos, with coeff an integer or p/q, and monos x, x^k joined by '*'.
// Parentheses group sub-expressions. Whitespace is ignored.
Polynomial parse_polynomial(std::string_view text, const Ring& ring);

// Deterministic text with terms in descending degrevlex order; it parses back
// to the same polynomial.
std::string to_string(const Polynomial& p);

}  // namespace khova
